//! Command-line front end.
//!
//! Exit codes: 0 affirmative, 1 negative verdict, 2 indeterminate,
//! 3 usage, input or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::combinat::{parse_index_list, subsets};
use crate::config::{histogram, PointConfiguration, Spectrum, SpectrumKind};
use crate::congruence::{orbit_congruent, orbit_volume_equivalent, RigidMap, RigidWitness, VolumeWitness};
use crate::error::Error;
use crate::fixtures;
use crate::io::{histogram_csv, parse_spectrum_csv, print_config, read_config, read_text, spectrum_csv, write_text};
use crate::miner::{mine, MineKind, MineOptions};
use crate::permact::{certify_reconstructible, CertificateReport, CertifyOptions, Verdict};
use crate::recon::{realize_from_distances_with_budget, realize_from_volumes_with_budget, DEFAULT_BUDGET};
use crate::relideal::{minor, symbolic_relation_matrix};
use crate::scalar::QuadScalar;
use crate::volrel::{assigned_alternating_sum, linear_relation_filter, volume_assignment, RelationCheck};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "point-spectra", version, about = "Exact distance and volume spectra of point configurations")]
struct Cli {
    /// Worker threads for parallel searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Tolerance: relative for spectrum comparison, residual bound for
    /// reconstructed coordinates.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Distance,
    Volume,
}

impl From<Kind> for SpectrumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Distance => SpectrumKind::Distance,
            Kind::Volume => SpectrumKind::Volume,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MineKindArg {
    Distance,
    Volume,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Group {
    Rigid,
    Affine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the squared distance or squared volume spectrum. With
    /// `--compare`, exit 0 when both spectra agree (exactly, or within
    /// `--tol` when given) and 1 otherwise.
    Spectrum {
        #[arg(long, value_enum, default_value = "distance")]
        kind: Kind,
        file: PathBuf,
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Add a column with square roots (doubles).
        #[arg(long)]
        sqrt: bool,
    },
    /// Histogram of a spectrum with half-open bins.
    Hist {
        #[arg(long)]
        bin: f64,
        /// Bin the square roots of the values.
        #[arg(long)]
        sqrt: bool,
        #[arg(long, value_enum, default_value = "distance")]
        kind: Kind,
        file: PathBuf,
    },
    /// Decide whether two configurations lie in the same orbit.
    Equiv {
        #[arg(long, value_enum, default_value = "rigid")]
        group: Group,
        a: PathBuf,
        b: PathBuf,
    },
    /// Try to certify that a configuration is determined by its distances.
    Certify {
        file: PathBuf,
        /// Replace the distance stabilizer by the trivial group.
        #[arg(long)]
        trivial_stabilizer: bool,
        /// Candidate minors examined per double coset.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Enumerate all classes of configurations with a given spectrum.
    Reconstruct {
        #[arg(long, value_enum, default_value = "distance")]
        kind: Kind,
        spectrum: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Evaluate the alternating-sum relations among signed volumes.
    CheckRelations {
        file: PathBuf,
        /// Negate the volume of this sorted 1-based index set before
        /// checking (repeatable), e.g. `--negate 1,2,3`.
        #[arg(long)]
        negate: Vec<String>,
    },
    /// Search a grid for pairs with equal spectra in different orbits.
    Mine(MineArgs),
    /// Bundled example configurations.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Symbolic relation matrix utilities.
    Relideal {
        #[command(subcommand)]
        action: RelidealAction,
    },
}

#[derive(Args, Debug)]
struct MineArgs {
    /// Grid size `WxH` (x in 0..W, y in 0..H).
    #[arg(long)]
    grid: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "distance")]
    kind: MineKindArg,
    /// Maximum number of subsets enumerated.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    Show { name: String },
    /// Write a fixture as a configuration document.
    Export {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the recorded checks (all fixtures when no name is given).
    Check { name: Option<String> },
}

#[derive(Subcommand, Debug)]
enum RelidealAction {
    /// Expand a minor of the symbolic relation matrix.
    Minor {
        #[arg(long)]
        n: usize,
        /// 1-based, comma separated.
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
}

/// Failure inside a command: the message goes to stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateFrame | Error::AllVolumesZero | Error::SearchBudgetExceeded(_) => EXIT_INDETERMINATE,
            _ => EXIT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_ERROR, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_ERROR, message: message.into() }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_AFFIRMATIVE };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Spectrum { kind, file, compare, sqrt } => cmd_spectrum(cli, *kind, file, compare.as_ref(), *sqrt, out),
        Command::Hist { bin, sqrt, kind, file } => cmd_hist(cli, *bin, *sqrt, *kind, file, out),
        Command::Equiv { group, a, b } => cmd_equiv(cli, *group, a, b, out),
        Command::Certify { file, trivial_stabilizer, budget } => {
            cmd_certify(cli, file, CertifyOptions { trivial_stabilizer: *trivial_stabilizer, budget: *budget }, out)
        }
        Command::Reconstruct { kind, spectrum, n, m, budget } => cmd_reconstruct(cli, *kind, spectrum, *n, *m, *budget, out),
        Command::CheckRelations { file, negate } => cmd_check_relations(cli, file, negate, out),
        Command::Mine(args) => cmd_mine(cli, args, out, err),
        Command::Fixtures { action } => cmd_fixtures(cli, action, out),
        Command::Relideal { action } => cmd_relideal(cli, action, out),
    }
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> std::result::Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage(format!("--format {f:?} is not supported by this command").to_lowercase()))
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> std::result::Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json value"))?;
    Ok(())
}

fn spectrum_of(p: &PointConfiguration, kind: Kind) -> crate::Result<Spectrum> {
    match kind {
        Kind::Distance => p.distance_spectrum(),
        Kind::Volume => p.volume_spectrum(),
    }
}

fn canon(v: &QuadScalar) -> String {
    v.canonical()
}

fn cmd_spectrum(
    cli: &Cli,
    kind: Kind,
    file: &Path,
    compare: Option<&PathBuf>,
    sqrt: bool,
    out: &mut dyn Write,
) -> Outcome {
    let format = format_or(cli, Format::Csv, &[Format::Csv, Format::Json, Format::Text])?;
    let s = spectrum_of(&read_config(file)?, kind)?;
    if let Some(other) = compare {
        let t = spectrum_of(&read_config(other)?, kind)?;
        let (equal, mode) = match cli.tol {
            Some(tol) => (s.approx_eq(&t, tol), "approximate"),
            None => (s == t, "exact"),
        };
        match format {
            Format::Json => emit_json(out, &json!({ "equal": equal, "mode": mode, "kind": s.kind.to_string() }))?,
            _ => writeln!(out, "{}", if equal { "equal" } else { "different" })?,
        }
        return Ok(if equal { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE });
    }
    match format {
        Format::Csv if !sqrt => write!(out, "{}", spectrum_csv(&s))?,
        Format::Csv => {
            writeln!(out, "value,approx,sqrt")?;
            for v in s.values() {
                let x = v.to_f64();
                writeln!(out, "{},{},{}", v.canonical(), x, x.max(0.0).sqrt())?;
            }
        }
        Format::Json => emit_json(
            out,
            &json!({
                "kind": s.kind.to_string(),
                "values": s.values().iter().map(canon).collect::<Vec<_>>(),
                "approx": s.to_f64(),
            }),
        )?,
        Format::Text => {
            let parts: Vec<String> = s.values().iter().map(|v| v.to_string()).collect();
            writeln!(out, "{{{}}}", parts.join(", "))?;
        }
    }
    Ok(EXIT_AFFIRMATIVE)
}

fn cmd_hist(cli: &Cli, bin: f64, sqrt: bool, kind: Kind, file: &Path, out: &mut dyn Write) -> Outcome {
    let format = format_or(cli, Format::Csv, &[Format::Csv, Format::Json, Format::Text])?;
    let h = histogram(&spectrum_of(&read_config(file)?, kind)?, bin, sqrt)?;
    match format {
        Format::Csv => write!(out, "{}", histogram_csv(&h))?,
        Format::Json => emit_json(
            out,
            &json!({
                "bin_size": h.bin_size,
                "bins": h.counts.iter().map(|(lo, c)| json!({ "bin_lower": lo, "count": c })).collect::<Vec<_>>(),
            }),
        )?,
        Format::Text => {
            for (lo, c) in &h.counts {
                writeln!(out, "[{:.4}, {:.4}) {}", lo, lo + h.bin_size, "#".repeat(*c))?;
            }
        }
    }
    Ok(EXIT_AFFIRMATIVE)
}

fn matrix_json(m: &[Vec<QuadScalar>]) -> Value {
    json!(m.iter().map(|r| r.iter().map(canon).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn one_based(perm: &[usize]) -> Vec<usize> {
    perm.iter().map(|i| i + 1).collect()
}

fn rigid_json(w: &RigidWitness) -> Value {
    let map = match &w.map {
        RigidMap::Exact { linear, translation } => json!({
            "kind": "exact",
            "linear": matrix_json(linear),
            "translation": translation.iter().map(canon).collect::<Vec<_>>(),
        }),
        RigidMap::Approximate { linear, translation, residual } => json!({
            "kind": "approximate",
            "linear": linear,
            "translation": translation,
            "residual": residual,
        }),
        RigidMap::Unavailable => json!({ "kind": "unavailable" }),
    };
    json!({ "equivalent": true, "group": "rigid", "permutation": one_based(&w.perm), "map": map })
}

fn volume_json(w: &VolumeWitness) -> Value {
    json!({
        "equivalent": true,
        "group": "affine",
        "permutation": one_based(&w.perm),
        "linear": matrix_json(&w.linear),
        "shift": w.shift.iter().map(canon).collect::<Vec<_>>(),
        "sign": w.sign,
    })
}

fn cmd_equiv(cli: &Cli, group: Group, a: &Path, b: &Path, out: &mut dyn Write) -> Outcome {
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let (p, q) = (read_config(a)?, read_config(b)?);
    let witness = match group {
        Group::Rigid => orbit_congruent(&p, &q)?.map(|w| rigid_json(&w)),
        Group::Affine => orbit_volume_equivalent(&p, &q)?.map(|w| volume_json(&w)),
    };
    let group_name = if group == Group::Rigid { "rigid" } else { "affine" };
    let value = witness.clone().unwrap_or_else(|| json!({ "equivalent": false, "group": group_name }));
    match format {
        Format::Json => emit_json(out, &value)?,
        _ => match &witness {
            Some(w) => writeln!(out, "equivalent ({group_name}); Q_i = g(P_perm[i]) with perm = {}", w["permutation"])?,
            None => writeln!(out, "not equivalent ({group_name})")?,
        },
    }
    Ok(if witness.is_some() { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE })
}

const TEXT_LIMIT: usize = 12;

fn compact(canonical: Option<&str>) -> String {
    canonical
        .and_then(|c| QuadScalar::parse_infer(c).ok())
        .map_or_else(|| "?".to_string(), |v| v.to_string())
}

fn certificate_text(r: &CertificateReport) -> String {
    let mut s = match &r.verdict {
        Verdict::Certified => "certified: reconstructible from distances\n".to_string(),
        Verdict::Inconclusive(why) => format!("inconclusive: {why}\n"),
        Verdict::NotApplicable(why) => format!("not applicable: {why}\n"),
    };
    if r.double_cosets > 0 {
        let sizes = if r.coset_sizes.len() <= TEXT_LIMIT {
            format!("{:?}", r.coset_sizes)
        } else {
            let min = r.coset_sizes.iter().min().unwrap_or(&0);
            let max = r.coset_sizes.iter().max().unwrap_or(&0);
            format!("{min}..{max}")
        };
        s.push_str(&format!(
            "n = {}, m = {}, |G| = {}, double cosets = {} (sizes {sizes})\n",
            r.n, r.m, r.stabilizer_order, r.double_cosets
        ));
    }
    let failing = r.witnesses.iter().filter(|w| w.minor.is_none());
    let shown: Vec<_> = failing.chain(r.witnesses.iter().filter(|w| w.minor.is_some())).take(TEXT_LIMIT).collect();
    for w in shown {
        match w.minor {
            Some(k) => {
                let mr = &r.minors[k];
                s.push_str(&format!(
                    "  {}: minor rows {:?} cols {:?} = {}, permuted value {}\n",
                    w.representative,
                    mr.rows,
                    mr.cols,
                    compact(w.value.as_deref()),
                    compact(w.permuted_value.as_deref())
                ));
            }
            None => s.push_str(&format!("  {}: no separating minor after {} candidates\n", w.representative, w.candidates_tried)),
        }
    }
    if r.witnesses.len() > TEXT_LIMIT {
        s.push_str(&format!("  ... {} more double cosets (use --format json)\n", r.witnesses.len() - TEXT_LIMIT));
    }
    s
}

fn cmd_certify(cli: &Cli, file: &Path, options: CertifyOptions, out: &mut dyn Write) -> Outcome {
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let report = certify_reconstructible(&read_config(file)?, &options)?;
    match format {
        Format::Json => emit_json(out, &serde_json::to_value(&report).expect("report serializes"))?,
        _ => write!(out, "{}", certificate_text(&report))?,
    }
    Ok(match report.verdict {
        Verdict::Certified => EXIT_AFFIRMATIVE,
        _ => EXIT_INDETERMINATE,
    })
}

fn cmd_reconstruct(cli: &Cli, kind: Kind, path: &Path, n: usize, m: usize, budget: u64, out: &mut dyn Write) -> Outcome {
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let spectrum = parse_spectrum_csv(&read_text(path)?, kind.into())
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (count, classes, leaves, nodes) = match kind {
        Kind::Distance => {
            let r = realize_from_distances_with_budget(&spectrum, n, m, cli.tol.unwrap_or(1e-9), budget)?;
            let classes: Vec<Value> = r
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "squared_distances": c.table.values.iter().map(canon).collect::<Vec<_>>(),
                        "rank": c.rank,
                        "coordinates": c.coordinates,
                        "residual": c.residual,
                        "within_tolerance": c.within_tolerance,
                    })
                })
                .collect();
            (r.classes.len(), classes, r.leaves, r.nodes)
        }
        Kind::Volume => {
            let r = realize_from_volumes_with_budget(&spectrum, n, m, budget)?;
            let classes: Vec<Value> = r
                .classes
                .iter()
                .map(|c| serde_json::from_str(&print_config(c)).expect("document is json"))
                .collect();
            (r.classes.len(), classes, r.leaves, r.nodes)
        }
    };
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "kind": SpectrumKind::from(kind).to_string(),
                "n": n,
                "m": m,
                "count": count,
                "reconstructible": count == 1,
                "leaves": leaves,
                "nodes": nodes,
                "classes": classes,
            }),
        )?,
        _ => {
            writeln!(out, "{count} class(es)")?;
            for (i, c) in classes.iter().enumerate() {
                writeln!(out, "class {}: {}", i + 1, c)?;
            }
        }
    }
    Ok(match count {
        1 => EXIT_AFFIRMATIVE,
        0 => EXIT_INDETERMINATE,
        _ => EXIT_NEGATIVE,
    })
}

fn cmd_check_relations(cli: &Cli, file: &Path, negate: &[String], out: &mut dyn Write) -> Outcome {
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let p = read_config(file)?;
    let (n, m) = (p.n(), p.dim());
    if n < m + 2 {
        return Err(usage(format!("need at least {} points for relations in dimension {m}", m + 2)));
    }
    let mut assignment = volume_assignment(&p)?;
    for text in negate {
        let mut key = parse_index_list(text).ok_or_else(|| usage(format!("--negate {text}: expected 1-based indices")))?;
        key.sort_unstable();
        let v = assignment
            .get_mut(&key)
            .ok_or_else(|| usage(format!("--negate {text}: not a set of {} point indices in 1..{n}", m + 1)))?;
        *v = -v.clone();
    }
    let sums: Vec<(Vec<usize>, QuadScalar)> = subsets(n, m + 2)
        .into_iter()
        .map(|s| {
            let v = assigned_alternating_sum(&assignment, &s).expect("full assignment");
            (s, v)
        })
        .collect();
    let verdict = linear_relation_filter(n, m, &assignment);
    let violated = match &verdict {
        RelationCheck::Consistent => None,
        RelationCheck::Violated(s) => Some(one_based(s)),
    };
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "consistent": violated.is_none(),
                "first_violated": violated,
                "sums": sums
                    .iter()
                    .map(|(s, v)| json!({ "subset": one_based(s), "sum": v.canonical() }))
                    .collect::<Vec<_>>(),
            }),
        )?,
        _ => {
            for (s, v) in &sums {
                writeln!(out, "{:?} {}", one_based(s), v)?;
            }
            match &violated {
                None => writeln!(out, "consistent")?,
                Some(s) => writeln!(out, "violated on {s:?}")?,
            }
        }
    }
    Ok(if violated.is_none() { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE })
}

fn parse_grid(text: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || usage(format!("--grid {text:?}: expected WxH, e.g. 5x3"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn cmd_mine(cli: &Cli, args: &MineArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let format = format_or(cli, Format::Json, &[Format::Json, Format::Text])?;
    let (width, height) = parse_grid(&args.grid)?;
    let kind = match args.kind {
        MineKindArg::Distance => MineKind::Distance,
        MineKindArg::Volume => MineKind::Volume,
        MineKindArg::Both => MineKind::Both,
    };
    writeln!(err, "mining {width}x{height} grid, n = {}, kind = {:?}", args.n, kind)?;
    let report = mine(&MineOptions { width, height, n: args.n, kind, budget: args.budget, jobs: cli.jobs })?;
    for pair in &report.pairs {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(pair).expect("pair serializes"))?,
            _ => writeln!(out, "{:?}  vs  {:?}", pair.left, pair.right)?,
        }
    }
    writeln!(
        err,
        "enumerated {} subsets, {} shapes, {} pairs{}",
        report.enumerated,
        report.shapes,
        report.pairs.len(),
        if report.partial { " (budget reached, partial)" } else { "" }
    )?;
    Ok(if !report.pairs.is_empty() {
        EXIT_AFFIRMATIVE
    } else if report.partial {
        EXIT_INDETERMINATE
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_fixtures(cli: &Cli, action: &FixtureAction, out: &mut dyn Write) -> Outcome {
    let lookup = |name: &str| fixtures::get(name).ok_or_else(|| usage(format!("unknown fixture {name:?}")));
    match action {
        FixtureAction::List => {
            let format = format_or(cli, Format::Text, &[Format::Text, Format::Json])?;
            let all = fixtures::all();
            match format {
                Format::Json => emit_json(
                    out,
                    &json!(all
                        .iter()
                        .map(|f| json!({ "name": f.name, "description": f.description, "n": f.config.n() }))
                        .collect::<Vec<_>>()),
                )?,
                _ => {
                    for f in &all {
                        writeln!(out, "{:<24} {}", f.name, f.description)?;
                    }
                }
            }
            Ok(EXIT_AFFIRMATIVE)
        }
        FixtureAction::Show { name } => {
            let f = lookup(name)?;
            writeln!(out, "{}", print_config(&f.config))?;
            Ok(EXIT_AFFIRMATIVE)
        }
        FixtureAction::Export { name, out: path } => {
            let f = lookup(name)?;
            let text = print_config(&f.config) + "\n";
            match path {
                Some(p) => write_text(p, &text)?,
                None => write!(out, "{text}")?,
            }
            Ok(EXIT_AFFIRMATIVE)
        }
        FixtureAction::Check { name } => {
            let names: Vec<String> = match name {
                Some(n) => vec![lookup(n)?.name.to_string()],
                None => fixtures::all().iter().map(|f| f.name.to_string()).collect(),
            };
            let mut failed = 0;
            for n in &names {
                let failures = fixtures::check(n)?;
                if failures.is_empty() {
                    writeln!(out, "ok   {n}")?;
                } else {
                    failed += 1;
                    for f in failures {
                        writeln!(out, "FAIL {f}")?;
                    }
                }
            }
            Ok(if failed == 0 { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE })
        }
    }
}

fn cmd_relideal(cli: &Cli, action: &RelidealAction, out: &mut dyn Write) -> Outcome {
    let RelidealAction::Minor { n, rows, cols } = action;
    let format = format_or(cli, Format::Text, &[Format::Text, Format::Json])?;
    let parse = |t: &str| parse_index_list(t).ok_or_else(|| usage(format!("{t:?}: expected 1-based indices like 1,2,3")));
    let (r, c) = (parse(rows)?, parse(cols)?);
    let poly = minor(&symbolic_relation_matrix(*n)?, &r, &c)?;
    match format {
        Format::Json => emit_json(
            out,
            &json!({ "n": n, "rows": one_based(&r), "cols": one_based(&c), "terms": poly.terms().len(), "polynomial": poly.to_string() }),
        )?,
        _ => writeln!(out, "{poly}")?,
    }
    Ok(EXIT_AFFIRMATIVE)
}
