//! End-to-end acceptance run: one line per criterion, non-zero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use point_spectra::congruence::{orbit_congruent, orbit_volume_equivalent};
use point_spectra::fixtures;
use point_spectra::io::{print_config, spectrum_csv};
use point_spectra::linalg::det;
use point_spectra::permact::{
    certify_reconstructible, distance_stabilizer, double_cosets, point_group_generators, CertifyOptions,
    PairPermutation, Verdict,
};
use point_spectra::recon::{
    local_reconstructibility_radius, realize_from_distances, realize_from_volumes, ProbeOptions,
};
use point_spectra::relideal::{
    minor, monomial_admissible, monomial_orbit_representatives, path_coefficient, path_monomial,
    symbolic_relation_matrix, MinorSupport,
};
use point_spectra::volrel::alternating_sum;
use point_spectra::{PointConfiguration, QuadScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ints(values: &[i64], d: u32) -> Vec<QuadScalar> {
    values.iter().map(|&v| QuadScalar::from_int(v, d)).collect()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("point-spectra").chain(args.iter().copied());
    let code = point_spectra::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_config(dir: &tempfile::TempDir, name: &str, p: &PointConfiguration) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, print_config(p)).unwrap();
    path.to_string_lossy().into_owned()
}

fn distance_twins() -> Outcome {
    let kite = fixtures::distance_twin_kite();
    let trap = fixtures::distance_twin_trapezoid();
    let want = ints(&[2, 2, 4, 10, 10, 16], 1);
    ensure!(kite.distance_spectrum().unwrap().values() == want.as_slice(), "kite spectrum");
    ensure!(trap.distance_spectrum().unwrap().values() == want.as_slice(), "trapezoid spectrum");

    let dir = tempfile::tempdir().unwrap();
    let a = write_config(&dir, "a.json", &kite);
    let b = write_config(&dir, "b.json", &trap);
    let (code, out, _) = cli(&["equiv", "--group", "rigid", &a, &b]);
    ensure!(code == 1, "equiv exit code {code}, output {out}");

    let csv = dir.path().join("s.csv");
    std::fs::write(&csv, spectrum_csv(&kite.distance_spectrum().unwrap())).unwrap();
    let (code, out, err) = cli(&["reconstruct", "--kind", "distance", csv.to_str().unwrap(), "--n", "4", "--m", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| format!("{e}: {out} {err}"))?;
    let count = v["count"].as_u64().unwrap();
    ensure!(count >= 2 && code == 1, "reconstruct found {count} classes (exit {code})");
    Ok(format!("equal spectra, rigid test negative, {count} classes"))
}

fn area_twins5() -> Outcome {
    let p = fixtures::area_twin5_p();
    let q = fixtures::area_twin5_q();
    let rows = [
        (&p, [1, 1, 1, -2, -4, -2, -2, -4, -2, 0]),
        (&q, [1, 2, 2, 1, -1, -4, 0, -2, -4, -2]),
    ];
    for (c, want) in rows {
        let got: Vec<QuadScalar> = c.signed_volumes().unwrap().into_iter().map(|(_, v)| v).collect();
        ensure!(got == ints(&want, 1), "signed areas {:?}", got.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    }
    ensure!(p.volume_spectrum().unwrap() == q.volume_spectrum().unwrap(), "spectra differ");
    ensure!(orbit_volume_equivalent(&p, &q).unwrap().is_none(), "affine orbits coincide");
    Ok("area table matches, spectra equal, affine test negative".into())
}

fn combined_twins() -> Outcome {
    let p = fixtures::combined_twin_p();
    let q = fixtures::combined_twin_q();
    for c in [&p, &q] {
        ensure!(c.distance_spectrum().unwrap().values() == ints(&[9, 33, 36, 57, 72, 108], 2).as_slice(), "distances");
        ensure!(c.volume_spectrum().unwrap().values() == ints(&[72, 288, 1800, 2592], 2).as_slice(), "areas");
    }
    ensure!(orbit_congruent(&p, &q).unwrap().is_none(), "rigidly equivalent");
    let w = orbit_volume_equivalent(&p, &q).unwrap().ok_or("affine test negative")?;
    ensure!(w.verify(&p, &q), "affine witness does not verify");
    Ok("spectra match, rigid negative, affine positive with verified witness".into())
}

/// Squared distances of a rhombus with squared side `a` and squared
/// diagonals `b` (points 1,3) and `c` (points 2,4), in pair order.
fn rhombus_values(a: i64, b: i64, c: i64) -> Vec<QuadScalar> {
    ints(&[a, b, a, a, c, a], 1)
}

fn rhombus() -> Outcome {
    let f = minor(&symbolic_relation_matrix(4).unwrap(), &[0, 1, 2], &[0, 1, 2]).unwrap();
    let psi = PairPermutation::from_cycles(4, &[vec![1, 2]]).unwrap();
    let psi_f = f.apply_pair_permutation(&psi).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let (a, b, c) = (rng.gen_range(-20..20), rng.gen_range(-20..20), rng.gen_range(-20..20));
        let v = rhombus_values(a, b, c);
        let at = |x: i64| QuadScalar::from_int(x, 1);
        ensure!(f.evaluate(&v).unwrap() == at(2 * b * c * (b + c - 4 * a)), "det at ({a},{b},{c})");
        let want = 2 * a * ((a - b) * (a - b) + c * (c - b - 2 * a));
        ensure!(psi_f.evaluate(&v).unwrap() == at(want), "permuted det at ({a},{b},{c})");
    }

    let h = point_group_generators(4);
    for (x, y) in [(1, 2), (2, 1), (1, 3), (2, 3), (3, 5)] {
        let p = fixtures::rhombus(x, y);
        let (a, b, c) = (x * x + y * y, 4 * x * x, 4 * y * y);
        ensure!(p.distance_table().values == rhombus_values(a, b, c), "labels of rhombus ({x},{y})");
        let d = p.distance_table().values;
        ensure!(f.evaluate(&d).unwrap().is_zero(), "relation does not vanish");
        let want = 2 * a * ((a - b) * (a - b) + c * (c - b - 2 * a));
        ensure!(want != 0 && psi_f.evaluate(&d).unwrap() == QuadScalar::from_int(want, 1), "permuted value");
        let dc = double_cosets(4, &distance_stabilizer(&p).generators, &h).unwrap();
        ensure!(dc.len() == 2 && dc.total() == 720, "{} double cosets for ({x},{y})", dc.len());
        ensure!(dc.coset_index_of(&psi) == 1, "(1,2) in the trivial double coset");
        let r = certify_reconstructible(&p, &CertifyOptions::default()).unwrap();
        ensure!(r.verdict == Verdict::Certified, "rhombus ({x},{y}): {:?}", r.verdict);
    }

    let p = fixtures::rhombus(1, 2);
    let v = psi_f.evaluate(&p.distance_table().values).unwrap();
    ensure!(v == QuadScalar::from_int(330, 1), "a=5, b=4, c=16 gives {v}");
    let classes = realize_from_distances(&p.distance_spectrum().unwrap(), 4, 2, 1e-9).unwrap().classes.len();
    ensure!(classes == 1, "oracle found {classes} classes");

    // a = b: the larger stabilizer leaves a single double coset
    let s3 = QuadScalar::parse("sqrt(3)", 3).unwrap();
    let z = QuadScalar::zero(3);
    let one = QuadScalar::one(3);
    let wide = PointConfiguration::new(2, 3, vec![vec![-one.clone(), z.clone()], vec![z.clone(), s3.clone()], vec![one, z.clone()], vec![z, -s3]])
        .unwrap();
    ensure!(wide.distance_table().values == ints(&[4, 4, 4, 4, 12, 4], 3), "equal-diagonal rhombus labels");
    let dc = double_cosets(4, &distance_stabilizer(&wide).generators, &h).unwrap();
    ensure!(dc.len() == 1, "{} double cosets with the larger stabilizer", dc.len());
    let r = certify_reconstructible(&wide, &CertifyOptions::default()).unwrap();
    ensure!(r.verdict == Verdict::Certified, "equal-diagonal rhombus: {:?}", r.verdict);
    Ok("identities hold, 2 double cosets, (1,2) non-trivial, certified, 1 class; a=b gives 1 coset".into())
}

fn monomial_criterion() -> Outcome {
    let mut checked = 0;
    for (n, r) in [(4, 3), (5, 3), (5, 4)] {
        let support = MinorSupport::compute(n, r).unwrap();
        for t in monomial_orbit_representatives(n, r) {
            let criterion = monomial_admissible(&t, r, n).unwrap();
            ensure!(criterion == support.contains(&t), "n={n} r={r} {t}: criterion {criterion}");
            checked += 1;
        }
    }
    for n in [3, 4, 5] {
        let full: Vec<usize> = (0..n - 1).collect();
        let det = minor(&symbolic_relation_matrix(n).unwrap(), &full, &full).unwrap();
        let want = BigRational::from_integer(BigInt::from(2 * (-1i64).pow(n as u32 - 1)));
        let got = det.coefficient(&path_monomial(n).monomial(n));
        ensure!(got == want && path_coefficient(n) == want, "path coefficient for n={n}: {got}");
    }
    Ok(format!("{checked} monomial orbits agree; path coefficients match"))
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..200 {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(m + 2..=8.max(m + 2));
        let d = if k % 3 == 0 { 2 } else { 1 };
        let p = common::random_config(&mut rng, n, m, d);
        let perm = common::random_permutation(&mut rng, n);

        let g = common::random_orthogonal(&mut rng, m, d);
        let t = common::random_translation(&mut rng, m, d);
        let moved = p.permuted(&perm).map_affine(&g, &t);
        ensure!(moved.distance_spectrum().unwrap() == p.distance_spectrum().unwrap(), "rigid invariance, case {k}");

        let u = common::random_unimodular(&mut rng, m, d);
        ensure!(det(&u).abs() == QuadScalar::one(d), "unimodular generator");
        let sheared = p.permuted(&perm).map_affine(&u, &t);
        ensure!(sheared.volume_spectrum().unwrap() == p.volume_spectrum().unwrap(), "volume invariance, case {k}");

        let gram = p.gram_matrix(n - 1).unwrap();
        ensure!(gram == p.direct_gram_matrix(n - 1).unwrap(), "gram identity, case {k}");
        let rel = p.relation_matrix().entries;
        let minus_two = QuadScalar::from_int(-2, d);
        for (ri, gi) in rel.iter().zip(&gram) {
            for (x, y) in ri.iter().zip(gi) {
                ensure!(*x == &minus_two * y, "relation matrix = -2 gram, case {k}");
            }
        }
        for s in point_spectra::combinat::subsets(n, m + 2) {
            ensure!(alternating_sum(&p, &s).unwrap().is_zero(), "alternating sum {s:?}, case {k}");
        }
    }
    Ok("200 configurations, all identities exact".into())
}

fn generic_reconstructibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut counts = [0usize; 3];
    for k in 0..50 {
        let n = if k % 2 == 0 { 4 } else { 5 };
        let p = common::generic_planar(&mut rng, n, 1000);
        let c = realize_from_distances(&p.distance_spectrum().unwrap(), n, 2, 1e-9).unwrap().classes.len();
        ensure!(c == 1, "distance classes {c} for {p:?}");
        counts[n - 4] += 1;
        let q = common::generic_planar(&mut rng, 4, 1000);
        let c = realize_from_volumes(&q.volume_spectrum().unwrap(), 4, 2).unwrap().classes.len();
        ensure!(c == 1, "volume classes {c} for {q:?}");
        counts[2] += 1;
    }
    Ok(format!("{} + {} distance spectra, {} volume spectra: one class each", counts[0], counts[1], counts[2]))
}

fn mine_lines(args: &[&str]) -> Result<Vec<serde_json::Value>, String> {
    let (code, out, err) = cli(args);
    ensure!(code == 0, "mine exit {code}: {err}");
    out.lines().map(|l| serde_json::from_str(l).map_err(|e| e.to_string())).collect()
}

fn grid_config(v: &serde_json::Value) -> PointConfiguration {
    let pts: Vec<Vec<i64>> =
        v.as_array().unwrap().iter().map(|p| p.as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect()).collect();
    PointConfiguration::from_ints(&pts).unwrap()
}

fn miner() -> Outcome {
    let target = |p: &PointConfiguration, q: &PointConfiguration, lines: &[serde_json::Value]| {
        lines.iter().any(|l| {
            let (a, b) = (grid_config(&l["left"]), grid_config(&l["right"]));
            let spectra_equal = a.volume_spectrum().unwrap() == b.volume_spectrum().unwrap();
            let not_equiv = orbit_volume_equivalent(&a, &b).unwrap().is_none();
            let in_class = a.volume_spectrum().unwrap() == p.volume_spectrum().unwrap();
            let sides = |x: &PointConfiguration, y: &PointConfiguration| {
                orbit_volume_equivalent(x, p).unwrap().is_some() && orbit_volume_equivalent(y, q).unwrap().is_some()
            };
            spectra_equal && not_equiv && in_class && (sides(&a, &b) || sides(&b, &a))
        })
    };
    let six = mine_lines(&["mine", "--grid", "4x2", "--n", "6", "--kind", "volume"])?;
    ensure!(target(&fixtures::area_twin6_p(), &fixtures::area_twin6_q(), &six), "six-point pair not found");
    let five = mine_lines(&["mine", "--grid", "5x3", "--n", "5", "--kind", "volume"])?;
    ensure!(target(&fixtures::area_twin5_p(), &fixtures::area_twin5_q(), &five), "five-point pair not found");
    Ok(format!("6-point twins among {} pairs, 5-point twins among {} pairs", six.len(), five.len()))
}

fn local_probe() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut alternatives = 0;
    for k in 0..10 {
        let n = 4 + k % 2;
        let p = common::generic_planar(&mut rng, n, 1000);
        let r = local_reconstructibility_radius(&p, &ProbeOptions { samples: 100, noise: 1e-6, seed: k as u64 }).unwrap();
        ensure!(r.violations == 0, "{} violations for {p:?}", r.violations);
        ensure!(r.control_failures == 0, "{} control failures for {p:?}", r.control_failures);
        ensure!(r.warning.is_none(), "hypothesis warning for generic input");
        alternatives += r.alternatives_examined;
    }
    Ok(format!("10 configurations x 100 samples, 0 violations ({alternatives} alternative pairings examined)"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("distance twins: spectra, rigid test, reconstruction", Duration::from_secs(1), distance_twins),
        ("five-point area twins: signed areas, affine test", Duration::from_secs(1), area_twins5),
        ("combined twins over Q(sqrt 2)", Duration::from_secs(1), combined_twins),
        ("rhombus certification", Duration::from_secs(10), rhombus),
        ("monomial criterion vs minor expansion", Duration::from_secs(60), monomial_criterion),
        ("exact invariance suites", Duration::from_secs(60), invariance),
        ("generic reconstructibility oracle", Duration::from_secs(300), generic_reconstructibility),
        ("miner reproduces area twins", Duration::from_secs(600), miner),
        ("local reconstructibility probe", Duration::from_secs(120), local_probe),
    ];
    let mut failed = 0;
    for (k, (title, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(_) if elapsed > limit => (false, format!("took {elapsed:.2?}, limit {limit:?}")),
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {} [{}] {title} ({elapsed:.2?}): {detail}", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
