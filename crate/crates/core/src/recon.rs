//! Enumeration oracles: all classes of configurations realizing a distance
//! or volume spectrum, and an empirical probe of local reconstructibility.

use std::collections::{BTreeMap, HashSet};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinat::{binomial, pair_count, pair_index, pairs, permutations, subsets};
use crate::config::{DistanceTable, PointConfiguration, Spectrum, SpectrumKind};
use crate::congruence::{distance_tables_isomorphic, orbit_volume_equivalent};
use crate::error::{Error, Result};
use crate::linalg::{self, ScalarMatrix};
use crate::permact::induced_from_point_permutation;
use crate::scalar::QuadScalar;
use crate::volrel::{linear_relation_filter, RelationCheck};

/// Default cap on search nodes.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// One class of realizations of a distance spectrum.
#[derive(Clone, Debug)]
pub struct DistanceClass {
    /// Labeled squared distances of the representative.
    pub table: DistanceTable,
    /// Gram matrix of `P_i - P_1`, `i = 2..n`.
    pub gram: ScalarMatrix,
    /// Dimension actually spanned.
    pub rank: usize,
    /// Coordinates in double precision, first point at the origin.
    pub coordinates: Vec<Vec<f64>>,
    /// Largest relative error of the coordinates against the exact table.
    pub residual: f64,
    /// `residual <= tol`; the verdict itself is exact regardless.
    pub within_tolerance: bool,
}

#[derive(Clone, Debug)]
pub struct DistanceRealization {
    pub classes: Vec<DistanceClass>,
    /// Complete assignments accepted before deduplication.
    pub leaves: u64,
    pub nodes: u64,
}

/// Distinct values with multiplicities, for assignment searches.
#[derive(Clone, Debug)]
struct Pool {
    values: Vec<QuadScalar>,
    counts: Vec<usize>,
}

impl Pool {
    fn new(spectrum: &[QuadScalar]) -> Self {
        let mut values: Vec<QuadScalar> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut sorted = spectrum.to_vec();
        sorted.sort();
        for v in sorted {
            if values.last() == Some(&v) {
                *counts.last_mut().unwrap() += 1;
            } else {
                values.push(v);
                counts.push(1);
            }
        }
        Pool { values, counts }
    }

    fn take(&mut self, v: &QuadScalar) -> bool {
        match self.values.binary_search(v) {
            Ok(k) if self.counts[k] > 0 => {
                self.counts[k] -= 1;
                true
            }
            _ => false,
        }
    }

    fn give(&mut self, v: &QuadScalar) {
        let k = self.values.binary_search(v).expect("value from this pool");
        self.counts[k] += 1;
    }

    fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

fn check_field(values: &[QuadScalar]) -> Result<u32> {
    let field = values.first().map_or(1, QuadScalar::field);
    if let Some(v) = values.iter().find(|v| v.field() != field) {
        return Err(Error::MixedField(v.field(), field));
    }
    Ok(field)
}

/// All classes (up to rigid motions and relabeling) of `n` points in
/// `m`-space whose squared-distance spectrum is `spectrum`.
///
/// Pairs are filled point by point; after the last pair of each point the
/// partial Gram matrix must be positive semidefinite of rank at most `m`.
/// The largest value is placed on the first pair.
pub fn realize_from_distances(spectrum: &Spectrum, n: usize, m: usize, tol: f64) -> Result<DistanceRealization> {
    realize_from_distances_with_budget(spectrum, n, m, tol, DEFAULT_BUDGET)
}

pub fn realize_from_distances_with_budget(
    spectrum: &Spectrum,
    n: usize,
    m: usize,
    tol: f64,
    budget: u64,
) -> Result<DistanceRealization> {
    if spectrum.kind != SpectrumKind::Distance || spectrum.len() != pair_count(n) || n < 2 {
        return Err(Error::ArityMismatch(format!(
            "{} spectrum of length {} does not fit n = {n}",
            spectrum.kind,
            spectrum.len()
        )));
    }
    if n > 7 {
        return Err(Error::TooLarge(format!("distance realization supports n <= 7, got {n}")));
    }
    let field = check_field(spectrum.values())?;
    let mut search = DistanceSearch {
        n,
        m,
        field,
        order: colex_pairs(n),
        pool: Pool::new(spectrum.values()),
        values: vec![None; pair_count(n)],
        leaves: Vec::new(),
        nodes: 0,
        budget,
    };
    let largest = spectrum.values().last().expect("non-empty").clone();
    search.pool.take(&largest);
    search.values[0] = Some(largest);
    search.run(1)?;
    let mut classes: Vec<DistanceClass> = Vec::new();
    let leaves = search.leaves.len() as u64;
    for table in search.leaves {
        if classes.iter().any(|c| distance_tables_isomorphic(&c.table, &table).is_some()) {
            continue;
        }
        classes.push(distance_class(table, m));
    }
    classes.sort_by_key(|c| c.table.values.iter().map(QuadScalar::canonical).collect::<Vec<_>>());
    for c in &mut classes {
        c.within_tolerance = c.residual <= tol;
    }
    Ok(DistanceRealization { classes, leaves, nodes: search.nodes })
}

/// Pairs ordered by larger index, then smaller: `{1,2},{1,3},{2,3},{1,4},…`.
fn colex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..n {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

struct DistanceSearch {
    n: usize,
    m: usize,
    field: u32,
    order: Vec<(usize, usize)>,
    pool: Pool,
    values: Vec<Option<QuadScalar>>,
    leaves: Vec<DistanceTable>,
    nodes: u64,
    budget: u64,
}

impl DistanceSearch {
    fn run(&mut self, step: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        if step == self.order.len() {
            let values = self.values.iter().map(|v| v.clone().expect("assigned")).collect();
            self.leaves.push(DistanceTable { n: self.n, field: self.field, values });
            return Ok(());
        }
        let (i, j) = self.order[step];
        let slot = pair_index(self.n, i, j);
        for k in 0..self.pool.values.len() {
            if self.pool.counts[k] == 0 {
                continue;
            }
            let v = self.pool.values[k].clone();
            self.pool.counts[k] -= 1;
            self.values[slot] = Some(v);
            // the last pair of point j closes the block 0..=j
            if i + 1 < j || self.block_realizable(j + 1) {
                self.run(step + 1)?;
            }
            self.values[slot] = None;
            self.pool.counts[k] += 1;
        }
        Ok(())
    }

    fn block_realizable(&self, k: usize) -> bool {
        let half = QuadScalar::from_frac(1, 2, self.field);
        let get = |a: usize, b: usize| -> QuadScalar {
            if a == b {
                QuadScalar::zero(self.field)
            } else {
                self.values[pair_index(self.n, a, b)].clone().expect("block assigned")
            }
        };
        let gram: ScalarMatrix = (1..k)
            .map(|a| (1..k).map(|b| &half * &(&(&get(a, 0) + &get(b, 0)) - &get(a, b))).collect())
            .collect();
        matches!(linalg::psd_factor(&gram), Some(f) if f.rank <= self.m)
    }
}

fn distance_class(table: DistanceTable, m: usize) -> DistanceClass {
    let gram = table.gram_matrix(0);
    let factor = linalg::psd_factor(&gram).expect("accepted tables are realizable");
    let rows = factor.coordinates(m);
    let mut coordinates = vec![vec![0.0; m]];
    coordinates.extend(rows);
    let mut residual: f64 = 0.0;
    for (i, j) in pairs(table.n) {
        let d: f64 = coordinates[i].iter().zip(&coordinates[j]).map(|(a, b)| (a - b) * (a - b)).sum();
        let exact = table.get(i, j).to_f64();
        residual = residual.max((d - exact).abs() / exact.abs().max(1.0));
    }
    DistanceClass { table, gram, rank: factor.rank, coordinates, residual, within_tolerance: true }
}

/// Whether `p` is the only class realizing its own distance spectrum.
pub fn is_reconstructible_from_distances(p: &PointConfiguration, tol: f64) -> Result<(bool, DistanceRealization)> {
    let r = realize_from_distances(&p.distance_spectrum()?, p.n(), p.dim(), tol)?;
    Ok((r.classes.len() == 1, r))
}

#[derive(Clone, Debug)]
pub struct VolumeRealization {
    /// One exact representative per class.
    pub classes: Vec<PointConfiguration>,
    /// Complete realizations found before deduplication.
    pub leaves: u64,
    pub nodes: u64,
}

/// All classes (up to translations, determinant-±1 linear maps and
/// relabeling) of `n` points in `m`-space whose squared-volume spectrum is
/// `spectrum`.
///
/// Search: a simplex of largest volume `a > 0` is placed on the first
/// `m+1` points in the normal frame `0, e_1, …, e_{m-1}, a e_m`; every
/// further point is fixed by the signed volumes of the `m` simplices that
/// replace one frame vertex other than the first, and all its remaining
/// volumes must then be drawn from the unused part of the spectrum.
pub fn realize_from_volumes(spectrum: &Spectrum, n: usize, m: usize) -> Result<VolumeRealization> {
    realize_from_volumes_with_budget(spectrum, n, m, DEFAULT_BUDGET)
}

pub fn realize_from_volumes_with_budget(
    spectrum: &Spectrum,
    n: usize,
    m: usize,
    budget: u64,
) -> Result<VolumeRealization> {
    if m == 0 || n <= m || spectrum.kind != SpectrumKind::Volume || spectrum.len() != binomial(n, m + 1) {
        return Err(Error::ArityMismatch(format!(
            "{} spectrum of length {} does not fit n = {n}, m = {m}",
            spectrum.kind,
            spectrum.len()
        )));
    }
    if n > 8 {
        return Err(Error::TooLarge(format!("volume realization supports n <= 8, got {n}")));
    }
    let field = check_field(spectrum.values())?;
    if spectrum.values().iter().all(QuadScalar::is_zero) {
        return Err(Error::AllVolumesZero);
    }
    let roots: Vec<QuadScalar> = spectrum
        .values()
        .iter()
        .map(|v| v.sqrt_exact().ok_or_else(|| Error::NonSquareValue(v.canonical())))
        .collect::<Result<_>>()?;
    let mut pool = Pool::new(&roots);
    let a = roots.iter().max().expect("non-empty").clone();
    pool.take(&a);
    let mut points: Vec<Vec<QuadScalar>> = vec![vec![QuadScalar::zero(field); m]];
    for k in 1..=m {
        let mut p = vec![QuadScalar::zero(field); m];
        p[k - 1] = if k == m { a.clone() } else { QuadScalar::one(field) };
        points.push(p);
    }
    let mut search = VolumeSearch { n, m, field, frame_volume: a, pool, points, found: Vec::new(), nodes: 0, budget };
    search.run()?;
    let leaves = search.found.len() as u64;
    let mut classes: Vec<PointConfiguration> = Vec::new();
    for cand in search.found {
        let mut duplicate = false;
        for c in &classes {
            if orbit_volume_equivalent(c, &cand)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            classes.push(cand);
        }
    }
    Ok(VolumeRealization { classes, leaves, nodes: search.nodes })
}

struct VolumeSearch {
    n: usize,
    m: usize,
    field: u32,
    frame_volume: QuadScalar,
    pool: Pool,
    points: Vec<Vec<QuadScalar>>,
    found: Vec<PointConfiguration>,
    nodes: u64,
    budget: u64,
}

impl VolumeSearch {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn volume(&self, idx: &[usize]) -> QuadScalar {
        let rows: ScalarMatrix = idx[1..]
            .iter()
            .map(|&i| self.points[i].iter().zip(&self.points[idx[0]]).map(|(x, y)| x - y).collect())
            .collect();
        linalg::det(&rows)
    }

    fn run(&mut self) -> Result<()> {
        self.tick()?;
        if self.points.len() == self.n {
            if self.pool.is_empty() {
                self.accept()?;
            }
            return Ok(());
        }
        let mut coeffs: Vec<QuadScalar> = Vec::with_capacity(self.m);
        self.choose(&mut coeffs)
    }

    /// Chooses signed volumes `v_j = a(0, e_1, …, x at j, …, e_m)`; the new
    /// point is `x = sum_j (v_j / a) (P_j - P_0)`.
    fn choose(&mut self, chosen: &mut Vec<QuadScalar>) -> Result<()> {
        if chosen.len() == self.m {
            return self.place(chosen);
        }
        for k in 0..self.pool.values.len() {
            if self.pool.counts[k] == 0 {
                continue;
            }
            let u = self.pool.values[k].clone();
            let signs: &[i64] = if u.is_zero() { &[1] } else { &[1, -1] };
            self.pool.counts[k] -= 1;
            for &s in signs {
                self.tick()?;
                chosen.push(&u * &QuadScalar::from_int(s, self.field));
                self.choose(chosen)?;
                chosen.pop();
            }
            self.pool.counts[k] += 1;
        }
        Ok(())
    }

    fn place(&mut self, chosen: &[QuadScalar]) -> Result<()> {
        let mut x = vec![QuadScalar::zero(self.field); self.m];
        for (j, v) in chosen.iter().enumerate() {
            let c = v / &self.frame_volume;
            for (t, xt) in x.iter_mut().enumerate() {
                *xt = &*xt + &(&c * &self.points[j + 1][t]);
            }
        }
        let k = self.points.len();
        self.points.push(x);
        // volumes with k not yet accounted for: every m-subset of 0..k except
        // the frame faces {0..m} \ {j}, j >= 1
        let mut taken: Vec<QuadScalar> = Vec::new();
        let mut ok = true;
        for face in subsets(k, self.m) {
            if face.iter().all(|&i| i <= self.m) && face[0] == 0 {
                continue;
            }
            let mut idx = face.clone();
            idx.push(k);
            let v = self.volume(&idx).abs();
            if self.pool.take(&v) {
                taken.push(v);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            self.run()?;
        }
        for v in &taken {
            self.pool.give(v);
        }
        self.points.pop();
        Ok(())
    }

    fn accept(&mut self) -> Result<()> {
        let cfg = PointConfiguration::new(self.m, self.field, self.points.clone())?;
        let assignment: BTreeMap<Vec<usize>, QuadScalar> = cfg.signed_volumes()?.into_iter().collect();
        if linear_relation_filter(self.n, self.m, &assignment) == RelationCheck::Consistent {
            self.found.push(cfg);
        }
        Ok(())
    }
}

/// Whether `p` is the only class realizing its own volume spectrum.
pub fn is_reconstructible_from_volumes(p: &PointConfiguration) -> Result<(bool, VolumeRealization)> {
    let r = realize_from_volumes(&p.volume_spectrum()?, p.n(), p.dim())?;
    Ok((r.classes.len() == 1, r))
}

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub samples: usize,
    pub noise: f64,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { samples: 100, noise: 1e-6, seed: 0 }
    }
}

/// Outcome of [`local_reconstructibility_radius`].
#[derive(Clone, Debug, Serialize)]
pub struct LocalProbeReport {
    pub samples: usize,
    pub noise: f64,
    /// Matching window for distances, derived from the noise.
    pub window: f64,
    /// Samples for which a non-trivial, realizable re-pairing of distances
    /// was found: a nearby configuration with the same spectrum in another
    /// orbit.
    pub violations: usize,
    /// Samples whose own labeled distances failed to match or to be
    /// recognised as realizable (should be zero).
    pub control_failures: usize,
    /// Non-identity re-pairings examined.
    pub alternatives_examined: usize,
    pub distinct_distances: bool,
    pub generic_rank: bool,
    pub warning: Option<String>,
    /// `noise` when the probe found no violation.
    pub largest_clean_noise: Option<f64>,
}

/// Empirical check that configurations near `p` are determined by their
/// distance spectrum.
///
/// Each sample `Q` adds uniform noise in `[-noise, noise]` to every
/// coordinate. All pairings `phi` of `Q`'s distances with `p`'s within the
/// window are enumerated; a pairing not induced by relabeling points whose
/// re-paired distances are realizable in `m`-space is a violation.
pub fn local_reconstructibility_radius(p: &PointConfiguration, options: &ProbeOptions) -> Result<LocalProbeReport> {
    let n = p.n();
    let m = p.dim();
    if n < 2 {
        return Err(Error::ArityMismatch("probe needs at least 2 points".into()));
    }
    let table = p.distance_table();
    let distinct = {
        let mut v = table.values.clone();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    };
    let generic_rank = p.generic_rank_check();
    let mut warnings = Vec::new();
    if !distinct {
        warnings.push("hypothesis unmet: distances are not all distinct");
    }
    if !generic_rank {
        warnings.push("hypothesis unmet: relation matrix does not have generic rank");
    }
    let base = p.points_f64();
    let dp: Vec<f64> = table.values.iter().map(QuadScalar::to_f64).collect();
    let max_d = dp.iter().cloned().fold(0.0, f64::max);
    let noise = options.noise;
    let window = 8.0 * max_d.sqrt() * (m as f64).sqrt() * noise + 8.0 * m as f64 * noise * noise;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut induced: Option<HashSet<Vec<usize>>> = None;
    let mut violations = 0;
    let mut control_failures = 0;
    let mut alternatives = 0;
    for _ in 0..options.samples {
        let q: Vec<Vec<f64>> = base
            .iter()
            .map(|pt| pt.iter().map(|x| x + rng.gen_range(-noise..=noise)).collect())
            .collect();
        let dq: Vec<f64> = pairs(n)
            .into_iter()
            .map(|(i, j)| q[i].iter().zip(&q[j]).map(|(a, b)| (a - b) * (a - b)).sum())
            .collect();
        let scale = dq.iter().cloned().fold(1.0, f64::max);
        let matchings = pairings_within(&dq, &dp, window);
        let identity: Vec<usize> = (0..dq.len()).collect();
        if !matchings.contains(&identity) || !realizable_f64(n, m, &dq, scale) {
            control_failures += 1;
        }
        let mut violated = false;
        for phi in matchings.iter().filter(|phi| **phi != identity) {
            alternatives += 1;
            let induced = induced.get_or_insert_with(|| {
                permutations(n)
                    .into_iter()
                    .map(|pi| induced_from_point_permutation(&pi).expect("permutation").map().to_vec())
                    .collect()
            });
            if induced.contains(phi) {
                continue;
            }
            let repaired: Vec<f64> = phi.iter().map(|&t| dq[t]).collect();
            if realizable_f64(n, m, &repaired, scale) {
                violated = true;
            }
        }
        if violated {
            violations += 1;
        }
    }
    Ok(LocalProbeReport {
        samples: options.samples,
        noise,
        window,
        violations,
        control_failures,
        alternatives_examined: alternatives,
        distinct_distances: distinct,
        generic_rank,
        warning: (!warnings.is_empty()).then(|| warnings.join("; ")),
        largest_clean_noise: (violations == 0).then_some(noise),
    })
}

/// Runs the probe at each noise level and returns the largest level without
/// violations, with all reports.
pub fn largest_clean_noise(
    p: &PointConfiguration,
    levels: &[f64],
    samples: usize,
    seed: u64,
) -> Result<(Option<f64>, Vec<LocalProbeReport>)> {
    let mut reports = Vec::new();
    let mut best = None;
    for &noise in levels {
        let r = local_reconstructibility_radius(p, &ProbeOptions { samples, noise, seed })?;
        if r.violations == 0 {
            best = Some(best.map_or(noise, |b: f64| b.max(noise)));
        }
        reports.push(r);
    }
    Ok((best, reports))
}

/// Bijections `phi` of pair slots with `|dq[phi(S)] - dp[S]| <= window`.
fn pairings_within(dq: &[f64], dp: &[f64], window: f64) -> Vec<Vec<usize>> {
    let len = dp.len();
    let candidates: Vec<Vec<usize>> =
        (0..len).map(|s| (0..len).filter(|&t| (dq[t] - dp[s]).abs() <= window).collect()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    let mut used = vec![false; len];
    fn rec(s: usize, cand: &[Vec<usize>], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if out.len() >= 10_000 {
            return;
        }
        if s == cand.len() {
            out.push(cur.clone());
            return;
        }
        for &t in &cand[s] {
            if used[t] {
                continue;
            }
            used[t] = true;
            cur.push(t);
            rec(s + 1, cand, cur, used, out);
            cur.pop();
            used[t] = false;
        }
    }
    rec(0, &candidates, &mut cur, &mut used, &mut out);
    out
}

/// Floating-point realizability of squared distances in `m`-space: the Gram
/// matrix has no eigenvalue below `-eps` and at most `m` above `eps`, with
/// `eps = 1e-9 * scale * n`.
pub fn realizable_f64(n: usize, m: usize, values: &[f64], scale: f64) -> bool {
    if n < 2 {
        return true;
    }
    let get = |i: usize, j: usize| if i == j { 0.0 } else { values[pair_index(n, i, j)] };
    let g = DMatrix::from_fn(n - 1, n - 1, |a, b| 0.5 * (get(a + 1, 0) + get(b + 1, 0) - get(a + 1, b + 1)));
    let eig = SymmetricEigen::new(g).eigenvalues;
    let eps = 1e-9 * scale * n as f64;
    eig.iter().all(|&l| l >= -eps) && eig.iter().filter(|&&l| l > eps).count() <= m
}
