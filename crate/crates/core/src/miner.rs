//! Search of small integer grids for collision pairs: configurations with
//! equal spectra lying in different orbits.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{binomial, subsets};
use crate::config::PointConfiguration;
use crate::congruence::{orbit_congruent, orbit_volume_equivalent};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MineKind {
    Distance,
    Volume,
    Both,
}

impl std::str::FromStr for MineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distance" => Ok(MineKind::Distance),
            "volume" => Ok(MineKind::Volume),
            "both" => Ok(MineKind::Both),
            other => Err(Error::Format(format!("unknown kind {other:?} (distance, volume or both)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MineOptions {
    pub width: usize,
    pub height: usize,
    pub n: usize,
    pub kind: MineKind,
    /// Maximum number of subsets enumerated.
    pub budget: u64,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

pub type GridPoint = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionPair {
    pub left: Vec<GridPoint>,
    pub right: Vec<GridPoint>,
    /// Canonical key of the shared spectrum (or spectra).
    pub spectrum: String,
    /// `Some(false)` when the rigid orbit test was run and failed.
    pub rigid_equivalent: Option<bool>,
    /// `None` when not run or when the configurations are flat.
    pub affine_equivalent: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MineReport {
    pub pairs: Vec<CollisionPair>,
    /// Subsets enumerated.
    pub enumerated: u64,
    /// Distinct shapes after removing grid symmetries and translations.
    pub shapes: usize,
    /// True when the budget stopped the enumeration early.
    pub partial: bool,
}

/// Symmetries of a `width x height` grid as maps on `(x, y)`.
fn grid_symmetries(width: usize, height: usize) -> Vec<fn(GridPoint) -> GridPoint> {
    let mut out: Vec<fn(GridPoint) -> GridPoint> = vec![
        |(x, y)| (x, y),
        |(x, y)| (-x, y),
        |(x, y)| (x, -y),
        |(x, y)| (-x, -y),
    ];
    if width == height {
        out.extend_from_slice(&[
            |(x, y)| (y, x) as GridPoint,
            |(x, y)| (-y, x),
            |(x, y)| (y, -x),
            |(x, y)| (-y, -x),
        ]);
    }
    out
}

/// Lexicographically smallest sorted point list over grid symmetries and
/// translations (normalised to minimum coordinates zero).
pub fn canonical_form(points: &[GridPoint], width: usize, height: usize) -> Vec<GridPoint> {
    grid_symmetries(width, height)
        .into_iter()
        .map(|g| {
            let mapped: Vec<GridPoint> = points.iter().map(|&p| g(p)).collect();
            let mx = mapped.iter().map(|p| p.0).min().unwrap_or(0);
            let my = mapped.iter().map(|p| p.1).min().unwrap_or(0);
            let mut v: Vec<GridPoint> = mapped.into_iter().map(|(x, y)| (x - mx, y - my)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

fn to_config(points: &[GridPoint]) -> PointConfiguration {
    PointConfiguration::from_ints(&points.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>()).expect("grid points")
}

fn spectrum_key(c: &PointConfiguration, kind: MineKind) -> Option<String> {
    let dist = || c.distance_spectrum().expect("n >= 2").key();
    let vol = || {
        let s = c.volume_spectrum().expect("n > 2");
        (!s.values().iter().all(|v| v.is_zero())).then(|| s.key())
    };
    match kind {
        MineKind::Distance => Some(dist()),
        MineKind::Volume => vol(),
        MineKind::Both => vol().map(|v| format!("{}|{}", dist(), v)),
    }
}

fn equivalent(a: &PointConfiguration, b: &PointConfiguration, kind: MineKind) -> (Option<bool>, Option<bool>) {
    let rigid = || orbit_congruent(a, b).map(|w| w.is_some()).ok();
    let affine = || orbit_volume_equivalent(a, b).map(|w| w.is_some()).ok();
    match kind {
        MineKind::Distance => (rigid(), None),
        MineKind::Volume => (None, affine()),
        MineKind::Both => (rigid(), affine()),
    }
}

fn same_class(eq: (Option<bool>, Option<bool>), kind: MineKind) -> bool {
    match kind {
        MineKind::Distance => eq.0 == Some(true),
        MineKind::Volume => eq.1 == Some(true),
        // distances and areas collide, yet the rigid orbit differs
        MineKind::Both => eq.0 == Some(true),
    }
}

/// Enumerates `n`-subsets of the grid `{0..width} x {0..height}`, buckets
/// their shapes by exact spectrum and emits one pair per two orbit classes
/// in a bucket. Flat sets are skipped for volume-based kinds.
pub fn mine(options: &MineOptions) -> Result<MineReport> {
    let MineOptions { width, height, n, kind, budget, jobs } = options.clone();
    if width == 0 || height == 0 || n < 3 {
        return Err(Error::InvalidConfiguration("grid must be non-empty and n >= 3".into()));
    }
    let grid: Vec<GridPoint> =
        (0..width as i64).flat_map(|x| (0..height as i64).map(move |y| (x, y))).collect();
    if n > grid.len() {
        return Err(Error::InvalidConfiguration(format!("{n} points do not fit a {width}x{height} grid")));
    }
    let total = binomial(grid.len(), n) as u64;
    let partial = total > budget;
    let chosen: Vec<Vec<usize>> = subsets(grid.len(), n).into_iter().take(budget as usize).collect();
    let enumerated = chosen.len() as u64;

    let run = || -> MineReport {
        let mut shapes: Vec<Vec<GridPoint>> = chosen
            .par_iter()
            .map(|s| {
                let pts: Vec<GridPoint> = s.iter().map(|&i| grid[i]).collect();
                canonical_form(&pts, width, height)
            })
            .collect();
        shapes.sort();
        shapes.dedup();
        let keyed: Vec<(String, Vec<GridPoint>)> = shapes
            .par_iter()
            .filter_map(|pts| spectrum_key(&to_config(pts), kind).map(|k| (k, pts.clone())))
            .collect();
        let mut buckets: BTreeMap<String, Vec<Vec<GridPoint>>> = BTreeMap::new();
        for (k, pts) in keyed {
            buckets.entry(k).or_default().push(pts);
        }
        let shape_count = shapes.len();
        let mut pairs: Vec<CollisionPair> = buckets
            .into_par_iter()
            .filter(|(_, members)| members.len() > 1)
            .flat_map_iter(|(key, members)| bucket_pairs(&key, &members, kind))
            .collect();
        pairs.sort_by(|a, b| (&a.spectrum, &a.left, &a.right).cmp(&(&b.spectrum, &b.left, &b.right)));
        MineReport { pairs, enumerated, shapes: shape_count, partial }
    };
    if jobs == 0 {
        Ok(run())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidConfiguration(format!("thread pool: {e}")))?;
        Ok(pool.install(run))
    }
}

/// Groups one bucket into orbit classes and pairs up class representatives.
fn bucket_pairs(key: &str, members: &[Vec<GridPoint>], kind: MineKind) -> Vec<CollisionPair> {
    let mut reps: Vec<(Vec<GridPoint>, PointConfiguration)> = Vec::new();
    for pts in members {
        let c = to_config(pts);
        if !reps.iter().any(|(_, r)| same_class(equivalent(r, &c, kind), kind)) {
            reps.push((pts.clone(), c));
        }
    }
    let mut out = Vec::new();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let (rigid, affine) = equivalent(&reps[a].1, &reps[b].1, kind);
            out.push(CollisionPair {
                left: reps[a].0.clone(),
                right: reps[b].0.clone(),
                spectrum: key.to_string(),
                rigid_equivalent: rigid,
                affine_equivalent: affine,
            });
        }
    }
    out
}
