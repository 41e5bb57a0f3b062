//! Point configurations and their exact distance and volume spectra.
//!
//! Distances are always *squared* distances `d_{i,j} = <P_i - P_j, P_i - P_j>`
//! under an optional diagonal bilinear form (Euclidean by default). Volumes are
//! the signed determinants `det(P_{i1} - P_{i0}, …, P_{im} - P_{i0})`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::{binomial, pair_count, pair_index, pairs, subsets};
use crate::error::{Error, Result};
use crate::linalg::{self, ScalarMatrix};
use crate::scalar::QuadScalar;

/// `n` points in `m`-space over `Q(sqrt(d))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dim: usize,
    field: u32,
    points: Vec<Vec<QuadScalar>>,
    form: Option<Vec<QuadScalar>>,
}

impl fmt::Debug for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "PointConfiguration[m={}, d={}; {}]", self.dim, self.field, pts.join(" "))
    }
}

impl PointConfiguration {
    pub fn new(dim: usize, field: u32, points: Vec<Vec<QuadScalar>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfiguration("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidConfiguration("at least one point is required".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidConfiguration(format!(
                    "point {} has {} coordinates, expected {dim}",
                    i + 1,
                    p.len()
                )));
            }
            if let Some(c) = p.iter().find(|c| c.field() != field) {
                return Err(Error::MixedField(c.field(), field));
            }
        }
        Ok(PointConfiguration { dim, field, points, form: None })
    }

    /// Rational configuration from integer coordinates.
    pub fn from_ints(points: &[Vec<i64>]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&v| QuadScalar::from_int(v, 1)).collect())
            .collect();
        Self::new(dim, 1, pts)
    }

    /// Attaches diagonal form weights `a_k` (`<x,y> = sum a_k x_k y_k`).
    pub fn with_form_weights(mut self, weights: Vec<QuadScalar>) -> Result<Self> {
        if weights.len() != self.dim {
            return Err(Error::InvalidConfiguration(format!(
                "{} form weights for dimension {}",
                weights.len(),
                self.dim
            )));
        }
        if weights.iter().any(QuadScalar::is_zero) {
            return Err(Error::InvalidConfiguration("form weights must be non-zero".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.field() != self.field) {
            return Err(Error::MixedField(w.field(), self.field));
        }
        let euclidean = weights.iter().all(|w| *w == QuadScalar::one(self.field));
        self.form = if euclidean { None } else { Some(weights) };
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> u32 {
        self.field
    }

    pub fn points(&self) -> &[Vec<QuadScalar>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[QuadScalar] {
        &self.points[i]
    }

    pub fn form_weights(&self) -> Option<&[QuadScalar]> {
        self.form.as_deref()
    }

    pub fn is_euclidean(&self) -> bool {
        self.form.is_none()
    }

    pub fn points_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.iter().map(QuadScalar::to_f64).collect()).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            Err(Error::IndexOutOfRange { index: i + 1, len: self.n() })
        } else {
            Ok(())
        }
    }

    /// Bilinear form `<x, y>` of this configuration's space.
    pub fn inner(&self, x: &[QuadScalar], y: &[QuadScalar]) -> QuadScalar {
        let mut acc = QuadScalar::zero(self.field);
        for k in 0..self.dim {
            let term = &x[k] * &y[k];
            acc = match &self.form {
                Some(w) => &acc + &(&w[k] * &term),
                None => &acc + &term,
            };
        }
        acc
    }

    fn offset(&self, i: usize, base: usize) -> Vec<QuadScalar> {
        self.points[i].iter().zip(&self.points[base]).map(|(a, b)| a - b).collect()
    }

    /// Squared distance `d_{i,j}` (0-based, `i != j`).
    pub fn squared_distance(&self, i: usize, j: usize) -> Result<QuadScalar> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::DuplicateIndex(i + 1));
        }
        let v = self.offset(i, j);
        Ok(self.inner(&v, &v))
    }

    /// All squared distances, indexed by pair in lexicographic order.
    pub fn distance_table(&self) -> DistanceTable {
        let values = pairs(self.n())
            .into_iter()
            .map(|(i, j)| {
                let v = self.offset(i, j);
                self.inner(&v, &v)
            })
            .collect();
        DistanceTable { n: self.n(), field: self.field, values }
    }

    /// Sorted multiset of all `C(n,2)` squared distances.
    pub fn distance_spectrum(&self) -> Result<Spectrum> {
        if self.n() < 2 {
            return Err(Error::ArityMismatch("distance spectrum needs at least 2 points".into()));
        }
        Ok(Spectrum::new(SpectrumKind::Distance, self.distance_table().values))
    }

    /// Signed volume `det(P_{i1} - P_{i0}, …, P_{im} - P_{i0})` for an
    /// ordered tuple of `m+1` distinct indices.
    pub fn signed_volume(&self, idx: &[usize]) -> Result<QuadScalar> {
        if idx.len() != self.dim + 1 {
            return Err(Error::WrongArity { expected: self.dim + 1, got: idx.len() });
        }
        for (k, &i) in idx.iter().enumerate() {
            self.check_index(i)?;
            if idx[..k].contains(&i) {
                return Err(Error::DuplicateIndex(i + 1));
            }
        }
        Ok(self.volume_unchecked(idx))
    }

    pub(crate) fn volume_unchecked(&self, idx: &[usize]) -> QuadScalar {
        let base = idx[0];
        // Columns are offset vectors; det is transpose-invariant so use rows.
        let rows: ScalarMatrix = idx[1..].iter().map(|&i| self.offset(i, base)).collect();
        linalg::det(&rows)
    }

    /// Signed volumes of all increasing `(m+1)`-subsets, in lexicographic
    /// subset order.
    pub fn signed_volumes(&self) -> Result<Vec<(Vec<usize>, QuadScalar)>> {
        if self.n() <= self.dim {
            return Err(Error::ArityMismatch(format!(
                "volumes need n > m (n = {}, m = {})",
                self.n(),
                self.dim
            )));
        }
        Ok(subsets(self.n(), self.dim + 1)
            .into_iter()
            .map(|s| {
                let v = self.volume_unchecked(&s);
                (s, v)
            })
            .collect())
    }

    /// Sorted multiset of squared signed volumes over all `C(n, m+1)` simplices.
    pub fn volume_spectrum(&self) -> Result<Spectrum> {
        let values = self.signed_volumes()?.into_iter().map(|(_, v)| v.square()).collect();
        Ok(Spectrum::new(SpectrumKind::Volume, values))
    }

    /// Gram matrix of the offsets `P_i - P_base` (`i != base`, increasing),
    /// computed from squared distances by polarization.
    pub fn gram_matrix(&self, base: usize) -> Result<ScalarMatrix> {
        self.check_index(base)?;
        Ok(self.distance_table().gram_matrix(base))
    }

    /// Gram matrix from direct inner products of offsets.
    pub fn direct_gram_matrix(&self, base: usize) -> Result<ScalarMatrix> {
        self.check_index(base)?;
        let others: Vec<usize> = (0..self.n()).filter(|&i| i != base).collect();
        let offsets: Vec<Vec<QuadScalar>> = others.iter().map(|&i| self.offset(i, base)).collect();
        Ok(offsets.iter().map(|u| offsets.iter().map(|v| self.inner(u, v)).collect()).collect())
    }

    /// The relation matrix `(d_{i,j} - d_{i,n} - d_{j,n})` evaluated at this
    /// configuration's distances.
    pub fn relation_matrix(&self) -> RelationMatrix {
        self.distance_table().relation_matrix()
    }

    /// True when the relation matrix has the generic rank `min(n-1, m)`.
    pub fn generic_rank_check(&self) -> bool {
        self.relation_matrix().rank() == (self.n() - 1).min(self.dim)
    }

    /// Relabeled configuration `Q_i = P_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> PointConfiguration {
        PointConfiguration {
            dim: self.dim,
            field: self.field,
            points: perm.iter().map(|&i| self.points[i].clone()).collect(),
            form: self.form.clone(),
        }
    }

    /// Image under `x -> linear * x + translation`.
    pub fn map_affine(&self, linear: &ScalarMatrix, translation: &[QuadScalar]) -> PointConfiguration {
        let points = self
            .points
            .iter()
            .map(|p| {
                linalg::mat_vec(linear, p)
                    .into_iter()
                    .zip(translation)
                    .map(|(x, t)| &x + t)
                    .collect()
            })
            .collect();
        PointConfiguration { dim: self.dim, field: self.field, points, form: self.form.clone() }
    }

    /// Same points viewed in a larger field (rational coordinates only).
    pub fn lift_to_field(&self, field: u32) -> Result<PointConfiguration> {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|c| c.lift_rational(field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut out = PointConfiguration::new(self.dim, field, points)?;
        if let Some(w) = &self.form {
            out = out.with_form_weights(w.iter().map(|c| c.lift_rational(field)).collect::<Result<_>>()?)?;
        }
        Ok(out)
    }

    /// Elementary symmetric invariants of a triangle.
    pub fn triangle_invariants(&self) -> Result<TriangleInvariants> {
        if self.n() != 3 {
            return Err(Error::WrongN { expected: 3, got: self.n() });
        }
        let t = self.distance_table();
        let [x, y, z] = [&t.values[0], &t.values[1], &t.values[2]];
        let sigma = [x + &(y + z), &(x * y) + &(&(x * z) + &(y * z)), &(x * y) * z];
        let r: Vec<f64> = t.values.iter().map(|v| v.to_f64().max(0.0).sqrt()).collect();
        let e = [r[0] + r[1] + r[2], r[0] * r[1] + r[0] * r[2] + r[1] * r[2], r[0] * r[1] * r[2]];
        Ok(TriangleInvariants { squared: sigma, lengths: e })
    }
}

/// Order-independent invariants of a 3-point configuration.
///
/// `lengths` are the elementary symmetric polynomials of the three
/// (non-squared) side lengths in double precision. `squared` are the exact
/// elementary symmetric polynomials of the squared lengths; they separate the
/// same orbits, and `squared[2] == lengths[2]^2` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleInvariants {
    pub squared: [QuadScalar; 3],
    pub lengths: [f64; 3],
}

/// Squared distances of `n` labeled points, indexed by pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistanceTable {
    pub n: usize,
    pub field: u32,
    pub values: Vec<QuadScalar>,
}

impl DistanceTable {
    pub fn new(n: usize, field: u32, values: Vec<QuadScalar>) -> Result<Self> {
        if values.len() != pair_count(n) {
            return Err(Error::ArityMismatch(format!(
                "{} distances for {n} points, expected {}",
                values.len(),
                pair_count(n)
            )));
        }
        Ok(DistanceTable { n, field, values })
    }

    /// Builds a table from a partial assignment, failing on the first gap.
    pub fn from_partial(n: usize, field: u32, values: &[Option<QuadScalar>]) -> Result<Self> {
        if values.len() != pair_count(n) {
            return Err(Error::ArityMismatch(format!("{} slots for {n} points", values.len())));
        }
        let mut out = Vec::with_capacity(values.len());
        for (k, (i, j)) in pairs(n).into_iter().enumerate() {
            match &values[k] {
                Some(v) => out.push(v.clone()),
                None => return Err(Error::MissingDistance(i + 1, j + 1)),
            }
        }
        Ok(DistanceTable { n, field, values: out })
    }

    /// `d_{i,j}`, with `d_{i,i} = 0`.
    pub fn get(&self, i: usize, j: usize) -> QuadScalar {
        if i == j {
            QuadScalar::zero(self.field)
        } else {
            self.values[pair_index(self.n, i, j)].clone()
        }
    }

    pub fn gram_matrix(&self, base: usize) -> ScalarMatrix {
        let half = QuadScalar::from_frac(1, 2, self.field);
        let others: Vec<usize> = (0..self.n).filter(|&i| i != base).collect();
        others
            .iter()
            .map(|&i| {
                others
                    .iter()
                    .map(|&j| &half * &(&(&self.get(i, base) + &self.get(j, base)) - &self.get(i, j)))
                    .collect()
            })
            .collect()
    }

    /// `(d_{i,j} - d_{i,n} - d_{j,n})_{i,j < n}` with the last point as base.
    pub fn relation_matrix(&self) -> RelationMatrix {
        let last = self.n - 1;
        let entries = (0..last)
            .map(|i| {
                (0..last)
                    .map(|j| &(&self.get(i, j) - &self.get(i, last)) - &self.get(j, last))
                    .collect()
            })
            .collect();
        RelationMatrix { entries }
    }

    /// Table of the relabeled points `Q_i = P_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> DistanceTable {
        let values = pairs(self.n).into_iter().map(|(i, j)| self.get(perm[i], perm[j])).collect();
        DistanceTable { n: self.n, field: self.field, values }
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::new(SpectrumKind::Distance, self.values.clone())
    }
}

/// The matrix `(d_{i,j} - d_{i,n} - d_{j,n})` evaluated at concrete
/// distances; equals `-2` times the Gram matrix based at the last point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    pub entries: ScalarMatrix,
}

impl RelationMatrix {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectrumKind {
    Distance,
    Volume,
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Distance => "distance",
            SpectrumKind::Volume => "volume",
        })
    }
}

/// Sorted multiset of exact values: the roots of the distance polynomial
/// `prod (X - d_{i,j})` or the volume polynomial `prod (X - a_S^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    values: Vec<QuadScalar>,
}

impl Spectrum {
    pub fn new(kind: SpectrumKind, mut values: Vec<QuadScalar>) -> Self {
        values.sort();
        Spectrum { kind, values }
    }

    pub fn values(&self) -> &[QuadScalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn field(&self) -> Option<u32> {
        self.values.first().map(QuadScalar::field)
    }

    /// Key built from canonical strings; equal keys iff equal spectra.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(QuadScalar::canonical).collect();
        format!("{}:{}", self.kind, parts.join(";"))
    }

    /// Distinct values with multiplicities.
    pub fn multiplicities(&self) -> Vec<(QuadScalar, usize)> {
        let mut out: Vec<(QuadScalar, usize)> = Vec::new();
        for v in &self.values {
            match out.last_mut() {
                Some((last, c)) if last == v => *c += 1,
                _ => out.push((v.clone(), 1)),
            }
        }
        out
    }

    /// Tolerance comparison of double embeddings, for noisy input:
    /// `|x - y| <= tol * max(1, |x|)` elementwise.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        approx_sorted_eq(&self.to_f64(), &other.to_f64(), tol)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(QuadScalar::to_f64).collect()
    }

    /// Number of points implied by the length (`C(n,2)` or `C(n,m+1)`).
    pub fn implied_points(&self, dim: usize) -> Option<usize> {
        let k = match self.kind {
            SpectrumKind::Distance => 2,
            SpectrumKind::Volume => dim + 1,
        };
        (k..64).find(|&n| binomial(n, k) == self.len())
    }
}

/// Elementwise relative comparison of two ascending float lists.
pub fn approx_sorted_eq(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    b.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(1.0))
}

/// Binned counts of a spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub bin_size: f64,
    /// `(bin lower edge, count)` for every non-empty bin, ascending.
    pub counts: Vec<(f64, usize)>,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().map(|(_, c)| c).sum()
    }
}

/// Counts values (optionally square-rooted) in half-open bins
/// `[k*bin, (k+1)*bin)`, using the double embedding.
pub fn histogram(spectrum: &Spectrum, bin_size: f64, take_sqrt: bool) -> Result<Histogram> {
    if bin_size.is_nan() || bin_size <= 0.0 || bin_size.is_infinite() {
        return Err(Error::NonPositiveBin(bin_size));
    }
    let mut bins: BTreeMap<i64, usize> = BTreeMap::new();
    for v in spectrum.values() {
        let mut x = v.to_f64();
        if take_sqrt {
            x = x.max(0.0).sqrt();
        }
        let k = (x / bin_size).floor() as i64;
        *bins.entry(k).or_default() += 1;
    }
    let counts = bins.into_iter().map(|(k, c)| (k as f64 * bin_size, c)).collect();
    Ok(Histogram { bin_size, counts })
}
