//! Equivalence of labeled and unlabeled configurations under rigid motions
//! (distance side) and under translations plus determinant-±1 linear maps
//! (volume side), with transformation recovery.
//!
//! Permutation convention: a witness permutation `perm` relates the
//! configurations by `Q_i ~ P_{perm[i]}`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::combinat::{sorting_sign, subsets};
use crate::config::{DistanceTable, PointConfiguration};
use crate::error::{Error, Result};
use crate::linalg::{self, ScalarMatrix};
use crate::scalar::QuadScalar;

/// A map `x -> linear * x + translation`.
#[derive(Debug, Clone, PartialEq)]
pub enum RigidMap {
    /// Exact over the configuration's field.
    Exact { linear: ScalarMatrix, translation: Vec<QuadScalar> },
    /// Double precision, when an exact orthogonal completion would leave the
    /// field. `residual` bounds both the point mismatch and `|g^T g - I|`.
    Approximate { linear: Vec<Vec<f64>>, translation: Vec<f64>, residual: f64 },
    /// Equal distances under a non-Euclidean form with a degenerate offset
    /// span; the isometry exists but is not reconstructed.
    Unavailable,
}

impl RigidMap {
    pub fn is_exact(&self) -> bool {
        matches!(self, RigidMap::Exact { .. })
    }

    pub fn apply_f64(&self, x: &[f64]) -> Option<Vec<f64>> {
        match self {
            RigidMap::Exact { linear, translation } => Some(
                linalg::to_f64(linear)
                    .iter()
                    .zip(translation)
                    .map(|(row, t)| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + t.to_f64())
                    .collect(),
            ),
            RigidMap::Approximate { linear, translation, .. } => Some(
                linear
                    .iter()
                    .zip(translation)
                    .map(|(row, t)| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + t)
                    .collect(),
            ),
            RigidMap::Unavailable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidWitness {
    pub perm: Vec<usize>,
    pub map: RigidMap,
}

impl RigidWitness {
    /// Checks `Q_i = g(P_{perm[i]})`: exactly for exact maps, within `tol`
    /// (absolute, scaled by coordinate size) for approximate ones.
    pub fn verify(&self, p: &PointConfiguration, q: &PointConfiguration, tol: f64) -> bool {
        match &self.map {
            RigidMap::Exact { linear, translation } => {
                let image = p.permuted(&self.perm).map_affine(linear, translation);
                image.points() == q.points()
            }
            RigidMap::Approximate { .. } => {
                let pf = p.permuted(&self.perm).points_f64();
                let qf = q.points_f64();
                pf.iter().zip(&qf).all(|(x, y)| {
                    let gx = self.map.apply_f64(x).unwrap_or_default();
                    gx.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol * b.abs().max(1.0))
                })
            }
            RigidMap::Unavailable => p.permuted(&self.perm).distance_table() == q.distance_table(),
        }
    }
}

/// `Q_i = linear(P_{perm[i]} + shift)` with `det(linear) = sign`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeWitness {
    pub perm: Vec<usize>,
    pub linear: ScalarMatrix,
    pub shift: Vec<QuadScalar>,
    pub sign: i8,
}

impl VolumeWitness {
    pub fn verify(&self, p: &PointConfiguration, q: &PointConfiguration) -> bool {
        let shifted: Vec<QuadScalar> = linalg::mat_vec(&self.linear, &self.shift);
        let image = p.permuted(&self.perm).map_affine(&self.linear, &shifted);
        image.points() == q.points() && linalg::det(&self.linear) == QuadScalar::from_int(self.sign as i64, p.field())
    }
}

fn check_shape(p: &PointConfiguration, q: &PointConfiguration) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::ShapeMismatch(format!("n = {} vs {}", p.n(), q.n())));
    }
    if p.dim() != q.dim() {
        return Err(Error::ShapeMismatch(format!("m = {} vs {}", p.dim(), q.dim())));
    }
    if p.field() != q.field() {
        return Err(Error::ShapeMismatch(format!("d = {} vs {}", p.field(), q.field())));
    }
    if p.form_weights() != q.form_weights() {
        return Err(Error::ShapeMismatch("different bilinear forms".into()));
    }
    Ok(())
}

fn offsets(p: &PointConfiguration, base: usize, idx: &[usize]) -> Vec<Vec<QuadScalar>> {
    idx.iter()
        .map(|&i| p.point(i).iter().zip(p.point(base)).map(|(a, b)| a - b).collect())
        .collect()
}

/// Greedy maximal independent subset of the offsets `P_i - P_0`.
fn independent_offsets(p: &PointConfiguration) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 1..p.n() {
        let mut trial = chosen.clone();
        trial.push(i);
        if linalg::rank(&offsets(p, 0, &trial)) == trial.len() {
            chosen = trial;
            if chosen.len() == p.dim() {
                break;
            }
        }
    }
    chosen
}

/// Labeled rigid equivalence: `Some(witness)` iff all squared distances agree
/// under identical labels (over the reals this is equivalent to the existence
/// of an isometry mapping `P_i` to `Q_i`).
pub fn labeled_congruent(p: &PointConfiguration, q: &PointConfiguration) -> Result<Option<RigidWitness>> {
    check_shape(p, q)?;
    if p.distance_table() != q.distance_table() {
        return Ok(None);
    }
    let perm: Vec<usize> = (0..p.n()).collect();
    Ok(Some(RigidWitness { perm, map: rigid_map(p, q) }))
}

fn rigid_map(p: &PointConfiguration, q: &PointConfiguration) -> RigidMap {
    let m = p.dim();
    let field = p.field();
    let basis = independent_offsets(p);
    let translation_for = |linear: &ScalarMatrix| -> Vec<QuadScalar> {
        let gp = linalg::mat_vec(linear, p.point(0));
        q.point(0).iter().zip(&gp).map(|(a, b)| a - b).collect()
    };
    if basis.is_empty() {
        let linear = linalg::identity(m, field);
        let translation = translation_for(&linear);
        return RigidMap::Exact { linear, translation };
    }
    if basis.len() == m {
        // Columns are offsets: g U = W, so g = W U^{-1}.
        let u = linalg::transpose(&offsets(p, 0, &basis));
        let w = linalg::transpose(&offsets(q, 0, &basis));
        let inv = linalg::inverse(&u).expect("independent offsets");
        let linear = linalg::mat_mul(&w, &inv);
        let translation = translation_for(&linear);
        return RigidMap::Exact { linear, translation };
    }
    if !p.is_euclidean() {
        return RigidMap::Unavailable;
    }
    approximate_rigid_map(p, q, &basis)
}

/// Completes the offset spans of `P` and `Q` by orthonormal complements and
/// maps one onto the other, in double precision.
fn approximate_rigid_map(p: &PointConfiguration, q: &PointConfiguration, basis: &[usize]) -> RigidMap {
    let m = p.dim();
    let r = basis.len();
    let frame = |c: &PointConfiguration| -> DMatrix<f64> {
        let offs = offsets(c, 0, basis);
        let mut a = DMatrix::<f64>::zeros(m, r + m);
        for (k, v) in offs.iter().enumerate() {
            for (row, x) in v.iter().enumerate() {
                a[(row, k)] = x.to_f64();
            }
        }
        for k in 0..m {
            a[(k, r + k)] = 1.0;
        }
        let qmat = a.clone().qr().q();
        let mut out = DMatrix::<f64>::zeros(m, m);
        for k in 0..m {
            for row in 0..m {
                out[(row, k)] = if k < r { a[(row, k)] } else { qmat[(row, k)] };
            }
        }
        out
    };
    let u = frame(p);
    let w = frame(q);
    let Some(inv) = u.try_inverse() else {
        return RigidMap::Unavailable;
    };
    let g = &w * inv;
    let pf = p.points_f64();
    let qf = q.points_f64();
    let p0 = nalgebra::DVector::from_vec(pf[0].clone());
    let t = nalgebra::DVector::from_vec(qf[0].clone()) - &g * p0;
    let mut residual = (g.transpose() * &g - DMatrix::<f64>::identity(m, m)).amax();
    for (x, y) in pf.iter().zip(&qf) {
        let gx = &g * nalgebra::DVector::from_vec(x.clone()) + &t;
        for (a, b) in gx.iter().zip(y) {
            residual = residual.max((a - b).abs());
        }
    }
    RigidMap::Approximate {
        linear: (0..m).map(|i| (0..m).map(|j| g[(i, j)]).collect()).collect(),
        translation: t.iter().copied().collect(),
        residual,
    }
}

fn point_distance_keys(t: &DistanceTable) -> Vec<Vec<QuadScalar>> {
    (0..t.n)
        .map(|i| {
            let mut v: Vec<QuadScalar> = (0..t.n).filter(|&j| j != i).map(|j| t.get(i, j)).collect();
            v.sort();
            v
        })
        .collect()
}

/// Relabeling `perm` with `b(i,j) = a(perm[i], perm[j])` for all pairs, if
/// one exists. Candidates are pruned by per-point distance multisets.
pub fn distance_tables_isomorphic(a: &DistanceTable, b: &DistanceTable) -> Option<Vec<usize>> {
    let n = a.n;
    if b.n != n {
        return None;
    }
    let mut sa = a.values.clone();
    let mut sb = b.values.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let ka = point_distance_keys(a);
    let kb = point_distance_keys(b);
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&k| ka[k] == kb[i]).collect()).collect();
    fn search(
        i: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        candidates: &[Vec<usize>],
        a: &DistanceTable,
        b: &DistanceTable,
    ) -> bool {
        if i == candidates.len() {
            return true;
        }
        for &k in &candidates[i] {
            if used[k] || !perm.iter().enumerate().all(|(j, &l)| a.get(l, k) == b.get(j, i)) {
                continue;
            }
            used[k] = true;
            perm.push(k);
            if search(i + 1, perm, used, candidates, a, b) {
                return true;
            }
            perm.pop();
            used[k] = false;
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(0, &mut perm, &mut used, &candidates, a, b).then_some(perm)
}

/// Unlabeled rigid equivalence: searches `perm` with `Q_i ~ P_{perm[i]}`.
pub fn orbit_congruent(p: &PointConfiguration, q: &PointConfiguration) -> Result<Option<RigidWitness>> {
    check_shape(p, q)?;
    let Some(perm) = distance_tables_isomorphic(&p.distance_table(), &q.distance_table()) else {
        return Ok(None);
    };
    let relabeled = p.permuted(&perm);
    let map = rigid_map(&relabeled, q);
    Ok(Some(RigidWitness { perm, map }))
}

struct Volumes {
    by_subset: BTreeMap<Vec<usize>, QuadScalar>,
    flat: bool,
}

fn volumes(p: &PointConfiguration) -> Result<Volumes> {
    let list = p.signed_volumes()?;
    let flat = list.iter().all(|(_, v)| v.is_zero());
    Ok(Volumes { by_subset: list.into_iter().collect(), flat })
}

fn check_volume_shape(p: &PointConfiguration, q: &PointConfiguration) -> Result<(Volumes, Volumes)> {
    check_shape(p, q)?;
    let vp = volumes(p)?;
    let vq = volumes(q)?;
    if vp.flat && vq.flat {
        return Err(Error::DegenerateFrame);
    }
    Ok((vp, vq))
}

/// Labeled volume equivalence: `Some(witness)` iff all signed volumes agree
/// up to one global sign.
pub fn labeled_volume_equivalent(p: &PointConfiguration, q: &PointConfiguration) -> Result<Option<VolumeWitness>> {
    let (vp, vq) = check_volume_shape(p, q)?;
    if vp.flat || vq.flat {
        return Ok(None);
    }
    let Some(sign) = global_sign(&vp, &vq) else {
        return Ok(None);
    };
    let perm: Vec<usize> = (0..p.n()).collect();
    Ok(volume_map(p, q, &vp, sign).map(|(linear, shift)| VolumeWitness { perm, linear, shift, sign }))
}

fn global_sign(vp: &Volumes, vq: &Volumes) -> Option<i8> {
    let mut sign: Option<i8> = None;
    for (s, a) in &vp.by_subset {
        let b = &vq.by_subset[s];
        if a.is_zero() || b.is_zero() {
            if a.is_zero() != b.is_zero() {
                return None;
            }
            continue;
        }
        let e = if a == b {
            1
        } else if *a == -b.clone() {
            -1
        } else {
            return None;
        };
        if *sign.get_or_insert(e) != e {
            return None;
        }
    }
    sign
}

/// Frame construction: on a simplex with non-zero volume, `sigma` maps the
/// offsets of `P` to those of `Q`; equal volumes force every other point.
fn volume_map(
    p: &PointConfiguration,
    q: &PointConfiguration,
    vp: &Volumes,
    sign: i8,
) -> Option<(ScalarMatrix, Vec<QuadScalar>)> {
    let (frame, _) = vp.by_subset.iter().find(|(_, v)| !v.is_zero())?;
    let base = frame[0];
    let u = linalg::transpose(&offsets(p, base, &frame[1..]));
    let w = linalg::transpose(&offsets(q, base, &frame[1..]));
    let linear = linalg::mat_mul(&w, &linalg::inverse(&u)?);
    if linalg::det(&linear) != QuadScalar::from_int(sign as i64, p.field()) {
        return None;
    }
    // Q_i = sigma(P_i + v)  =>  v = sigma^{-1}(Q_base) - P_base
    let back = linalg::mat_vec(&linalg::inverse(&linear)?, q.point(base));
    let shift: Vec<QuadScalar> = back.iter().zip(p.point(base)).map(|(a, b)| a - b).collect();
    let image = p.map_affine(&linear, &linalg::mat_vec(&linear, &shift));
    (image.points() == q.points()).then_some((linear, shift))
}

fn point_volume_keys(p: &PointConfiguration, vols: &Volumes) -> Vec<Vec<QuadScalar>> {
    let mut keys = vec![Vec::new(); p.n()];
    for (s, v) in &vols.by_subset {
        let sq = v.square();
        for &i in s {
            keys[i].push(sq.clone());
        }
    }
    for k in &mut keys {
        k.sort();
    }
    keys
}

/// Unlabeled volume equivalence: searches `perm` and a global sign with
/// `a^Q_S = sign * a^P_{perm(S)}` for every simplex `S`.
pub fn orbit_volume_equivalent(p: &PointConfiguration, q: &PointConfiguration) -> Result<Option<VolumeWitness>> {
    let (vp, vq) = check_volume_shape(p, q)?;
    if vp.flat || vq.flat || p.volume_spectrum()? != q.volume_spectrum()? {
        return Ok(None);
    }
    let n = p.n();
    let m = p.dim();
    let kp = point_volume_keys(p, &vp);
    let kq = point_volume_keys(q, &vq);
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&k| kp[k] == kq[i]).collect()).collect();
    // Simplices whose largest index is i, checked when position i is filled.
    let closing: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|i| subsets(i, m).into_iter().map(|mut s| {
            s.push(i);
            s
        }).collect())
        .collect();

    struct Search<'a> {
        vp: &'a Volumes,
        vq: &'a Volumes,
        candidates: Vec<Vec<usize>>,
        closing: Vec<Vec<Vec<usize>>>,
        perm: Vec<usize>,
        used: Vec<bool>,
        found: Option<(Vec<usize>, i8)>,
    }
    impl Search<'_> {
        fn image_volume(&self, s: &[usize]) -> QuadScalar {
            let tuple: Vec<usize> = s.iter().map(|&i| self.perm[i]).collect();
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            let v = self.vp.by_subset[&sorted].clone();
            if sorting_sign(&tuple) < 0 {
                -v
            } else {
                v
            }
        }

        fn run(&mut self, i: usize, sign: Option<i8>) {
            if self.found.is_some() {
                return;
            }
            if i == self.candidates.len() {
                self.found = Some((self.perm.clone(), sign.unwrap_or(1)));
                return;
            }
            for c in 0..self.candidates[i].len() {
                let k = self.candidates[i][c];
                if self.used[k] {
                    continue;
                }
                self.used[k] = true;
                self.perm.push(k);
                let mut s = sign;
                let mut ok = true;
                for simplex in &self.closing[i] {
                    let a = self.image_volume(simplex);
                    let b = &self.vq.by_subset[simplex];
                    if a.is_zero() || b.is_zero() {
                        if a.is_zero() != b.is_zero() {
                            ok = false;
                            break;
                        }
                        continue;
                    }
                    let e = if &a == b {
                        1
                    } else if a == -b.clone() {
                        -1
                    } else {
                        ok = false;
                        break;
                    };
                    if *s.get_or_insert(e) != e {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    self.run(i + 1, s);
                }
                self.perm.pop();
                self.used[k] = false;
                if self.found.is_some() {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        vp: &vp,
        vq: &vq,
        candidates,
        closing,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        found: None,
    };
    search.run(0, None);
    let Some((perm, sign)) = search.found else {
        return Ok(None);
    };
    let relabeled = p.permuted(&perm);
    let vr = volumes(&relabeled)?;
    Ok(volume_map(&relabeled, q, &vr, sign).map(|(linear, shift)| VolumeWitness { perm, linear, shift, sign }))
}
