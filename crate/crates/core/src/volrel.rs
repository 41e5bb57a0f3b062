//! Sign rule and linear relations among signed simplex volumes.

use std::collections::BTreeMap;

use crate::combinat::{sorting_sign, subsets};
use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::scalar::QuadScalar;

/// Sorts an index tuple and returns the sign of the sorting permutation, so
/// that `a_idx = sign * a_sorted`.
pub fn reorder_sign(idx: &[usize]) -> Result<(Vec<usize>, i8)> {
    for (k, i) in idx.iter().enumerate() {
        if idx[..k].contains(i) {
            return Err(Error::DuplicateIndex(i + 1));
        }
    }
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    Ok((sorted, sorting_sign(idx)))
}

/// `sum_k (-1)^k a_{idx without idx_k}` over `m+2` distinct indices; zero
/// for every realized configuration.
pub fn alternating_sum(p: &PointConfiguration, idx: &[usize]) -> Result<QuadScalar> {
    let m = p.dim();
    if idx.len() != m + 2 {
        return Err(Error::WrongArity { expected: m + 2, got: idx.len() });
    }
    let mut acc = QuadScalar::zero(p.field());
    for k in 0..idx.len() {
        let face: Vec<usize> = idx.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &i)| i).collect();
        let v = p.signed_volume(&face)?;
        acc = if k % 2 == 0 { &acc + &v } else { &acc - &v };
    }
    Ok(acc)
}

/// Alternating sum of a sorted `(m+2)`-subset read from an assignment of
/// values to sorted `(m+1)`-subsets; `None` if some face is unassigned.
pub fn assigned_alternating_sum(
    assignment: &BTreeMap<Vec<usize>, QuadScalar>,
    subset: &[usize],
) -> Option<QuadScalar> {
    let mut acc: Option<QuadScalar> = None;
    for k in 0..subset.len() {
        let face: Vec<usize> = subset.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &i)| i).collect();
        let v = assignment.get(&face)?;
        acc = Some(match acc {
            None => v.clone(),
            Some(a) if k % 2 == 0 => &a + v,
            Some(a) => &a - v,
        });
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationCheck {
    Consistent,
    /// First `(m+2)`-subset (lexicographic, 0-based) whose alternating sum
    /// is non-zero.
    Violated(Vec<usize>),
}

/// Checks every fully assigned `(m+2)`-subset of `0..n` for a vanishing
/// alternating sum. Keys of `assignment` are sorted `(m+1)`-subsets.
pub fn linear_relation_filter(
    n: usize,
    m: usize,
    assignment: &BTreeMap<Vec<usize>, QuadScalar>,
) -> RelationCheck {
    if assignment.is_empty() {
        return RelationCheck::Consistent;
    }
    for s in subsets(n, m + 2) {
        if let Some(sum) = assigned_alternating_sum(assignment, &s) {
            if !sum.is_zero() {
                return RelationCheck::Violated(s);
            }
        }
    }
    RelationCheck::Consistent
}

/// All signed volumes of `p` keyed by sorted subset.
pub fn volume_assignment(p: &PointConfiguration) -> Result<BTreeMap<Vec<usize>, QuadScalar>> {
    Ok(p.signed_volumes()?.into_iter().collect())
}
