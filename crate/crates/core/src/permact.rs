//! Permutations of the unordered pairs of `n` points, the subgroup `H` induced
//! by relabeling points, the stabilizer `G` of a labeled distance function,
//! double cosets `G psi H`, and a one-sided reconstructibility certificate.
//!
//! Pair numbers in cycle notation are 1-based positions in the
//! lexicographic pair order `{1,2},{1,3},…,{n-1,n}`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::combinat::{factorial, pair_count, pair_index, pairs, subsets};
use crate::config::{DistanceTable, PointConfiguration};
use crate::error::{Error, Result};
use crate::linalg;
use crate::relideal::{self, PairPolynomial};
use crate::scalar::QuadScalar;

/// A bijection of the `C(n,2)` pairs, stored as `map[s] = image of pair s`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPermutation {
    n: usize,
    map: Vec<usize>,
}

impl PairPermutation {
    pub fn identity(n: usize) -> Self {
        PairPermutation { n, map: (0..pair_count(n)).collect() }
    }

    pub fn from_map(n: usize, map: Vec<usize>) -> Result<Self> {
        let size = pair_count(n);
        if map.len() != size {
            return Err(Error::SizeMismatch(format!("{} images for {size} pairs", map.len())));
        }
        let mut seen = vec![false; size];
        for &v in &map {
            if v >= size {
                return Err(Error::IndexOutOfRange { index: v + 1, len: size });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateIndex(v + 1));
            }
        }
        Ok(PairPermutation { n, map })
    }

    /// Builds a permutation from cycles of 1-based pair numbers.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let size = pair_count(n);
        let mut map: Vec<usize> = (0..size).collect();
        let mut touched = vec![false; size];
        for cycle in cycles {
            for &v in cycle {
                if v == 0 || v > size {
                    return Err(Error::IndexOutOfRange { index: v, len: size });
                }
                if std::mem::replace(&mut touched[v - 1], true) {
                    return Err(Error::DuplicateIndex(v));
                }
            }
            for k in 0..cycle.len() {
                map[cycle[k] - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(PairPermutation { n, map })
    }

    /// Parses cycle notation such as `(1,3)(2,4,5)`; `()` or `id` is the
    /// identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "id" || t.is_empty() {
            return Ok(Self::identity(n));
        }
        let mut cycles = Vec::new();
        for chunk in t.split(')') {
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Format(format!("cycle notation {text:?}")))?;
            if body.is_empty() {
                continue;
            }
            let cycle: Vec<usize> = body
                .split(',')
                .map(|v| v.parse::<usize>().map_err(|_| Error::Format(format!("cycle notation {text:?}"))))
                .collect::<Result<_>>()?;
            cycles.push(cycle);
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &PairPermutation) -> PairPermutation {
        assert_eq!(self.n, other.n);
        PairPermutation { n: self.n, map: other.map.iter().map(|&s| self.map[s]).collect() }
    }

    pub fn inverse(&self) -> PairPermutation {
        let mut inv = vec![0; self.map.len()];
        for (s, &t) in self.map.iter().enumerate() {
            inv[t] = s;
        }
        PairPermutation { n: self.n, map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(s, &t)| s == t)
    }

    /// Non-trivial cycles, 1-based, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cycle.push(s + 1);
                s = self.map[s];
            }
            out.push(cycle);
        }
        out
    }

    /// Distances relabeled through the permutation: `out[S] = values[phi(S)]`.
    pub fn pull_back(&self, values: &[QuadScalar]) -> Vec<QuadScalar> {
        self.map.iter().map(|&t| values[t].clone()).collect()
    }
}

impl fmt::Display for PairPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairPermutation[n={}; {self}]", self.n)
    }
}

/// `phi_pi({i,j}) = {pi(i), pi(j)}` for a permutation `pi` of `0..n`.
pub fn induced_from_point_permutation(pi: &[usize]) -> Result<PairPermutation> {
    let n = pi.len();
    let mut seen = vec![false; n];
    for &v in pi {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v + 1, len: n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::DuplicateIndex(v + 1));
        }
    }
    let map = pairs(n).into_iter().map(|(i, j)| pair_index(n, pi[i], pi[j])).collect();
    Ok(PairPermutation { n, map })
}

/// Generators of `H`: images of the transposition `(1 2)` and the cycle
/// `(1 2 … n)`.
pub fn point_group_generators(n: usize) -> Vec<PairPermutation> {
    if n < 3 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    vec![
        induced_from_point_permutation(&swap).expect("valid permutation"),
        induced_from_point_permutation(&cycle).expect("valid permutation"),
    ]
}

/// Stabilizer of a labeled distance function: the product of the symmetric
/// groups on the classes of pairs with equal value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub n: usize,
    /// Classes of 0-based pair indices with equal value, in order of first
    /// occurrence.
    pub classes: Vec<Vec<usize>>,
    pub generators: Vec<PairPermutation>,
}

impl Stabilizer {
    pub fn trivial(n: usize) -> Self {
        Stabilizer { n, classes: (0..pair_count(n)).map(|s| vec![s]).collect(), generators: Vec::new() }
    }

    pub fn order(&self) -> u128 {
        self.classes.iter().map(|c| factorial(c.len())).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Equal-value classes of `values` (indexed by pair) and, per class of size
/// at least two, the transposition of its first two members and the full
/// class cycle.
pub fn stabilizer_of_values(n: usize, values: &[QuadScalar]) -> Stabilizer {
    let mut by_value: BTreeMap<&QuadScalar, Vec<usize>> = BTreeMap::new();
    for (s, v) in values.iter().enumerate() {
        by_value.entry(v).or_default().push(s);
    }
    let mut classes: Vec<Vec<usize>> = by_value.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    let mut generators = Vec::new();
    for c in &classes {
        if c.len() < 2 {
            continue;
        }
        let one_based: Vec<usize> = c.iter().map(|s| s + 1).collect();
        generators.push(PairPermutation::from_cycles(n, &[one_based[..2].to_vec()]).expect("valid cycle"));
        if c.len() > 2 {
            generators.push(PairPermutation::from_cycles(n, &[one_based]).expect("valid cycle"));
        }
    }
    Stabilizer { n, classes, generators }
}

pub fn distance_stabilizer(p: &PointConfiguration) -> Stabilizer {
    let t = p.distance_table();
    stabilizer_of_values(t.n, &t.values)
}

const MAX_PAIRS: usize = 10;

type Perm = [u8; MAX_PAIRS];

fn rank_of(p: &Perm, len: usize, fact: &[u32]) -> u32 {
    let mut r = 0;
    for i in 0..len {
        let smaller = (i + 1..len).filter(|&j| p[j] < p[i]).count() as u32;
        r += smaller * fact[len - 1 - i];
    }
    r
}

fn unrank(mut r: u32, len: usize, fact: &[u32]) -> Perm {
    let mut avail: Vec<u8> = (0..len as u8).collect();
    let mut p = [0u8; MAX_PAIRS];
    for (i, slot) in p.iter_mut().enumerate().take(len) {
        let f = fact[len - 1 - i];
        let k = (r / f) as usize;
        r %= f;
        *slot = avail.remove(k);
    }
    p
}

fn to_array(phi: &PairPermutation) -> Perm {
    let mut p = [0u8; MAX_PAIRS];
    for (s, &t) in phi.map.iter().enumerate() {
        p[s] = t as u8;
    }
    p
}

/// Decomposition of the full permutation group of the pairs into double
/// cosets `G psi H`.
#[derive(Clone, Debug)]
pub struct DoubleCosetDecomposition {
    pub n: usize,
    pub g_generators: Vec<PairPermutation>,
    pub h_generators: Vec<PairPermutation>,
    /// Lowest-rank element of each double coset; the identity comes first.
    pub representatives: Vec<PairPermutation>,
    pub sizes: Vec<u64>,
    labels: Vec<u32>,
    fact: Vec<u32>,
}

impl DoubleCosetDecomposition {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the double coset containing `psi`.
    pub fn coset_index_of(&self, psi: &PairPermutation) -> usize {
        let len = pair_count(self.n);
        self.labels[rank_of(&to_array(psi), len, &self.fact) as usize] as usize
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }
}

/// Exhaustive sweep over all `C(n,2)!` permutations of the pairs, marking
/// each double coset by breadth-first closure under left multiplication by
/// `g` and right multiplication by `h`.
pub fn double_cosets(n: usize, g: &[PairPermutation], h: &[PairPermutation]) -> Result<DoubleCosetDecomposition> {
    let len = pair_count(n);
    if len > MAX_PAIRS {
        return Err(Error::TooLarge(format!(
            "double cosets need a sweep over all {len}! permutations of the pairs; only n <= 5 is supported"
        )));
    }
    if let Some(bad) = g.iter().chain(h).find(|p| p.n != n) {
        return Err(Error::SizeMismatch(format!("generator for n = {} used with n = {n}", bad.n)));
    }
    let fact: Vec<u32> = (0..=len).map(|k| factorial(k) as u32).collect();
    let total = fact[len] as usize;
    let ga: Vec<Perm> = g.iter().map(to_array).collect();
    let ha: Vec<Perm> = h.iter().map(to_array).collect();
    let mut labels = vec![u32::MAX; total];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    let mut queue: VecDeque<Perm> = VecDeque::new();
    for start in 0..total {
        if labels[start] != u32::MAX {
            continue;
        }
        let label = representatives.len() as u32;
        let first = unrank(start as u32, len, &fact);
        representatives.push(PairPermutation { n, map: first[..len].iter().map(|&v| v as usize).collect() });
        labels[start] = label;
        queue.push_back(first);
        let mut size = 1u64;
        while let Some(x) = queue.pop_front() {
            let mut visit = |y: Perm| {
                let r = rank_of(&y, len, &fact) as usize;
                if labels[r] == u32::MAX {
                    labels[r] = label;
                    size += 1;
                    queue.push_back(y);
                }
            };
            for gp in &ga {
                // g ∘ x
                let mut y = [0u8; MAX_PAIRS];
                for s in 0..len {
                    y[s] = gp[x[s] as usize];
                }
                visit(y);
            }
            for hp in &ha {
                // x ∘ h
                let mut y = [0u8; MAX_PAIRS];
                for s in 0..len {
                    y[s] = x[hp[s] as usize];
                }
                visit(y);
            }
        }
        sizes.push(size);
    }
    Ok(DoubleCosetDecomposition {
        n,
        g_generators: g.to_vec(),
        h_generators: h.to_vec(),
        representatives,
        sizes,
        labels,
        fact,
    })
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Use the trivial group in place of the distance stabilizer.
    pub trivial_stabilizer: bool,
    /// Maximum number of candidate minors examined per representative.
    pub budget: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { trivial_stabilizer: false, budget: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive(String),
    NotApplicable(String),
}

/// A minor of the symbolic relation matrix used as an ideal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorRecord {
    /// 1-based rows and columns.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub polynomial: String,
}

/// Evidence for one non-trivial double coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetWitness {
    pub representative: String,
    pub coset_size: u64,
    /// Index into [`CertificateReport::minors`], when a minor was found.
    pub minor: Option<usize>,
    /// The minor evaluated at the configuration's distances (always zero).
    pub value: Option<String>,
    /// The permuted minor evaluated at the configuration's distances.
    pub permuted_value: Option<String>,
    pub candidates_tried: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub n: usize,
    pub m: usize,
    pub stabilizer_order: String,
    pub g_generators: Vec<String>,
    pub h_generators: Vec<String>,
    pub double_cosets: usize,
    pub coset_sizes: Vec<u64>,
    pub minors: Vec<MinorRecord>,
    pub witnesses: Vec<CosetWitness>,
}

impl CertificateReport {
    fn not_applicable(n: usize, m: usize, reason: String) -> Self {
        CertificateReport {
            verdict: Verdict::NotApplicable(reason),
            n,
            m,
            stabilizer_order: String::new(),
            g_generators: Vec::new(),
            h_generators: Vec::new(),
            double_cosets: 0,
            coset_sizes: Vec::new(),
            minors: Vec::new(),
            witnesses: Vec::new(),
        }
    }
}

/// Tries to certify that `p` is determined by its distance spectrum.
///
/// For every non-trivial double coset representative `psi`, searches the
/// `(m+1)`-minors `F` of the symbolic relation matrix for one with
/// `psi(F)(d) != 0`. Each minor lies in the ideal of relations, and a
/// non-zero value of `psi(F)` at the realizable distances `d` shows
/// `psi(F)` is not in that ideal. If every minor vanishes at `d ∘ psi`,
/// the permuted distances satisfy all relations and no ideal element can
/// separate them, so the result is inconclusive for that coset.
pub fn certify_reconstructible(p: &PointConfiguration, options: &CertifyOptions) -> Result<CertificateReport> {
    let n = p.n();
    let m = p.dim();
    if m < 2 || m + 2 > n {
        return Ok(CertificateReport::not_applicable(n, m, format!("needs 2 <= m <= n-2 (n = {n}, m = {m})")));
    }
    if pair_count(n) > MAX_PAIRS {
        return Err(Error::TooLarge(format!(
            "certification sweeps all C(n,2)! pair permutations; only n <= 5 is supported (n = {n})"
        )));
    }
    let table = p.distance_table();
    let rank = table.relation_matrix().rank();
    if rank != m {
        return Err(Error::RankDeficient { rank, expected: m });
    }
    let stabilizer = if options.trivial_stabilizer { Stabilizer::trivial(n) } else { stabilizer_of_values(n, &table.values) };
    let h = point_group_generators(n);
    let dc = double_cosets(n, &stabilizer.generators, &h)?;
    let symbolic = relideal::symbolic_relation_matrix(n)?;
    let index_sets = subsets(n - 1, m + 1);
    let candidates: Vec<(&Vec<usize>, &Vec<usize>)> =
        index_sets.iter().flat_map(|r| index_sets.iter().map(move |c| (r, c))).collect();
    let base = table.relation_matrix().entries;
    let mut minors: Vec<MinorRecord> = Vec::new();
    let mut minor_ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut failure: Option<String> = None;
    for (psi, &size) in dc.representatives.iter().zip(&dc.sizes).skip(1) {
        let permuted = DistanceTable { n, field: table.field, values: psi.pull_back(&table.values) };
        let matrix = permuted.relation_matrix().entries;
        let mut found = None;
        let mut tried = 0;
        for (k, (rows, cols)) in candidates.iter().enumerate() {
            if tried >= options.budget {
                break;
            }
            tried += 1;
            let value = linalg::det(&submatrix(&matrix, rows, cols));
            if !value.is_zero() {
                found = Some((k, value));
                break;
            }
        }
        let mut witness = CosetWitness {
            representative: psi.to_string(),
            coset_size: size,
            minor: None,
            value: None,
            permuted_value: None,
            candidates_tried: tried,
        };
        match found {
            Some((k, value)) => {
                let (rows, cols) = candidates[k];
                let id = *minor_ids.entry(k).or_insert_with(|| {
                    let poly: PairPolynomial =
                        relideal::minor(&symbolic, rows, cols).expect("indices in range");
                    minors.push(MinorRecord {
                        rows: rows.iter().map(|r| r + 1).collect(),
                        cols: cols.iter().map(|c| c + 1).collect(),
                        polynomial: poly.to_string(),
                    });
                    minors.len() - 1
                });
                witness.minor = Some(id);
                witness.value = Some(linalg::det(&submatrix(&base, rows, cols)).canonical());
                witness.permuted_value = Some(value.canonical());
            }
            None => {
                if failure.is_none() {
                    failure = Some(if tried >= options.budget && tried < candidates.len() {
                        format!("candidate budget exhausted for representative {psi}")
                    } else {
                        format!(
                            "every ({0}x{0})-minor vanishes at the distances permuted by {psi}; \
                             they satisfy all relations, so no separating ideal element exists",
                            m + 1
                        )
                    });
                }
            }
        }
        witnesses.push(witness);
    }
    Ok(CertificateReport {
        verdict: match failure {
            None => Verdict::Certified,
            Some(reason) => Verdict::Inconclusive(reason),
        },
        n,
        m,
        stabilizer_order: stabilizer.order().to_string(),
        g_generators: stabilizer.generators.iter().map(|g| g.to_string()).collect(),
        h_generators: h.iter().map(|g| g.to_string()).collect(),
        double_cosets: dc.len(),
        coset_sizes: dc.sizes.clone(),
        minors,
        witnesses,
    })
}

fn submatrix(m: &linalg::ScalarMatrix, rows: &[usize], cols: &[usize]) -> linalg::ScalarMatrix {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}
