//! Polynomials in the pair variables `D{i,j}`, minors of the symbolic
//! relation matrix `(D{i,j} - D{i,n} - D{j,n})`, and the monomial criterion
//! for the ideal those minors generate.
//!
//! Variables are identified by their 0-based pair index (lexicographic
//! order, see [`crate::combinat`]); text forms use 1-based point labels.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{pair_count, pair_index, pairs, permutations, subsets};
use crate::error::{Error, Result};
use crate::permact::PairPermutation;
use crate::scalar::QuadScalar;

/// Sorted list of pair indices, with repetition.
pub type Monomial = Vec<usize>;

/// Sparse polynomial with rational coefficients in the `C(n,2)` pair
/// variables of `n` points. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PairPolynomial {
    pub fn zero(n: usize) -> Self {
        PairPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable `D{i,j}` (0-based, `i != j`).
    pub fn variable(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![pair_index(n, i, j)], BigRational::one());
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// Coefficient of a monomial (sorted pair indices); zero if absent.
    pub fn coefficient(&self, monomial: &[usize]) -> BigRational {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, monomial: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_n(&self, other: &Self) {
        assert_eq!(self.n, other.n, "pair polynomials over different point counts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_n(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_n(other);
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Substitution `D_S -> D_{phi(S)}`.
    pub fn apply_pair_permutation(&self, phi: &PairPermutation) -> Result<Self> {
        if phi.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "permutation of pairs of {} points applied to a polynomial in pairs of {} points",
                phi.n(),
                self.n
            )));
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut image: Monomial = m.iter().map(|&s| phi.image(s)).collect();
            image.sort_unstable();
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Value at `D_S = values[S]`.
    pub fn evaluate(&self, values: &[QuadScalar]) -> Result<QuadScalar> {
        if values.len() != pair_count(self.n) {
            return Err(Error::SizeMismatch(format!(
                "{} values for {} pair variables",
                values.len(),
                pair_count(self.n)
            )));
        }
        let field = values.first().map_or(1, QuadScalar::field);
        if let Some(v) = values.iter().find(|v| v.field() != field) {
            return Err(Error::MixedField(field, v.field()));
        }
        let mut acc = QuadScalar::zero(field);
        for (m, c) in &self.terms {
            let mut t = QuadScalar::from_rational(c.clone(), field);
            for &s in m {
                t = &t * &values[s];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Parses the text form written by `Display`, e.g.
    /// `D{1,2}-D{1,4}-2*D{2,4}*D{3,4}+1/2`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bad = |reason: &str| Error::Format(format!("polynomial {text:?}: {reason}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Self::zero(n));
        }
        // split into signed terms at top-level + and - (not inside braces)
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        let mut negative = false;
        for ch in compact.chars() {
            match ch {
                '{' => depth += 1,
                '}' => depth = depth.saturating_sub(1),
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                let prev_is_sign = cur.is_empty();
                if !prev_is_sign {
                    terms.push((negative, std::mem::take(&mut cur)));
                    negative = false;
                }
                if ch == '-' {
                    negative = !negative;
                }
                continue;
            }
            cur.push(ch);
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((negative, cur));
        let mut out = Self::zero(n);
        for (negative, body) in terms {
            let mut coeff = BigRational::one();
            let mut mono = Vec::new();
            for factor in body.split('*') {
                if let Some(inner) = factor.strip_prefix("D{").and_then(|f| f.strip_suffix('}')) {
                    let (i, j) = inner.split_once(',').ok_or_else(|| bad("pair needs two indices"))?;
                    let i: usize = i.parse().map_err(|_| bad("bad index"))?;
                    let j: usize = j.parse().map_err(|_| bad("bad index"))?;
                    if i == 0 || j == 0 || i > n || j > n {
                        return Err(Error::IndexOutOfRange { index: i.max(j), len: n });
                    }
                    if i == j {
                        return Err(Error::DuplicateIndex(i));
                    }
                    mono.push(pair_index(n, i - 1, j - 1));
                } else {
                    let c = QuadScalar::parse(factor, 1).map_err(|_| bad("bad coefficient"))?;
                    coeff *= c.rational_part().clone();
                }
            }
            if negative {
                coeff = -coeff;
            }
            mono.sort_unstable();
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

fn pair_label(n: usize, s: usize) -> String {
    let (i, j) = pairs(n)[s];
    format!("D{{{},{}}}", i + 1, j + 1)
}

fn rational_text(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PairPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if negative {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let vars: Vec<String> = m.iter().map(|&s| pair_label(self.n, s)).collect();
            if vars.is_empty() {
                f.write_str(&rational_text(&abs))?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_text(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PairPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairPolynomial({self})")
    }
}

pub type PolyMatrix = Vec<Vec<PairPolynomial>>;

/// The `(n-1) x (n-1)` matrix `(D{i,j} - D{i,n} - D{j,n})` with `D{i,i} = 0`.
pub fn symbolic_relation_matrix(n: usize) -> Result<PolyMatrix> {
    if n < 2 {
        return Err(Error::ArityMismatch("relation matrix needs n >= 2".into()));
    }
    let last = n - 1;
    Ok((0..last)
        .map(|i| {
            (0..last)
                .map(|j| {
                    let dij = if i == j { PairPolynomial::zero(n) } else { PairPolynomial::variable(n, i, j) };
                    dij.sub(&PairPolynomial::variable(n, i, last)).sub(&PairPolynomial::variable(n, j, last))
                })
                .collect()
        })
        .collect())
}

/// Determinant of the submatrix on `rows x cols` (0-based), by Laplace
/// expansion along rows memoized on the remaining column set.
pub fn minor(matrix: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Result<PairPolynomial> {
    if rows.len() != cols.len() {
        return Err(Error::WrongArity { expected: rows.len(), got: cols.len() });
    }
    let size = matrix.len();
    for &i in rows.iter().chain(cols) {
        if i >= size {
            return Err(Error::IndexOutOfRange { index: i + 1, len: size });
        }
    }
    let n = matrix.first().and_then(|r| r.first()).map_or(2, PairPolynomial::n);
    if cols.len() > 63 {
        return Err(Error::TooLarge("minor larger than 63 columns".into()));
    }
    let mut memo: HashMap<u64, PairPolynomial> = HashMap::new();
    let full: u64 = if cols.is_empty() { 0 } else { u64::MAX >> (64 - cols.len()) };
    Ok(expand(matrix, rows, cols, full, n, &mut memo))
}

fn expand(
    matrix: &PolyMatrix,
    rows: &[usize],
    cols: &[usize],
    mask: u64,
    n: usize,
    memo: &mut HashMap<u64, PairPolynomial>,
) -> PairPolynomial {
    if mask == 0 {
        return PairPolynomial::constant(n, BigRational::one());
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let row = rows[rows.len() - mask.count_ones() as usize];
    let mut acc = PairPolynomial::zero(n);
    let mut position = 0;
    for (k, &c) in cols.iter().enumerate() {
        if mask & (1 << k) == 0 {
            continue;
        }
        let entry = &matrix[row][c];
        if !entry.is_zero() {
            let rest = expand(matrix, rows, cols, mask & !(1 << k), n, memo);
            let term = entry.mul(&rest);
            acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// A degree-`r` monomial given by its pair factors (0-based points).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialSpec {
    pub factors: Vec<(usize, usize)>,
}

impl MonomialSpec {
    pub fn new(factors: Vec<(usize, usize)>) -> Self {
        let mut factors: Vec<(usize, usize)> = factors.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        factors.sort_unstable();
        MonomialSpec { factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    fn validate(&self, n: usize) -> Result<()> {
        for &(i, j) in &self.factors {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j + 1, len: n });
            }
            if i == j {
                return Err(Error::DuplicateIndex(i + 1));
            }
        }
        Ok(())
    }

    /// Sorted pair indices for `n` points.
    pub fn monomial(&self, n: usize) -> Monomial {
        let mut m: Monomial = self.factors.iter().map(|&(i, j)| pair_index(n, i, j)).collect();
        m.sort_unstable();
        m
    }

    /// Lexicographically smallest image under relabeling of the points.
    pub fn canonical(&self, n: usize) -> MonomialSpec {
        permutations(n)
            .into_iter()
            .map(|p| MonomialSpec::new(self.factors.iter().map(|&(i, j)| (p[i], p[j])).collect()))
            .min()
            .unwrap_or_else(|| self.clone())
    }
}

impl fmt::Display for MonomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(i, j)| format!("D{{{},{}}}", i + 1, j + 1)).collect();
        f.write_str(&parts.join("*"))
    }
}

fn check_degree(t: &MonomialSpec, r: usize, n: usize) -> Result<()> {
    if t.degree() != r {
        return Err(Error::DegreeMismatch { expected: r, got: t.degree() });
    }
    if r == 0 || r >= n {
        return Err(Error::ArityMismatch(format!("degree {r} outside 1..={}", n.saturating_sub(1))));
    }
    t.validate(n)
}

/// True iff every point index occurs at most twice among the factors.
pub fn monomial_admissible(t: &MonomialSpec, r: usize, n: usize) -> Result<bool> {
    check_degree(t, r, n)?;
    let mut count = vec![0usize; n];
    for &(i, j) in &t.factors {
        count[i] += 1;
        count[j] += 1;
    }
    Ok(count.iter().all(|&c| c <= 2))
}

/// Union of the supports of all `r x r` minors of the symbolic relation
/// matrix for `n` points.
#[derive(Debug, Clone)]
pub struct MinorSupport {
    pub n: usize,
    pub r: usize,
    monomials: BTreeSet<Monomial>,
}

impl MinorSupport {
    pub fn compute(n: usize, r: usize) -> Result<Self> {
        if n > 6 {
            return Err(Error::TooLarge(format!("minor expansion limited to n <= 6, got {n}")));
        }
        if r == 0 || r >= n {
            return Err(Error::ArityMismatch(format!("degree {r} outside 1..={}", n - 1)));
        }
        let matrix = symbolic_relation_matrix(n)?;
        let mut monomials = BTreeSet::new();
        let index_sets = subsets(n - 1, r);
        for rows in &index_sets {
            for cols in &index_sets {
                let p = minor(&matrix, rows, cols)?;
                monomials.extend(p.terms.into_keys());
            }
        }
        Ok(MinorSupport { n, r, monomials })
    }

    pub fn contains(&self, t: &MonomialSpec) -> bool {
        self.monomials.contains(&t.monomial(self.n))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Whether `t` occurs with non-zero coefficient in some `r x r` minor of the
/// symbolic relation matrix (exhaustive expansion, `n <= 6`).
pub fn monomial_occurs_bruteforce(t: &MonomialSpec, r: usize, n: usize) -> Result<bool> {
    if n > 6 {
        return Err(Error::TooLarge(format!("minor expansion limited to n <= 6, got {n}")));
    }
    check_degree(t, r, n)?;
    Ok(MinorSupport::compute(n, r)?.contains(t))
}

/// All degree-`r` monomials in the pair variables of `n` points, one per
/// orbit under relabeling of the points.
pub fn monomial_orbit_representatives(n: usize, r: usize) -> Vec<MonomialSpec> {
    let all = pairs(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // multisets of size r drawn from the pair list: non-decreasing index tuples
    let mut idx = vec![0usize; r];
    loop {
        let spec = MonomialSpec::new(idx.iter().map(|&k| all[k]).collect());
        let canon = spec.canonical(n);
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
        let mut k = r;
        while k > 0 && idx[k - 1] == all.len() - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for t in k..r {
            idx[t] = idx[k - 1];
        }
    }
    out.sort();
    out
}

/// Product `D{1,2} D{2,3} … D{n-1,n}` of a Hamiltonian path.
pub fn path_monomial(n: usize) -> MonomialSpec {
    MonomialSpec::new((0..n - 1).map(|i| (i, i + 1)).collect())
}

/// `2 * (-1)^(n-1)`.
pub fn path_coefficient(n: usize) -> BigRational {
    let sign = if n.is_multiple_of(2) { -2 } else { 2 };
    BigRational::from_integer(BigInt::from(sign))
}
