//! Index bookkeeping: unordered pairs, k-subsets and permutations.
//!
//! Everything is 0-based. Pairs `{i,j}` of `0..n` are numbered in
//! lexicographic order `{0,1},{0,2},…,{0,n-1},{1,2},…`.

/// Number of unordered pairs of `n` points.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{i,j}` (`i != j`, any order) in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j && i < n && j < n);
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // pairs starting below i: sum_{k<i} (n-1-k)
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let i = i - 1;
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Advances `perm` to the next permutation in lexicographic order; returns
/// false after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Sign of the permutation that sorts `items` (distinct values assumed).
pub fn sorting_sign(items: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            if items[a] > items[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Parses a comma-separated list of 1-based indices into 0-based ones.
pub fn parse_index_list(text: &str) -> Option<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1))
        .collect()
}
