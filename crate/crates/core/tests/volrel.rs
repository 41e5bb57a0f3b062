mod common;

use std::collections::{BTreeMap, BTreeSet};

use point_spectra::combinat::{permutations, subsets};
use point_spectra::linalg::{rank, ScalarMatrix};
use point_spectra::volrel::{
    alternating_sum, assigned_alternating_sum, linear_relation_filter, reorder_sign, volume_assignment,
    RelationCheck,
};
use point_spectra::{fixtures, Error, PointConfiguration, QuadScalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sorting_signs() {
    assert_eq!(reorder_sign(&[0, 1, 2]).unwrap(), (vec![0, 1, 2], 1));
    assert_eq!(reorder_sign(&[1, 0, 2]).unwrap(), (vec![0, 1, 2], -1));
    assert_eq!(reorder_sign(&[2, 0, 1]).unwrap(), (vec![0, 1, 2], 1));
    assert_eq!(reorder_sign(&[2, 0, 2]), Err(Error::DuplicateIndex(3)));
}

#[test]
fn line_alternating_sum() {
    let p = PointConfiguration::from_ints(&[vec![3], vec![-1], vec![8]]).unwrap();
    assert!(alternating_sum(&p, &[0, 1, 2]).unwrap().is_zero());
    assert_eq!(alternating_sum(&p, &[0, 1]), Err(Error::WrongArity { expected: 3, got: 2 }));
}

#[test]
fn empty_assignment_is_consistent() {
    assert_eq!(linear_relation_filter(5, 2, &BTreeMap::new()), RelationCheck::Consistent);
}

#[test]
fn negated_area_is_caught() {
    let q = fixtures::area_twin5_q();
    let mut a = volume_assignment(&q).unwrap();
    assert_eq!(linear_relation_filter(5, 2, &a), RelationCheck::Consistent);
    let v = a.get_mut(&vec![0, 1, 2]).unwrap();
    *v = -v.clone();
    assert_eq!(linear_relation_filter(5, 2, &a), RelationCheck::Violated(vec![0, 1, 2, 3]));
    assert_eq!(assigned_alternating_sum(&a, &[0, 1, 2, 3]).unwrap(), QuadScalar::from_int(2, 1));
}

#[test]
fn partial_assignments_skip_unassigned_subsets() {
    let mut a: BTreeMap<Vec<usize>, QuadScalar> = BTreeMap::new();
    a.insert(vec![0, 1, 2], QuadScalar::one(1));
    assert!(assigned_alternating_sum(&a, &[0, 1, 2, 3]).is_none());
    assert_eq!(linear_relation_filter(4, 2, &a), RelationCheck::Consistent);
}

/// A signed permutation of the volume coordinates: coordinate `i` moves to
/// `target[i]` with factor `sign[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct SignedPerm {
    target: Vec<usize>,
    sign: Vec<i8>,
}

fn faces(n: usize, m: usize) -> Vec<Vec<usize>> {
    subsets(n, m + 1)
}

/// Rows are the alternating-sum relations as vectors over the faces.
fn relation_rows(n: usize, m: usize) -> Vec<Vec<i64>> {
    let f = faces(n, m);
    subsets(n, m + 2)
        .into_iter()
        .map(|s| {
            let mut row = vec![0i64; f.len()];
            for k in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &i)| i).collect();
                row[f.iter().position(|x| *x == face).unwrap()] = if k % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

fn to_matrix(rows: &[Vec<i64>]) -> ScalarMatrix {
    rows.iter().map(|r| r.iter().map(|&v| QuadScalar::from_int(v, 1)).collect()).collect()
}

fn preserves(g: &SignedPerm, rows: &[Vec<i64>]) -> bool {
    let base = rank(&to_matrix(rows));
    let mut all = rows.to_vec();
    for r in rows {
        let mut img = vec![0i64; r.len()];
        for (i, &v) in r.iter().enumerate() {
            img[g.target[i]] = g.sign[i] as i64 * v;
        }
        all.push(img);
    }
    rank(&to_matrix(&all)) == base
}

fn induced(n: usize, m: usize) -> BTreeSet<SignedPerm> {
    let f = faces(n, m);
    let mut out = BTreeSet::new();
    for sigma in permutations(n) {
        for eps in [1i8, -1] {
            let mut g = SignedPerm { target: vec![0; f.len()], sign: vec![0; f.len()] };
            for (i, s) in f.iter().enumerate() {
                let image: Vec<usize> = s.iter().map(|&x| sigma[x]).collect();
                let (sorted, sgn) = reorder_sign(&image).unwrap();
                g.target[i] = f.iter().position(|x| *x == sorted).unwrap();
                g.sign[i] = eps * sgn;
            }
            out.insert(g);
        }
    }
    out
}

#[test]
fn relation_symmetries_are_induced_for_four_points() {
    let rows = relation_rows(4, 2);
    let ind = induced(4, 2);
    assert_eq!(ind.len(), 48);
    let mut preserving = 0;
    for target in permutations(4) {
        for mask in 0..16u32 {
            let sign = (0..4).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
            let g = SignedPerm { target: target.clone(), sign };
            if preserves(&g, &rows) {
                preserving += 1;
                assert!(ind.contains(&g), "{g:?}");
            }
        }
    }
    assert_eq!(preserving, ind.len());
}

#[test]
fn relation_symmetries_are_induced_for_five_points() {
    let rows = relation_rows(5, 2);
    let ind = induced(5, 2);
    for g in &ind {
        assert!(preserves(g, &rows));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let generators: Vec<&SignedPerm> = ind.iter().collect();
    for _ in 0..400 {
        // perturb an induced symmetry so that preserving maps are sampled too
        let mut g = generators[rng.gen_range(0..generators.len())].clone();
        if rng.gen_bool(0.5) {
            let (a, b) = (rng.gen_range(0..10), rng.gen_range(0..10));
            g.target.swap(a, b);
        }
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..10);
            g.sign[k] = -g.sign[k];
        }
        assert_eq!(preserves(&g, &rows), ind.contains(&g), "{g:?}");
    }
}

fn seeded(seed: u64, n: usize, m: usize) -> PointConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common::random_config(&mut rng, n, m, [1, 2, 5][(seed % 3) as usize])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realized_volumes_satisfy_relations(seed in any::<u64>(), m in 1usize..4, extra in 0usize..3) {
        let n = m + 2 + extra;
        let p = seeded(seed, n, m);
        for s in subsets(n, m + 2) {
            prop_assert!(alternating_sum(&p, &s).unwrap().is_zero());
        }
        prop_assert_eq!(linear_relation_filter(n, m, &volume_assignment(&p).unwrap()), RelationCheck::Consistent);
    }

    #[test]
    fn sign_rule(seed in any::<u64>(), m in 1usize..4) {
        let p = seeded(seed, m + 1, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx = common::random_permutation(&mut rng, m + 1);
        let (sorted, sign) = reorder_sign(&idx).unwrap();
        let v = p.signed_volume(&sorted).unwrap();
        let expected = if sign > 0 { v } else { -&v };
        prop_assert_eq!(p.signed_volume(&idx).unwrap(), expected);
    }

    #[test]
    fn reorder_sign_is_multiplicative(seed in any::<u64>(), k in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_permutation(&mut rng, k);
        let b = common::random_permutation(&mut rng, k);
        let ab: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
        let s = |x: &[usize]| reorder_sign(x).unwrap().1;
        prop_assert_eq!(s(&ab), s(&a) * s(&b));
    }
}
