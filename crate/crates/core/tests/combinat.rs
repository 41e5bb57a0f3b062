use point_spectra::combinat::{binomial, pair_count, pair_index, pairs, parse_index_list, permutations, sorting_sign, subsets};

#[test]
fn pair_numbering_matches_enumeration() {
    for n in 2..9 {
        for (k, &(i, j)) in pairs(n).iter().enumerate() {
            assert_eq!(pair_index(n, i, j), k);
            assert_eq!(pair_index(n, j, i), k);
        }
        assert_eq!(pairs(n).len(), pair_count(n));
    }
}

#[test]
fn subsets_are_lexicographic_and_complete() {
    assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    for n in 0..8 {
        for k in 0..=n + 1 {
            assert_eq!(subsets(n, k).len(), binomial(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn permutations_and_signs() {
    assert_eq!(permutations(4).len(), 24);
    assert_eq!(sorting_sign(&[0, 1, 2]), 1);
    assert_eq!(sorting_sign(&[1, 0, 2]), -1);
    assert_eq!(sorting_sign(&[2, 0, 1]), 1);
}

#[test]
fn index_lists_are_one_based() {
    assert_eq!(parse_index_list("1,3,4"), Some(vec![0, 2, 3]));
    assert_eq!(parse_index_list("0,1"), None);
    assert_eq!(parse_index_list("a"), None);
}
