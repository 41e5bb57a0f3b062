mod common;

use point_spectra::config::histogram;
use point_spectra::io::{parse_config, parse_spectrum_csv, print_config, spectrum_csv};
use point_spectra::{fixtures, DistanceTable, Error, PointConfiguration, QuadScalar, Spectrum, SpectrumKind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kite() -> PointConfiguration {
    PointConfiguration::from_ints(&[vec![0, 0], vec![3, 1], vec![3, -1], vec![4, 0]]).unwrap()
}

fn ints(values: &[i64]) -> Vec<QuadScalar> {
    values.iter().map(|&v| QuadScalar::from_int(v, 1)).collect()
}

#[test]
fn squared_distances() {
    let p = kite();
    assert_eq!(p.squared_distance(0, 3).unwrap(), QuadScalar::from_int(16, 1));
    assert_eq!(p.squared_distance(1, 1), Err(Error::DuplicateIndex(2)));
    assert!(matches!(p.squared_distance(0, 4), Err(Error::IndexOutOfRange { .. })));
    let dup = PointConfiguration::from_ints(&[vec![1, 1], vec![1, 1]]).unwrap();
    assert!(dup.squared_distance(0, 1).unwrap().is_zero());
}

#[test]
fn spectra() {
    assert_eq!(kite().distance_spectrum().unwrap().values(), ints(&[2, 2, 4, 10, 10, 16]).as_slice());
    let seg = PointConfiguration::from_ints(&[vec![0], vec![5]]).unwrap();
    assert_eq!(seg.distance_spectrum().unwrap().values(), ints(&[25]).as_slice());
    let one = PointConfiguration::from_ints(&[vec![0, 0]]).unwrap();
    assert!(one.distance_spectrum().is_err());
    assert!(one.volume_spectrum().is_err());
}

#[test]
fn one_dimensional_volumes_are_distances() {
    let p = PointConfiguration::from_ints(&[vec![0], vec![2], vec![7], vec![-3]]).unwrap();
    let mut v = p.volume_spectrum().unwrap().values().to_vec();
    v.sort();
    assert_eq!(v, p.distance_spectrum().unwrap().values());
}

#[test]
fn volumes_and_arity() {
    let p = PointConfiguration::from_ints(&[vec![0, 1], vec![1, 1], vec![1, 2], vec![3, 2], vec![5, 2]]).unwrap();
    assert_eq!(p.signed_volume(&[0, 2, 4]).unwrap(), QuadScalar::from_int(-4, 1));
    assert_eq!(p.signed_volume(&[2, 3, 4]).unwrap(), QuadScalar::zero(1));
    assert_eq!(p.signed_volume(&[2, 0, 4]).unwrap(), QuadScalar::from_int(4, 1));
    assert_eq!(p.signed_volume(&[0, 1]), Err(Error::WrongArity { expected: 3, got: 2 }));
    assert_eq!(p.signed_volume(&[0, 1, 1]), Err(Error::DuplicateIndex(2)));
}

#[test]
fn right_triangle_gram() {
    let p = PointConfiguration::from_ints(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    let g = p.gram_matrix(2).unwrap();
    // offsets (0,-1) and (1,-1)
    assert_eq!(g, vec![ints(&[1, 1]), ints(&[1, 2])]);
    assert_eq!(g, p.direct_gram_matrix(2).unwrap());
}

#[test]
fn relation_rank() {
    let collinear = PointConfiguration::from_ints(&[vec![0, 0], vec![1, 1], vec![3, 3], vec![-2, -2]]).unwrap();
    assert_eq!(collinear.relation_matrix().rank(), 1);
    assert_eq!(kite().relation_matrix().rank(), 2);
    assert!(kite().generic_rank_check());
    let table = kite().distance_table();
    let mut partial: Vec<Option<QuadScalar>> = table.values.iter().cloned().map(Some).collect();
    partial[3] = None;
    assert_eq!(DistanceTable::from_partial(4, 1, &partial), Err(Error::MissingDistance(2, 3)));
}

#[test]
fn non_euclidean_form() {
    let p = PointConfiguration::from_ints(&[vec![0, 0], vec![1, 2]])
        .unwrap()
        .with_form_weights(ints(&[1, -1]))
        .unwrap();
    assert_eq!(p.squared_distance(0, 1).unwrap(), QuadScalar::from_int(-3, 1));
    assert_eq!(p.gram_matrix(1).unwrap(), p.direct_gram_matrix(1).unwrap());
}

#[test]
fn triangle_invariants() {
    let eq = PointConfiguration::new(
        2,
        3,
        vec![
            vec![QuadScalar::zero(3), QuadScalar::zero(3)],
            vec![QuadScalar::one(3), QuadScalar::zero(3)],
            vec![QuadScalar::from_frac(1, 2, 3), QuadScalar::parse("1/2*sqrt(3)", 3).unwrap()],
        ],
    )
    .unwrap();
    let inv = eq.triangle_invariants().unwrap();
    for (got, want) in inv.lengths.iter().zip([3.0, 3.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let t = PointConfiguration::from_ints(&[vec![0, 0], vec![3, 0], vec![0, 4]]).unwrap();
    let inv = t.triangle_invariants().unwrap();
    for (got, want) in inv.lengths.iter().zip([12.0, 47.0, 60.0]) {
        assert!((got - want).abs() < 1e-9);
    }
    assert_eq!(inv.squared[2], QuadScalar::from_int(3600, 1));
    let point = PointConfiguration::from_ints(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
    assert_eq!(point.triangle_invariants().unwrap().lengths, [0.0, 0.0, 0.0]);
    assert_eq!(kite().triangle_invariants(), Err(Error::WrongN { expected: 3, got: 4 }));
}

#[test]
fn histograms() {
    let s = Spectrum::new(SpectrumKind::Distance, ints(&[4, 1, 1]));
    let h = histogram(&s, 1.0, false).unwrap();
    assert_eq!(h.counts, vec![(1.0, 2), (4.0, 1)]);
    let empty = Spectrum::new(SpectrumKind::Distance, vec![]);
    assert!(histogram(&empty, 1.0, false).unwrap().counts.is_empty());
    let h = histogram(&kite().distance_spectrum().unwrap(), 0.5, true).unwrap();
    assert_eq!(h.counts, vec![(1.0, 2), (2.0, 1), (3.0, 2), (4.0, 1)]);
    assert_eq!(h.total(), 6);
    assert_eq!(histogram(&s, 0.0, false), Err(Error::NonPositiveBin(0.0)));
}

#[test]
fn irrational_distance() {
    let p = fixtures::combined_twin_p();
    assert_eq!(p.squared_distance(1, 2).unwrap(), QuadScalar::from_int(108, 2));
    assert_eq!(p.squared_distance(0, 3).unwrap(), QuadScalar::from_int(9, 2));
}

#[test]
fn csv_rejects_bad_lines() {
    let err = parse_spectrum_csv("value,approx\n1\nfoo\n", SpectrumKind::Distance).unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
    let err = parse_spectrum_csv("sqrt(2)\nsqrt(3)\n", SpectrumKind::Distance).unwrap_err();
    assert!(err.to_string().contains("line 2") && err.to_string().contains("mixed"), "{err}");
}

#[test]
fn config_json_errors() {
    assert!(parse_config("{\"dim\": 2, \"points\": [[\"1\"]]}").is_err());
    assert!(parse_config("{\"dim\": 1, \"points\": [[\"1\"]], \"extra\": 0}").is_err());
    assert!(parse_config("not json").is_err());
}

fn seeded(seed: u64, n: usize, m: usize) -> PointConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common::random_config(&mut rng, n, m, [1, 2, 3][(seed % 3) as usize])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relation_rank_is_bounded(seed in any::<u64>(), n in 2usize..7, m in 1usize..4) {
        let p = seeded(seed, n, m);
        prop_assert!(p.relation_matrix().rank() <= (n - 1).min(m));
    }

    #[test]
    fn swapping_indices_flips_sign(seed in any::<u64>(), m in 1usize..4, a in 0usize..8, b in 0usize..8) {
        let p = seeded(seed, m + 2, m);
        let mut idx: Vec<usize> = (0..=m).collect();
        let (a, b) = (a % (m + 1), b % (m + 1));
        prop_assume!(a != b);
        let v = p.signed_volume(&idx).unwrap();
        idx.swap(a, b);
        prop_assert_eq!(p.signed_volume(&idx).unwrap(), -&v);
    }

    #[test]
    fn gram_from_distances_is_direct(seed in any::<u64>(), n in 2usize..6, m in 1usize..4, base in 0usize..6) {
        let p = seeded(seed, n, m);
        let base = base % n;
        prop_assert_eq!(p.gram_matrix(base).unwrap(), p.direct_gram_matrix(base).unwrap());
    }

    #[test]
    fn spectra_ignore_labels(seed in any::<u64>(), n in 3usize..6) {
        let p = seeded(seed, n, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let q = p.permuted(&common::random_permutation(&mut rng, n));
        prop_assert_eq!(p.distance_spectrum().unwrap(), q.distance_spectrum().unwrap());
        prop_assert_eq!(p.volume_spectrum().unwrap(), q.volume_spectrum().unwrap());
        let t: DistanceTable = p.distance_table();
        prop_assert_eq!(t.spectrum(), p.distance_spectrum().unwrap());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..6, m in 1usize..4) {
        let p = seeded(seed, n, m);
        prop_assert_eq!(parse_config(&print_config(&p)).unwrap(), p);
    }

    #[test]
    fn csv_round_trip(seed in any::<u64>(), n in 3usize..6) {
        let p = seeded(seed, n, 2);
        for s in [p.distance_spectrum().unwrap(), p.volume_spectrum().unwrap()] {
            let back: Spectrum = parse_spectrum_csv(&spectrum_csv(&s), s.kind).unwrap();
            prop_assert_eq!(back.values(), s.values());
        }
    }

    #[test]
    fn histogram_counts_everything(seed in any::<u64>(), n in 2usize..7, bin in 0.1f64..5.0) {
        let s = seeded(seed, n, 2).distance_spectrum().unwrap();
        prop_assert_eq!(histogram(&s, bin, false).unwrap().total(), s.len());
        prop_assert_eq!(histogram(&s, bin, true).unwrap().total(), s.len());
    }
}
