mod common;

use std::cmp::Ordering;

use common::rat;
use point_spectra::scalar::is_square_free;
use point_spectra::{Error, QuadScalar};
use proptest::prelude::*;

fn q(text: &str, d: u32) -> QuadScalar {
    QuadScalar::parse(text, d).unwrap()
}

#[test]
fn conjugate_product_is_one_minus_d() {
    let x = q("1+sqrt(2)", 2);
    let y = q("1-sqrt(2)", 2);
    assert_eq!(&x * &y, QuadScalar::from_int(-1, 2));
}

#[test]
fn square_of_six_root_two() {
    assert_eq!(q("6*sqrt(2)", 2).square(), QuadScalar::from_int(72, 2));
}

#[test]
fn componentwise_addition() {
    assert_eq!(q("3", 5) + q("2*sqrt(5)", 5), q("3+2*sqrt(5)", 5));
}

#[test]
fn comparisons() {
    assert_eq!(q("2", 2).cmp(&q("1+sqrt(2)", 2)), Ordering::Less);
    assert_eq!(q("sqrt(2)", 2).cmp(&q("1", 2)), Ordering::Greater);
    assert_eq!(q("3+2*sqrt(2)", 2).cmp(&q("3+2*sqrt(2)", 2)), Ordering::Equal);
    assert_eq!(q("-7/5+sqrt(2)", 2).signum(), Ordering::Greater);
    assert_eq!(q("-3/2+sqrt(2)", 2).signum(), Ordering::Less);
}

#[test]
fn mixed_fields_are_rejected() {
    let x = q("sqrt(2)", 2);
    let y = q("sqrt(3)", 3);
    assert_eq!(x.checked_add(&y), Err(Error::MixedField(2, 3)));
    assert_eq!(x.try_cmp(&y), Err(Error::MixedField(2, 3)));
    assert!(QuadScalar::parse("sqrt(3)", 2).is_err());
}

#[test]
fn division_by_zero() {
    assert_eq!(q("1", 2).checked_div(&QuadScalar::zero(2)), Err(Error::DivisionByZero));
    let x = q("3-2*sqrt(2)", 2);
    assert_eq!(&(&q("1", 2) / &x) * &x, q("1", 2));
}

#[test]
fn canonical_round_trip() {
    for text in ["0", "-3/4", "6*sqrt(2)", "1/2-5/3*sqrt(2)", "-sqrt(2)", "sqrt(8)", "2.25"] {
        let x = q(text, 2);
        let c = x.canonical();
        assert_eq!(q(&c, 2), x, "{text} -> {c}");
        assert_eq!(QuadScalar::parse_infer(&c).unwrap().to_f64(), x.to_f64());
    }
    assert_eq!(q("sqrt(8)", 2), q("2*sqrt(2)", 2));
    assert_eq!(q("7", 1).canonical(), "7/1+0/1*sqrt(1)");
    assert_eq!(q("1/2-5/3*sqrt(2)", 2).canonical(), "1/2-5/3*sqrt(2)");
}

#[test]
fn display_is_compact() {
    assert_eq!(q("6*sqrt(2)", 2).to_string(), "6*sqrt(2)");
    assert_eq!(q("1-sqrt(2)", 2).to_string(), "1-sqrt(2)");
    assert_eq!(q("-5/2", 1).to_string(), "-5/2");
}

#[test]
fn invalid_inputs() {
    assert!(QuadScalar::parse("", 1).is_err());
    assert!(QuadScalar::parse("1/0", 1).is_err());
    assert!(QuadScalar::parse("abc", 1).is_err());
    assert!(QuadScalar::parse("1", 4).is_err());
    assert!(QuadScalar::parse("sqrt(0)", 2).is_err());
}

#[test]
fn exact_square_roots() {
    assert_eq!(QuadScalar::from_int(72, 2).sqrt_exact(), Some(q("6*sqrt(2)", 2)));
    assert_eq!(q("3+2*sqrt(2)", 2).sqrt_exact(), Some(q("1+sqrt(2)", 2)));
    assert_eq!(QuadScalar::from_frac(9, 4, 1).sqrt_exact(), Some(QuadScalar::from_frac(3, 2, 1)));
    assert_eq!(QuadScalar::from_int(3, 2).sqrt_exact(), None);
    assert_eq!(QuadScalar::from_int(-4, 1).sqrt_exact(), None);
}

#[test]
fn field_validation() {
    assert!(is_square_free(1) && is_square_free(30) && !is_square_free(12) && !is_square_free(0));
    assert_eq!(QuadScalar::new(rat(1, 1), rat(1, 1), 8), Err(Error::InvalidField(8)));
    // in Q the radical part folds into the rational part
    assert_eq!(QuadScalar::new(rat(1, 2), rat(3, 2), 1).unwrap(), QuadScalar::from_int(2, 1));
}

#[test]
fn lifting_rationals() {
    let x = QuadScalar::from_frac(-3, 4, 1);
    assert_eq!(x.lift_rational(5).unwrap(), QuadScalar::from_frac(-3, 4, 5));
    assert_eq!(q("sqrt(2)", 2).lift_rational(3), Err(Error::MixedField(2, 3)));
}

#[test]
fn inference_from_text() {
    assert_eq!(QuadScalar::parse_infer("1-2/3*sqrt(7)").unwrap().field(), 7);
    assert_eq!(QuadScalar::parse_infer("-2.5").unwrap(), QuadScalar::from_frac(-5, 2, 1));
    assert_eq!(QuadScalar::parse_infer("sqrt(4)").unwrap(), QuadScalar::from_int(2, 1));
    assert_eq!(QuadScalar::parse_infer("3*sqrt(12)").unwrap(), q("6*sqrt(3)", 3));
}

fn field() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 5, 6, 7])
}

fn scalar_in(d: u32) -> impl Strategy<Value = QuadScalar> {
    (-50i64..50, 1i64..12, -50i64..50, 1i64..12).prop_map(move |(a, p, b, s)| {
        let b = if d == 1 { rat(0, 1) } else { rat(b, s) };
        QuadScalar::new(rat(a, p), b, d as u64).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (QuadScalar, QuadScalar, QuadScalar)> {
    field().prop_flat_map(|d| (scalar_in(d), scalar_in(d), scalar_in(d)))
}

proptest! {
    #[test]
    fn field_axioms((x, y, z) in triple()) {
        let d = x.field();
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &QuadScalar::zero(d), x.clone());
        prop_assert_eq!(&x * &QuadScalar::one(d), x.clone());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &(-&x), QuadScalar::zero(d));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.checked_recip().unwrap(), QuadScalar::one(d));
            prop_assert_eq!(&(&y / &x) * &x, y.clone());
        } else {
            prop_assert_eq!(x.checked_recip(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn norm_is_rational((x, _, _) in triple()) {
        let n = &x * &x.conjugate();
        prop_assert!(n.is_rational());
        prop_assert_eq!(x.square(), &x * &x);
    }

    #[test]
    fn ordering_agrees_with_floats((x, y, _) in triple()) {
        let exact = x.try_cmp(&y).unwrap();
        let gap = x.to_f64() - y.to_f64();
        if gap.abs() > 1e-9 {
            prop_assert_eq!(exact, gap.partial_cmp(&0.0).unwrap());
        }
        prop_assert_eq!(exact == Ordering::Equal, x == y);
        prop_assert_eq!(x.signum(), x.try_cmp(&QuadScalar::zero(x.field())).unwrap());
        prop_assert!(!x.abs().is_negative());
    }

    #[test]
    fn text_round_trips((x, _, _) in triple()) {
        let d = x.field();
        prop_assert_eq!(QuadScalar::parse(&x.canonical(), d).unwrap(), x.clone());
        prop_assert_eq!(QuadScalar::parse(&x.to_string(), d).unwrap(), x.clone());
        if !x.is_rational() {
            prop_assert_eq!(QuadScalar::parse_infer(&x.to_string()).unwrap(), x.clone());
        }
    }

    #[test]
    fn squares_have_exact_roots((x, _, _) in triple()) {
        let r = x.square().sqrt_exact().unwrap();
        prop_assert_eq!(r, x.abs());
    }

    #[test]
    fn mixed_fields_fail(a in scalar_in(2), b in scalar_in(3)) {
        prop_assert_eq!(a.checked_mul(&b), Err(Error::MixedField(2, 3)));
        prop_assert_eq!(a.checked_sub(&b), Err(Error::MixedField(2, 3)));
    }
}
