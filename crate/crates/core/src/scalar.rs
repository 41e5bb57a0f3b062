//! Exact arithmetic in real quadratic fields `Q(sqrt(d))`.
//!
//! Every coordinate, squared distance and signed volume in this crate is a
//! [`QuadScalar`]. Values carry their field parameter `d`; combining values
//! from different fields is an error ([`Error::MixedField`]) through the
//! `checked_*` API and a panic through the operator impls, which are meant
//! for code that already validated a common field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `a + b*sqrt(d)` of `Q(sqrt(d))` with `d` square-free.
///
/// For `d = 1` the field is `Q` and `b` is always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

/// True when `d >= 1` has no square factor other than 1.
pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn check_field(d: u64) -> Result<u32> {
    if !is_square_free(d) || d > u32::MAX as u64 {
        return Err(Error::InvalidField(d));
    }
    Ok(d as u32)
}

fn sign_of(a: &BigRational, b: &BigRational, d: u32) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // Opposite signs: the term with the larger square wins.
    let a2 = a * a;
    let b2d = b * b * BigRational::from_integer(BigInt::from(d));
    match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact square root of a non-negative rational, if it is rational.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let m = q.denom();
    let rn = n.sqrt();
    let rm = m.sqrt();
    if &(&rn * &rn) == n && &(&rm * &rm) == m {
        Some(BigRational::new(rn, rm))
    } else {
        None
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.strip_prefix('+').unwrap_or(text);
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches('-');
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return None;
        }
        let digits = format!("{int_digits}{frac}");
        let mut value = BigRational::new(
            digits.parse().ok()?,
            BigInt::from(10u32).pow(frac.len() as u32),
        );
        if neg {
            value = -value;
        }
        return Some(value);
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

impl QuadScalar {
    /// Builds `a + b*sqrt(d)`, validating the field parameter.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        let d = check_field(d)?;
        if d == 1 {
            return Ok(QuadScalar { a: a + b, b: BigRational::zero(), d });
        }
        Ok(QuadScalar { a, b, d })
    }

    pub fn from_rational(a: BigRational, d: u32) -> Self {
        QuadScalar { a, b: BigRational::zero(), d }
    }

    pub fn from_int(v: i64, d: u32) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)), d)
    }

    pub fn from_frac(p: i64, q: i64, d: u32) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)), d)
    }

    /// `c * sqrt(d)` for an integer `c`.
    pub fn sqrt_multiple(c: i64, d: u32) -> Self {
        if d == 1 {
            return Self::from_int(c, 1);
        }
        QuadScalar {
            a: BigRational::zero(),
            b: BigRational::from_integer(BigInt::from(c)),
            d,
        }
    }

    pub fn zero(d: u32) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: u32) -> Self {
        Self::from_int(1, d)
    }

    pub fn field(&self) -> u32 {
        self.d
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(Error::MixedField(self.d, other.d))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadScalar { a: &self.a + &other.a, b: &self.b + &other.b, d: self.d })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadScalar { a: &self.a - &other.a, b: &self.b - &other.b, d: self.d })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = BigRational::from_integer(BigInt::from(self.d));
        Ok(QuadScalar {
            a: &self.a * &other.a + &self.b * &other.b * d,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        })
    }

    /// Multiplicative inverse via the conjugate: `1/x = conj(x) / N(x)`.
    pub fn checked_recip(&self) -> Result<Self> {
        let d = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        if norm.is_zero() {
            // The norm vanishes only at zero since d is not a square (or b = 0).
            return Err(Error::DivisionByZero);
        }
        Ok(QuadScalar { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.checked_mul(&other.checked_recip()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadScalar { a: &self.a * q, b: &self.b * q, d: self.d }
    }

    /// Sign under the real embedding.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b, self.d)
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison under the real embedding.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.same_field(other)?;
        Ok(sign_of(&(&self.a - &other.a), &(&self.b - &other.b), self.d))
    }

    /// Double-precision value of the real embedding.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Square root inside the same field, when it exists; the non-negative
    /// root is returned.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.d;
        let dq = BigRational::from_integer(BigInt::from(d));
        let root = if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                QuadScalar::from_rational(r, d)
            } else if d > 1 {
                // a = d * y^2 gives sqrt(a) = y * sqrt(d).
                let y = rational_sqrt(&(&self.a / &dq))?;
                QuadScalar { a: BigRational::zero(), b: y, d }
            } else {
                return None;
            }
        } else {
            // (x + y sqrt d)^2 = p + q sqrt d  <=>  x^2 + d y^2 = p, 2xy = q.
            let p = &self.a;
            let q = &self.b;
            let disc = rational_sqrt(&(p * p - q * q * &dq))?;
            let two = BigRational::from_integer(BigInt::from(2));
            let mut found = None;
            for x2 in [(p + &disc) / &two, (p - &disc) / &two] {
                if x2.is_zero() {
                    continue;
                }
                if let Some(x) = rational_sqrt(&x2) {
                    let y = q / (&two * &x);
                    found = Some(QuadScalar { a: x, b: y, d });
                    break;
                }
            }
            found?
        };
        Some(root.abs())
    }

    /// Canonical text `p/q+r/s*sqrt(d)` with reduced fractions.
    pub fn canonical(&self) -> String {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        format!(
            "{}/{}{}{}/{}*sqrt({})",
            self.a.numer(),
            self.a.denom(),
            sign,
            b.numer(),
            b.denom(),
            self.d
        )
    }

    /// Parses canonical text or shorthand (`7`, `-3/4`, `2.5`, `sqrt(2)`,
    /// `3*sqrt(2)`, `1-2/3*sqrt(2)`) into the field `Q(sqrt(d))`.
    pub fn parse(text: &str, d: u32) -> Result<Self> {
        check_field(d as u64)?;
        let (value, field) = parse_parts(text)?;
        match field {
            Some(k) if k != d => Err(Error::MixedField(k, d)),
            _ => Ok(QuadScalar::new(value.0, value.1, d as u64)?),
        }
    }

    /// Parses text and infers the field from its `sqrt(k)` term (`d = 1`
    /// when there is none).
    pub fn parse_infer(text: &str) -> Result<Self> {
        let ((a, b), field) = parse_parts(text)?;
        QuadScalar::new(a, b, field.unwrap_or(1) as u64)
    }

    /// Re-embeds a rational value into another field. Fails for irrational
    /// values.
    pub fn lift_rational(&self, d: u32) -> Result<Self> {
        if !self.b.is_zero() {
            return Err(Error::MixedField(self.d, d));
        }
        Ok(QuadScalar::from_rational(self.a.clone(), d))
    }
}

type Parts = ((BigRational, BigRational), Option<u32>);

fn parse_parts(raw: &str) -> Result<Parts> {
    let text: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| Error::ParseScalar { text: raw.to_string(), reason: reason.to_string() };
    if text.is_empty() {
        return Err(err("empty"));
    }
    let Some(sqrt_pos) = text.find("sqrt(") else {
        let a = parse_rational(&text).ok_or_else(|| err("not a rational number"))?;
        return Ok(((a, BigRational::zero()), None));
    };
    // Split the rational part from the radical term at the last sign that
    // follows a digit or a closing parenthesis.
    let bytes = text.as_bytes();
    let mut split = 0;
    for p in 1..sqrt_pos {
        if (bytes[p] == b'+' || bytes[p] == b'-')
            && (bytes[p - 1].is_ascii_digit() || bytes[p - 1] == b')')
        {
            split = p;
        }
    }
    let (rat_text, rad_text) = text.split_at(split);
    let a = if rat_text.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(rat_text).ok_or_else(|| err("bad rational part"))?
    };
    let inner_start = rad_text.find("sqrt(").unwrap();
    let inner = rad_text[inner_start + 5..]
        .strip_suffix(')')
        .ok_or_else(|| err("unterminated sqrt("))?;
    let radicand: u64 = inner.parse().map_err(|_| err("radicand must be a positive integer"))?;
    if radicand == 0 {
        return Err(err("radicand must be positive"));
    }
    let coeff_text = rad_text[..inner_start].trim_end_matches('*');
    let coeff_text = coeff_text.strip_prefix('+').unwrap_or(coeff_text);
    let mut coeff = match coeff_text {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t).ok_or_else(|| err("bad radical coefficient"))?,
    };
    // Pull square factors out of the radicand.
    let mut k = radicand;
    let mut f = 2u64;
    while f * f <= k {
        while k.is_multiple_of(f * f) {
            k /= f * f;
            coeff *= BigRational::from_integer(BigInt::from(f));
        }
        f += 1;
    }
    if k == 1 {
        return Ok(((a + coeff, BigRational::zero()), None));
    }
    let k = u32::try_from(k).map_err(|_| err("radicand too large"))?;
    Ok(((a, coeff), Some(k)))
}

impl fmt::Display for QuadScalar {
    /// Compact human form, e.g. `3`, `-1/2`, `6*sqrt(2)`, `1-2*sqrt(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let radical = |b: &BigRational| {
            if b.is_one() {
                format!("sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", b, self.d)
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                return write!(f, "-{}", radical(&self.b.abs()));
            }
            return write!(f, "{}", radical(&self.b));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}", self.a, sign, radical(&self.b.abs()))
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadScalar({self})")
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    /// Panics on mixed fields; use [`QuadScalar::try_cmp`] for untrusted input.
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("comparison of scalars from different fields")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                self.$checked(rhs).expect(concat!("QuadScalar::", stringify!($method)))
            }
        }
        impl $trait<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -self.a, b: -self.b, d: self.d }
    }
}
