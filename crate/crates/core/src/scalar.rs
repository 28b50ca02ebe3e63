//! The two arithmetic modes every computation runs in.
//!
//! [`Rational`] never rounds and is used for identity verification; `f64`
//! is reserved for transcendental work (exponentials, angle sweeps). Code
//! elsewhere is generic over [`Scalar`] and never mixes the two.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::linalg;
use crate::matrix::Matrix;

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?} (expected exact or float)")),
        }
    }
}

/// Field element usable by the matrix and invariant code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact square root where one exists in this field.
    fn sqrt(&self) -> Option<Self>;
    /// `self += a * b` without intermediate clones.
    fn add_mul(&mut self, a: &Self, b: &Self);
    /// Pivot test during elimination; `scale` is the largest magnitude in play.
    fn negligible(&self, scale: f64) -> bool;

    /// Basis of the right nullspace of `m`.
    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>>;
    /// Distance of `x` from the span of `basis`. Zero iff `x` lies in it.
    fn span_residual(x: &[Self], basis: &[Vec<Self>]) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }

    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        linalg::rref_nullspace(m)
    }

    fn span_residual(x: &[Self], basis: &[Vec<Self>]) -> Self {
        linalg::SpanBasis::new(basis.to_vec(), x.len()).residual_norm_sq(x)
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(self.numer().to_string()),
            Value::String(self.denom().to_string()),
        ])
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => parse_decimal(&n.to_string()),
            Value::String(s) => parse_rational(s),
            Value::Array(parts) if parts.len() == 2 => {
                let num = json_bigint(&parts[0])?;
                let den = json_bigint(&parts[1])?;
                if den.is_zero() {
                    None
                } else {
                    Some(Rational::new(num, den))
                }
            }
            _ => None,
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn negligible(&self, scale: f64) -> bool {
        f64::abs(*self) <= 1e-11 * scale.max(1.0)
    }

    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        linalg::svd_nullspace(m, linalg::FLOAT_RANK_THRESHOLD)
    }

    fn span_residual(x: &[Self], basis: &[Vec<Self>]) -> Self {
        linalg::least_squares_residual(x, basis)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_f64(),
            other => Rational::from_json(other).map(|r| Scalar::to_f64(&r)),
        }
    }
}

fn json_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}

/// Parses `"p"`, `"p/q"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    parse_decimal(s)
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Integral rationals become JSON integers, anything else a float.
pub fn number_json<T: Scalar>(x: &T) -> Value {
    let f = x.to_f64();
    if f.fract() == 0.0 && f.abs() < 9.0e15 {
        Value::from(f as i64)
    } else {
        serde_json::Number::from_f64(f)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

pub fn max_magnitude<'a, T: Scalar>(xs: impl IntoIterator<Item = &'a T>) -> T {
    xs.into_iter()
        .map(Scalar::abs)
        .fold(T::zero(), |acc, x| if x > acc { x } else { acc })
}
