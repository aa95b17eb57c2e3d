//! Coefficient kernels for jet arithmetic.
//!
//! Every symbolic computation in the crate runs over one of two kernels:
//! exact rationals ([`num::BigRational`]) for classification and invariant
//! extraction, and `f64` for dynamics. The [`Coeff`] trait keeps the jet
//! layer agnostic of which one is in use.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A coefficient field.
///
/// `EXACT` kernels compare against zero exactly and ignore tolerances;
/// floating kernels use `|x| <= tol`.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// The fraction `num/den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_negative(&self) -> bool;

    /// Zero test: exact in rational mode, `|x| <= tol` in floating mode.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Parse integer (`7`), fraction (`-3/2`), or decimal (`0.25`, `1e-3`)
    /// notation.
    fn parse(text: &str) -> Result<Self>;

    /// JSON form: plain number for floats, `"p/q"` string for rationals.
    fn to_json(&self) -> serde_json::Value;

    fn from_json(value: &serde_json::Value) -> Result<Self>;
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::ParseCoeff(text.to_string()))?;
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::ParseCoeff(text.to_string()))?;
            if d == 0.0 {
                return Err(Error::ParseCoeff(text.to_string()));
            }
            return Ok(n / d);
        }
        text.parse()
            .map_err(|_| Error::ParseCoeff(text.to_string()))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::ParseCoeff(value.to_string())),
            serde_json::Value::String(s) => Self::parse(s),
            _ => Err(Error::ParseCoeff(value.to_string())),
        }
    }
}

impl Coeff for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text.trim()).ok_or_else(|| Error::ParseCoeff(text.to_string()))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => Self::parse(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_int(i))
                } else {
                    let x = n
                        .as_f64()
                        .ok_or_else(|| Error::ParseCoeff(value.to_string()))?;
                    BigRational::from_float(x).ok_or_else(|| Error::ParseCoeff(value.to_string()))
                }
            }
            _ => Err(Error::ParseCoeff(value.to_string())),
        }
    }
}

/// `"p"` when the denominator is one, `"p/q"` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    // Decimal notation with optional exponent, converted exactly.
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['+', '-'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let mut denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    if exp >= 0 {
        numer *= BigInt::from(10u32).pow(exp as u32);
    } else {
        denom *= BigInt::from(10u32).pow((-exp) as u32);
    }
    Some(BigRational::new(numer, denom))
}
