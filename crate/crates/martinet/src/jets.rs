//! Truncated univariate power series (jets).
//!
//! A [`Jet`] stores the coefficients `c0..cN` of a germ at the origin,
//! truncated at order `N`; all arithmetic is modulo `y^{N+1}`. Binary
//! operations truncate to the smaller order of their operands, so no
//! operation ever reads or invents coefficients beyond what its inputs
//! determine. The one asymmetry: [`Jet::derive`] drops the order by one and
//! [`Jet::integrate`] raises it by one, mirroring what each operation
//! actually knows about the underlying germ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// Default truncation order. Classification of an order-`k` germ requires
/// order >= 2k-1, so the default supports k <= 8.
pub const DEFAULT_ORDER: usize = 16;

/// Default tolerance for zero tests in floating mode. Rational kernels
/// compare exactly and ignore it.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Tolerance used for structural preconditions (inner constant terms,
/// admissibility of conjugacies) in floating mode.
pub(crate) const STRUCT_TOL: f64 = 1e-12;

/// Order of the first coefficient a jet fails to annihilate, or flatness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    /// Smallest index `m` with `c_m` nonzero (beyond tolerance).
    Order(usize),
    /// Every coefficient up to the truncation order vanishes; carries `N`.
    Flat(usize),
}

/// Truncated power series with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct Jet<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Jet<C> {
    /// Builds a jet from coefficients `c0..cN`. Panics on an empty vector.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least a constant term");
        Jet { coeffs }
    }

    /// Jet with integer coefficients, handy in tests and constructors.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Jet::new(coeffs.iter().map(|&n| C::from_int(n)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Jet::new(vec![C::zero(); order + 1])
    }

    pub fn constant(value: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = value;
        Jet::new(coeffs)
    }

    /// The identity germ `y`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// The single term `c * y^power`; `power` must not exceed `order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        assert!(power <= order, "monomial power exceeds truncation order");
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[power] = c;
        Jet::new(coeffs)
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `y^i`, zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Copy truncated or zero-padded to exactly `order`. Padding treats the
    /// jet as the polynomial equal to its coefficients, which is how jets
    /// are used as field generators.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C::zero());
        coeffs.truncate(order + 1);
        Jet::new(coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Jet::new(
            self.coeffs
                .iter()
                .map(|a| a.clone() * c.clone())
                .collect(),
        )
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    /// Smallest index with a non-negligible coefficient.
    pub fn vanishing_order(&self, zero_tol: f64) -> Vanishing {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_negligible(zero_tol) {
                return Vanishing::Order(i);
            }
        }
        Vanishing::Flat(self.order())
    }

    /// Multiplicative inverse modulo `y^{N+1}`; the constant term must be
    /// nonzero.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = C::one() / self.coeffs[0].clone();
        let mut out = vec![C::zero(); n + 1];
        out[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = C::zero();
            for i in 1..=m {
                acc = acc + self.coeff(i) * out[m - i].clone();
            }
            out[m] = -(inv0.clone() * acc);
        }
        Ok(Jet::new(out))
    }

    /// Composition `self(inner)` truncated at the smaller order. The inner
    /// jet must vanish at the origin.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_negligible(STRUCT_TOL) {
            return Err(Error::NonzeroInnerConstant(format!("{}", inner.coeffs[0])));
        }
        let order = self.order().min(inner.order());
        let inner = inner.with_order(order);
        // Horner over jets.
        let mut acc = Jet::constant(self.coeff(order), order);
        for k in (0..order).rev() {
            acc = &(&acc * &inner) + &Jet::constant(self.coeff(k), order);
        }
        Ok(acc)
    }

    /// Term-wise derivative; drops the truncation order by one (the top
    /// coefficient of the derivative is not determined by a trunc-order-N
    /// jet). Constants derive to the zero constant jet.
    pub fn derive(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Jet::zero(0);
        }
        let coeffs = (0..n)
            .map(|i| C::from_int((i + 1) as i64) * self.coeff(i + 1))
            .collect();
        Jet::new(coeffs)
    }

    /// Term-wise antiderivative with zero constant term; raises the
    /// truncation order by one.
    pub fn integrate(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![C::zero(); n + 2];
        for i in 0..=n {
            coeffs[i + 1] = self.coeff(i) / C::from_int((i + 1) as i64);
        }
        Jet::new(coeffs)
    }

    /// Compositional inverse: `h` with `self(h) = h(self) = y` modulo
    /// `y^{N+1}`. Needs `self(0) = 0` and a nonzero linear coefficient.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_negligible(STRUCT_TOL) {
            return Err(Error::NonzeroInnerConstant(format!("{}", self.coeffs[0])));
        }
        let n = self.order();
        if n < 1 || self.coeff(1).is_negligible(STRUCT_TOL) {
            return Err(Error::NonUnitLinearTerm);
        }
        let g1 = self.coeff(1);
        let mut h = Jet::zero(n);
        h.coeffs[1] = C::one() / g1.clone();
        // Fix one coefficient of h per order: with h correct below order m,
        // the order-m defect of self(h) is linear in h_m with slope g1.
        for m in 2..=n {
            let r = self.compose(&h)?;
            h.coeffs[m] = -(r.coeff(m) / g1.clone());
        }
        Ok(h)
    }

    /// Horner evaluation of the jet as a polynomial, in f64.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64();
        }
        acc
    }

    /// Horner evaluation in the coefficient field.
    pub fn eval_in(&self, t: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    /// Kernel conversion for handing exact jets to the dynamics layer.
    pub fn to_float(&self) -> Jet<f64> {
        Jet::new(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    /// JSON array of coefficients: numbers in floating mode, `"p/q"`
    /// strings in rational mode.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::invalid("jet JSON must be an array of coefficients"))?;
        if arr.is_empty() {
            return Err(Error::invalid("jet JSON array is empty"));
        }
        let coeffs = arr.iter().map(C::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Jet::new(coeffs))
    }

    /// Parses `"c0,c1,..."` as used on the command line.
    pub fn parse_list(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::invalid("empty jet coefficient list"));
        }
        let coeffs = trimmed
            .split(',')
            .map(C::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Jet::new(coeffs))
    }
}

impl<C: Coeff> Add for &Jet<C> {
    type Output = Jet<C>;
    fn add(self, rhs: Self) -> Jet<C> {
        let order = self.order().min(rhs.order());
        Jet::new(
            (0..=order)
                .map(|i| self.coeff(i) + rhs.coeff(i))
                .collect(),
        )
    }
}

impl<C: Coeff> Sub for &Jet<C> {
    type Output = Jet<C>;
    fn sub(self, rhs: Self) -> Jet<C> {
        let order = self.order().min(rhs.order());
        Jet::new(
            (0..=order)
                .map(|i| self.coeff(i) - rhs.coeff(i))
                .collect(),
        )
    }
}

impl<C: Coeff> Mul for &Jet<C> {
    type Output = Jet<C>;
    fn mul(self, rhs: Self) -> Jet<C> {
        let order = self.order().min(rhs.order());
        let mut out = vec![C::zero(); order + 1];
        for i in 0..=order {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                out[i + j] = out[i + j].clone() + a.clone() * rhs.coeff(j);
            }
        }
        Jet::new(out)
    }
}

impl<C: Coeff> Neg for &Jet<C> {
    type Output = Jet<C>;
    fn neg(self) -> Jet<C> {
        Jet::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<C: Coeff> fmt::Display for Jet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if wrote {
                write!(f, " {} ", sign)?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let unit_mag = mag == C::one();
            match (i, unit_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "y")?,
                (1, false) => write!(f, "{mag}y")?,
                (_, true) => write!(f, "y^{i}")?,
                (_, false) => write!(f, "{mag}y^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Jet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet{:?}", self.coeffs)
    }
}
