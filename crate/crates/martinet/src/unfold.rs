//! Versal unfoldings of the degenerate models.
//!
//! An order-`k` germ with normal form `a y^k + d y^{2k-1}` unfolds versally
//! in `k` parameters:
//!
//! ```text
//! F(lambda, y) = a y^k + sum_{i=1}^{k-1} lambda_i y^{k-1-i} + lambda_k y^{2k-1}
//! ```
//!
//! and the planar family is generated by the same polynomial, so every
//! member preserves `mu` by construction. The printed x-component bracket
//! (with the vanished `i = k-1` term dropped) is exposed separately so the
//! structural identity `x-component = -(1+x) d/dy(y-component)` can be
//! checked coefficient by coefficient.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::mufields::PlanarMuField;

/// The parametric family through the model `X_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnfoldingFamily<C: Coeff> {
    k: usize,
    a: C,
    lambdas: Vec<C>,
}

impl<C: Coeff> UnfoldingFamily<C> {
    /// Requires `k >= 2`, `a != 0` and exactly `k` parameters.
    pub fn new(k: usize, a: C, lambdas: Vec<C>) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("unfolding requires k >= 2"));
        }
        if a.is_zero() {
            return Err(Error::invalid("unfolding requires a != 0"));
        }
        if lambdas.len() != k {
            return Err(Error::BadArity {
                expected: k,
                got: lambdas.len(),
            });
        }
        Ok(UnfoldingFamily { k, a, lambdas })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> &C {
        &self.a
    }

    pub fn lambdas(&self) -> &[C] {
        &self.lambdas
    }

    /// The 1-d unfolding polynomial
    /// `a y^k + sum_{i=1}^{k-1} lambda_i y^{k-1-i} + lambda_k y^{2k-1}`,
    /// as a jet of order `2k-1`.
    pub fn generator(&self) -> Jet<C> {
        let order = 2 * self.k - 1;
        let mut out = Jet::monomial(self.a.clone(), self.k, order);
        for i in 1..self.k {
            let power = self.k - 1 - i;
            out = &out + &Jet::monomial(self.lambdas[i - 1].clone(), power, order);
        }
        &out + &Jet::monomial(self.lambdas[self.k - 1].clone(), order, order)
    }

    /// The planar family member, `-(1+x) F'(y) d/dx + F(y) d/dy`.
    pub fn field(&self) -> PlanarMuField<C> {
        PlanarMuField::from_function(self.generator())
    }

    /// The x-component bracket exactly as the planar unfolding prints it:
    /// `a k y^{k-1} + sum_{i=1}^{k-2} (k-1-i) lambda_i y^{k-2-i}
    ///  + (2k-1) lambda_k y^{2k-2}`.
    ///
    /// The `i = k-1` summand carries the factor `k-1-i = 0` and is defined
    /// as absent, which keeps this equal to the derivative of
    /// [`Self::generator`] term for term.
    pub fn x_bracket(&self) -> Jet<C> {
        let order = 2 * self.k - 2;
        let mut out = Jet::monomial(
            self.a.clone() * C::from_int(self.k as i64),
            self.k - 1,
            order,
        );
        for i in 1..self.k - 1 {
            let factor = C::from_int((self.k - 1 - i) as i64);
            let power = self.k - 2 - i;
            out = &out + &Jet::monomial(factor * self.lambdas[i - 1].clone(), power, order);
        }
        let top = C::from_int((2 * self.k - 1) as i64) * self.lambdas[self.k - 1].clone();
        &out + &Jet::monomial(top, order, order)
    }
}

/// Free-function form of [`UnfoldingFamily::generator`].
pub fn unfold_1d<C: Coeff>(k: usize, a: C, lambdas: &[C]) -> Result<Jet<C>> {
    Ok(UnfoldingFamily::new(k, a, lambdas.to_vec())?.generator())
}

/// Free-function form of [`UnfoldingFamily::field`].
pub fn unfold_planar<C: Coeff>(k: usize, a: C, lambdas: &[C]) -> Result<PlanarMuField<C>> {
    Ok(UnfoldingFamily::new(k, a, lambdas.to_vec())?.field())
}

/// The codimension-2 family `F_2`, generated by
/// `a y^2 + lambda_1 + lambda_2 y^3`.
///
/// Unlike [`UnfoldingFamily`], `a` may be any real here: parameter sweeps
/// deliberately cross `a = 0`.
pub fn f2_family<C: Coeff>(a: C, l1: C, l2: C) -> PlanarMuField<C> {
    let mut f = Jet::constant(l1, 3);
    f = &f + &Jet::monomial(a, 2, 3);
    f = &f + &Jet::monomial(l2, 3, 3);
    PlanarMuField::from_function(f)
}
