//! Symbolic carriers for Lie-derivative residuals.
//!
//! Fields built from jets are polynomial in `u = 1+x` and `z`, with jet
//! coefficients in `y`. [`Biv`] holds `sum_i u^i a_i(y)` and [`Tri`] holds
//! `sum_j z^j B_j(u, y)`, which is exactly enough structure to evaluate the
//! residual of `L_X mu = 0` and of the three-equation system behind
//! `L_X alpha = 0` symbolically instead of by sampling.

use crate::coeff::Coeff;
use crate::jets::Jet;

/// Polynomial in `u = 1+x` with jet coefficients: `sum_i u^i a_i(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Biv<C: Coeff> {
    terms: Vec<Jet<C>>,
}

impl<C: Coeff> Biv<C> {
    /// Builds from `u`-power coefficients, lowest power first.
    pub fn from_terms(terms: Vec<Jet<C>>) -> Self {
        assert!(!terms.is_empty(), "a Biv needs at least one term");
        Biv { terms }
    }

    pub fn zero(order: usize) -> Self {
        Biv::from_terms(vec![Jet::zero(order)])
    }

    /// A function of `y` alone.
    pub fn of_y(jet: Jet<C>) -> Self {
        Biv::from_terms(vec![jet])
    }

    pub fn constant(c: C, order: usize) -> Self {
        Biv::of_y(Jet::constant(c, order))
    }

    pub fn terms(&self) -> &[Jet<C>] {
        &self.terms
    }

    fn term(&self, i: usize) -> Jet<C> {
        self.terms
            .get(i)
            .cloned()
            .unwrap_or_else(|| Jet::zero(self.jet_order()))
    }

    fn jet_order(&self) -> usize {
        self.terms.iter().map(Jet::order).min().unwrap_or(0)
    }

    /// d/dx, which equals d/du.
    pub fn derive_x(&self) -> Self {
        if self.terms.len() == 1 {
            return Biv::zero(self.jet_order());
        }
        let terms = (1..self.terms.len())
            .map(|i| self.term(i).scale(&C::from_int(i as i64)))
            .collect();
        Biv::from_terms(terms)
    }

    /// Term-wise d/dy; each jet drops one order.
    pub fn derive_y(&self) -> Self {
        Biv::from_terms(self.terms.iter().map(Jet::derive).collect())
    }

    /// Multiplication by `u = 1+x` (shift of `u`-powers).
    pub fn mul_u(&self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + 1);
        terms.push(Jet::zero(self.jet_order()));
        terms.extend(self.terms.iter().cloned());
        Biv::from_terms(terms)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.terms.len().max(rhs.terms.len());
        let terms = (0..len).map(|i| &self.term(i) + &rhs.term(i)).collect();
        Biv::from_terms(terms)
    }

    pub fn neg(&self) -> Self {
        Biv::from_terms(self.terms.iter().map(|t| -t).collect())
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero_within(0.0))
    }

    /// Largest coefficient magnitude, for tolerance-based zero checks of
    /// floating residuals.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .iter()
            .flat_map(|t| t.coeffs().iter())
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let u = 1.0 + x;
        let mut acc = 0.0;
        for t in self.terms.iter().rev() {
            acc = acc * u + t.eval(y);
        }
        acc
    }
}

/// Polynomial in `z` with [`Biv`] coefficients: `sum_j z^j B_j(u, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tri<C: Coeff> {
    zpow: Vec<Biv<C>>,
}

impl<C: Coeff> Tri<C> {
    pub fn from_zpowers(zpow: Vec<Biv<C>>) -> Self {
        assert!(!zpow.is_empty(), "a Tri needs at least one term");
        Tri { zpow }
    }

    pub fn zero(order: usize) -> Self {
        Tri::from_zpowers(vec![Biv::zero(order)])
    }

    /// A `z`-independent component.
    pub fn of_biv(biv: Biv<C>) -> Self {
        Tri::from_zpowers(vec![biv])
    }

    pub fn constant(c: C, order: usize) -> Self {
        Tri::of_biv(Biv::constant(c, order))
    }

    fn biv(&self, j: usize) -> Biv<C> {
        self.zpow
            .get(j)
            .cloned()
            .unwrap_or_else(|| Biv::zero(self.jet_order()))
    }

    fn jet_order(&self) -> usize {
        self.zpow.iter().map(Biv::jet_order).min().unwrap_or(0)
    }

    pub fn derive_x(&self) -> Self {
        Tri::from_zpowers(self.zpow.iter().map(Biv::derive_x).collect())
    }

    pub fn derive_y(&self) -> Self {
        Tri::from_zpowers(self.zpow.iter().map(Biv::derive_y).collect())
    }

    pub fn derive_z(&self) -> Self {
        if self.zpow.len() == 1 {
            return Tri::zero(self.jet_order());
        }
        let zpow = (1..self.zpow.len())
            .map(|j| {
                let scaled: Vec<Jet<C>> = self
                    .biv(j)
                    .terms()
                    .iter()
                    .map(|t| t.scale(&C::from_int(j as i64)))
                    .collect();
                Biv::from_terms(scaled)
            })
            .collect();
        Tri::from_zpowers(zpow)
    }

    pub fn mul_u(&self) -> Self {
        Tri::from_zpowers(self.zpow.iter().map(Biv::mul_u).collect())
    }

    pub fn mul_z(&self) -> Self {
        let mut zpow = Vec::with_capacity(self.zpow.len() + 1);
        zpow.push(Biv::zero(self.jet_order()));
        zpow.extend(self.zpow.iter().cloned());
        Tri::from_zpowers(zpow)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.zpow.len().max(rhs.zpow.len());
        let zpow = (0..len).map(|j| self.biv(j).add(&rhs.biv(j))).collect();
        Tri::from_zpowers(zpow)
    }

    pub fn scale_sign(&self, sign: i64) -> Self {
        if sign >= 0 {
            self.clone()
        } else {
            Tri::from_zpowers(self.zpow.iter().map(Biv::neg).collect())
        }
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.zpow.iter().all(Biv::is_exactly_zero)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.zpow
            .iter()
            .map(Biv::max_abs_coeff)
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        let mut acc = 0.0;
        for b in self.zpow.iter().rev() {
            acc = acc * z + b.eval(x, y);
        }
        acc
    }
}
