//! Germ classification and bifurcation analysis for vector fields
//! preserving the Martinet 1-form.
//!
//! Fields on R^3 preserving `alpha = (1+x)dy +/- z dz` have identically
//! vanishing third component, so everything reduces to planar fields
//! preserving `mu = (1+x)dy`, and those are in bijection with univariate
//! germs `f` through `X_f = -(1+x) f'(y) d/dx + f(y) d/dy`. The crate
//! follows that reduction:
//!
//! * [`jets`] — exact-rational and floating truncated power series, the
//!   carrier for every germ, conjugacy, and normal form;
//! * [`mufields`] — the field/function bijection, Lie-derivative residuals,
//!   mu-preserving diffeomorphisms and the conjugacy action on generators,
//!   plus the lift back to three dimensions;
//! * [`classify`] — reduction to the normal forms `a`, `a y`,
//!   `a y^k + d y^{2k-1}` and extraction of the invariants `(k, a, d)`;
//! * [`unfold`] — the k-parameter versal unfoldings of the degenerate
//!   models;
//! * [`dynamics`] — equilibria on the invariant `x = -1` line, RK4
//!   trajectories with Hamiltonian-conservation reporting, phase portraits
//!   and bifurcation sweeps.
//!
//! Portrait seeds and sweep samples run through [`exec`], which is
//! rayon-parallel by default and sequential without the `parallel`
//! feature; results merge in deterministic order either way.

pub mod classify;
pub mod coeff;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod jets;
pub mod mufields;
pub mod unfold;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use jets::{Jet, Vanishing, DEFAULT_ORDER, DEFAULT_ZERO_TOL};

/// The exact coefficient kernel.
pub type Rational = num::BigRational;
