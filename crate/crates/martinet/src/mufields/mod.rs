//! The planar mu-form geometry.
//!
//! Restricting the Martinet 1-form `alpha = (1+x)dy +/- z dz` to its
//! degeneracy surface `z = 0` leaves `mu = (1+x)dy`. Planar fields
//! preserving `mu` are exactly the fields
//!
//! ```text
//! X_f = -(1+x) f'(y) d/dx + f(y) d/dy
//! ```
//!
//! for a univariate germ `f`, so the whole classification problem lives on
//! jets. This module implements that bijection, the Lie-derivative
//! residuals that certify it (symbolically on jet-built fields, by finite
//! differences on black-box ones), the mu-preserving diffeomorphisms
//! `phi(x,y) = ((1+x)/psi'(y) - 1, psi(y))`, the induced conjugacy action
//! `g = f(psi)/psi'` on generators, and the lift back to three dimensions.

pub mod symbolic;

use serde::Serialize;

pub use symbolic::{Biv, Tri};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::jets::{Jet, STRUCT_TOL};

/// Finite-difference step for black-box residual sampling.
pub const FD_STEP: f64 = 1e-5;

/// The sign choice in `alpha = (1+x)dy +/- z dz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MartinetForm {
    Plus,
    Minus,
}

impl MartinetForm {
    pub fn sign(self) -> i64 {
        match self {
            MartinetForm::Plus => 1,
            MartinetForm::Minus => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(MartinetForm::Plus),
            -1 => Ok(MartinetForm::Minus),
            other => Err(Error::invalid(format!(
                "form sign must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// Anything that can be evaluated as a planar vector field.
pub trait PlanarField {
    fn at(&self, x: f64, y: f64) -> [f64; 2];
}

impl<F: Fn(f64, f64) -> [f64; 2]> PlanarField for F {
    fn at(&self, x: f64, y: f64) -> [f64; 2] {
        self(x, y)
    }
}

/// A planar field preserving `mu`, represented by its generating function.
///
/// The stored derivative is the polynomial derivative of the generator, so
/// pointwise evaluation treats the jet as the polynomial equal to its
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarMuField<C: Coeff> {
    f: Jet<C>,
    fp: Jet<C>,
}

impl<C: Coeff> PlanarMuField<C> {
    /// The bijection direction `f -> X_f`.
    pub fn from_function(f: Jet<C>) -> Self {
        let fp = f.with_order(f.order() + 1).derive();
        PlanarMuField { f, fp }
    }

    /// Generating function; the inverse bijection `X_f -> mu(X_f)/(1+x)`.
    pub fn generator(&self) -> &Jet<C> {
        &self.f
    }

    /// Polynomial derivative of the generator.
    pub fn generator_derivative(&self) -> &Jet<C> {
        &self.fp
    }

    /// Components `(-(1+x) f'(y), f(y))`.
    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        [-(1.0 + x) * self.fp.eval(y), self.f.eval(y)]
    }

    /// The Hamiltonian `H = mu(X_f) = (1+x) f(y)`, conserved along
    /// trajectories.
    pub fn hamiltonian_at(&self, x: f64, y: f64) -> f64 {
        (1.0 + x) * self.f.eval(y)
    }

    /// `H` as a symbolic object, `u * f(y)`.
    pub fn hamiltonian_sym(&self) -> Biv<C> {
        Biv::from_terms(vec![Jet::zero(self.f.order()), self.f.clone()])
    }

    /// Symbolic components as polynomials in `u = 1+x`.
    pub fn to_biv_field(&self) -> BivField<C> {
        let n = self.fp.order();
        BivField {
            x1: Biv::from_terms(vec![Jet::zero(n), -&self.fp]),
            x2: Biv::of_y(self.f.clone()),
        }
    }

    /// Jacobian of `X_f` at the origin: `[[-f'(0), -f''(0)], [0, f'(0)]]`.
    /// The lower-left entry is structurally zero, so the eigenvalues are the
    /// diagonal entries exactly.
    pub fn jacobian_at_origin(&self) -> [[C; 2]; 2] {
        let c1 = self.f.coeff(1);
        let c2 = self.f.coeff(2);
        [
            [-c1.clone(), -(C::from_int(2) * c2)],
            [C::zero(), c1],
        ]
    }

    /// Exact eigenvalue pair `(-f'(0), f'(0))` of the origin Jacobian.
    pub fn origin_eigenvalues(&self) -> [C; 2] {
        let c1 = self.f.coeff(1);
        [-c1.clone(), c1]
    }

    /// Whether the origin is a singular point of `X_f`.
    pub fn singular_at_origin(&self, tol: f64) -> bool {
        self.f.coeff(0).is_negligible(tol) && self.f.coeff(1).is_negligible(tol)
    }

    pub fn to_float(&self) -> PlanarMuField<f64> {
        PlanarMuField::from_function(self.f.to_float())
    }
}

impl PlanarField for PlanarMuField<f64> {
    fn at(&self, x: f64, y: f64) -> [f64; 2] {
        self.eval(x, y)
    }
}

/// A planar field with components polynomial in `u = 1+x`; the symbolic
/// input format for exact residual computations.
#[derive(Clone, Debug, PartialEq)]
pub struct BivField<C: Coeff> {
    pub x1: Biv<C>,
    pub x2: Biv<C>,
}

impl<C: Coeff> BivField<C> {
    /// The constant field `d/dx`.
    pub fn unit_x(order: usize) -> Self {
        BivField {
            x1: Biv::constant(C::one(), order),
            x2: Biv::zero(order),
        }
    }

    /// The constant field `d/dy`.
    pub fn unit_y(order: usize) -> Self {
        BivField {
            x1: Biv::zero(order),
            x2: Biv::constant(C::one(), order),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        [self.x1.eval(x, y), self.x2.eval(x, y)]
    }
}

impl<C: Coeff> PlanarField for BivField<C> {
    fn at(&self, x: f64, y: f64) -> [f64; 2] {
        self.eval(x, y)
    }
}

/// Symbolic coefficients of `L_X mu = d(i_X mu) + i_X d mu` for a planar
/// field `X = (X1, X2)`:
///
/// ```text
/// L_X mu = (1+x) dX2/dx dx + [ (1+x) dX2/dy + X1 ] dy
/// ```
///
/// Both coefficients vanish identically exactly when `X` preserves `mu`.
pub fn lie_derivative_mu<C: Coeff>(field: &BivField<C>) -> [Biv<C>; 2] {
    let r_dx = field.x2.derive_x().mul_u();
    let r_dy = field.x2.derive_y().mul_u().add(&field.x1);
    [r_dx, r_dy]
}

/// Finite-difference sampling of the same residual for a black-box field.
pub fn lie_derivative_mu_at(field: &impl PlanarField, x: f64, y: f64) -> [f64; 2] {
    let h = FD_STEP;
    let dx2_dx = (field.at(x + h, y)[1] - field.at(x - h, y)[1]) / (2.0 * h);
    let dx2_dy = (field.at(x, y + h)[1] - field.at(x, y - h)[1]) / (2.0 * h);
    let u = 1.0 + x;
    [u * dx2_dx, u * dx2_dy + field.at(x, y)[0]]
}

/// Recovers the generating function of a symbolic mu-preserving field.
///
/// The residual of `L_X mu` is checked first (exactly in rational mode, to
/// `tol` in floating mode); a nonzero residual is `NotMuPreserving`.
pub fn function_from_field<C: Coeff>(field: &BivField<C>, tol: f64) -> Result<Jet<C>> {
    let [r_dx, r_dy] = lie_derivative_mu(field);
    let zero = if C::EXACT {
        r_dx.is_exactly_zero() && r_dy.is_exactly_zero()
    } else {
        r_dx.max_abs_coeff() <= tol && r_dy.max_abs_coeff() <= tol
    };
    if !zero {
        return Err(Error::NotMuPreserving {
            residual: r_dx.max_abs_coeff().max(r_dy.max_abs_coeff()),
        });
    }
    // Zero r_dx forces X2 independent of x, so the generator is the
    // u-constant term of X2.
    Ok(field.x2.terms()[0].clone())
}

/// Black-box version: checks the sampled residual, then recovers the
/// generator by polynomial interpolation of `y -> X2(0, y)` at Chebyshev
/// nodes in `[-radius, radius]`.
pub fn function_from_field_sampled(
    field: &impl PlanarField,
    order: usize,
    radius: f64,
    tol: f64,
) -> Result<Jet<f64>> {
    let m = order + 1;
    let nodes: Vec<f64> = (0..m)
        .map(|j| radius * (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64)).cos())
        .collect();
    let mut worst: f64 = 0.0;
    for &x in &[-0.5, 0.0, 0.5] {
        for &y in &nodes {
            let [rx, ry] = lie_derivative_mu_at(field, x, y);
            worst = worst.max(rx.abs()).max(ry.abs());
        }
    }
    if worst > tol {
        return Err(Error::NotMuPreserving { residual: worst });
    }
    let values: Vec<f64> = nodes.iter().map(|&y| field.at(0.0, y)[1]).collect();
    Ok(Jet::new(newton_interpolation(&nodes, &values)))
}

/// Monomial coefficients of the interpolating polynomial through
/// `(nodes[j], values[j])`, via divided differences.
fn newton_interpolation(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let m = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for j in (level..m).rev() {
            dd[j] = (dd[j] - dd[j - 1]) / (nodes[j] - nodes[j - level]);
        }
    }
    let mut coeffs = vec![0.0; m];
    coeffs[0] = dd[m - 1];
    let mut degree = 0;
    for j in (0..m - 1).rev() {
        // coeffs <- coeffs * (y - nodes[j]) + dd[j]
        degree += 1;
        for i in (1..=degree).rev() {
            coeffs[i] = coeffs[i - 1] - nodes[j] * coeffs[i];
        }
        coeffs[0] = dd[j] - nodes[j] * coeffs[0];
    }
    coeffs
}

/// A 3-d field polynomial in `u = 1+x` and `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field3<C: Coeff> {
    pub x1: Tri<C>,
    pub x2: Tri<C>,
    pub x3: Tri<C>,
}

impl<C: Coeff> Field3<C> {
    pub fn new(x1: Tri<C>, x2: Tri<C>, x3: Tri<C>) -> Self {
        Field3 { x1, x2, x3 }
    }

    pub fn zero(order: usize) -> Self {
        Field3::new(Tri::zero(order), Tri::zero(order), Tri::zero(order))
    }

    /// The constant field `d/dz`.
    pub fn unit_z(order: usize) -> Self {
        Field3::new(
            Tri::zero(order),
            Tri::zero(order),
            Tri::constant(C::one(), order),
        )
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> [f64; 3] {
        [
            self.x1.eval(x, y, z),
            self.x2.eval(x, y, z),
            self.x3.eval(x, y, z),
        ]
    }

    /// The third component, which vanishes identically for lifted fields.
    pub fn third_component_is_zero(&self) -> bool {
        self.x3.is_exactly_zero()
    }
}

/// Lifts a planar mu-preserving field to three dimensions. The lifted field
/// preserves `alpha` for either sign choice and has an identically zero
/// third component.
pub fn lift_to_3d<C: Coeff>(field: &PlanarMuField<C>) -> Field3<C> {
    let biv = field.to_biv_field();
    Field3::new(
        Tri::of_biv(biv.x1),
        Tri::of_biv(biv.x2),
        Tri::zero(field.generator().order()),
    )
}

/// Symbolic left-hand sides of the three equations equivalent to
/// `L_X alpha = 0`:
///
/// ```text
/// (1+x) dX2/dx +/- z dX3/dx                 = 0
/// X1 + (1+x) dX2/dy +/- z dX3/dy            = 0
/// (1+x) dX2/dz +/- X3 +/- z dX3/dz          = 0
/// ```
pub fn lie_derivative_alpha<C: Coeff>(field: &Field3<C>, form: MartinetForm) -> [Tri<C>; 3] {
    let s = form.sign();
    let eq1 = field
        .x2
        .derive_x()
        .mul_u()
        .add(&field.x3.derive_x().mul_z().scale_sign(s));
    let eq2 = field
        .x1
        .add(&field.x2.derive_y().mul_u())
        .add(&field.x3.derive_y().mul_z().scale_sign(s));
    let eq3 = field
        .x2
        .derive_z()
        .mul_u()
        .add(&field.x3.scale_sign(s))
        .add(&field.x3.derive_z().mul_z().scale_sign(s));
    [eq1, eq2, eq3]
}

/// The same residual evaluated at a point.
pub fn lie_derivative_alpha_at<C: Coeff>(
    field: &Field3<C>,
    form: MartinetForm,
    point: [f64; 3],
) -> [f64; 3] {
    let [eq1, eq2, eq3] = lie_derivative_alpha(field, form);
    let [x, y, z] = point;
    [eq1.eval(x, y, z), eq2.eval(x, y, z), eq3.eval(x, y, z)]
}

/// An admissible conjugacy germ: `psi(0) = 0`, `psi'(0) = 1`.
///
/// Every diffeomorphism preserving `mu` has the form
/// `phi(x,y) = ((1+x)/psi'(y) - 1, psi(y))` for such a `psi`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuDiffeo<C: Coeff> {
    psi: Jet<C>,
    // Polynomial derivatives of psi, used for pointwise evaluation.
    dpsi: Jet<C>,
    ddpsi: Jet<C>,
}

impl<C: Coeff> MuDiffeo<C> {
    pub fn new(psi: Jet<C>) -> Result<Self> {
        let admissible = if C::EXACT {
            psi.coeff(0).is_zero() && psi.coeff(1) == C::one()
        } else {
            psi.coeff(0).is_negligible(STRUCT_TOL)
                && (psi.coeff(1) - C::one()).is_negligible(STRUCT_TOL)
        };
        if psi.order() < 1 || !admissible {
            return Err(Error::InadmissiblePsi);
        }
        let padded = psi.with_order(psi.order() + 2);
        let dpsi = padded.derive();
        let ddpsi = dpsi.derive();
        Ok(MuDiffeo { psi, dpsi, ddpsi })
    }

    pub fn identity(order: usize) -> Self {
        MuDiffeo::new(Jet::identity(order.max(1))).expect("identity is admissible")
    }

    pub fn psi(&self) -> &Jet<C> {
        &self.psi
    }

    /// The planar map `phi(x,y) = ((1+x)/psi'(y) - 1, psi(y))`.
    pub fn apply(&self, x: f64, y: f64) -> [f64; 2] {
        [(1.0 + x) / self.dpsi.eval(y) - 1.0, self.psi.eval(y)]
    }

    /// Analytic Jacobian of the map:
    /// `[[1/psi', -(1+x) psi''/psi'^2], [0, psi']]`.
    pub fn jacobian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let d = self.dpsi.eval(y);
        let dd = self.ddpsi.eval(y);
        [[1.0 / d, -(1.0 + x) * dd / (d * d)], [0.0, d]]
    }

    /// Coefficients of the pullback `phi* mu` at a point, minus those of
    /// `mu` itself: identically `(0, 0)` because `phi` preserves `mu`.
    pub fn pullback_mu_defect(&self, x: f64, y: f64) -> [f64; 2] {
        let jac = self.jacobian(x, y);
        let image_u = 1.0 + self.apply(x, y)[0];
        [image_u * jac[1][0], image_u * jac[1][1] - (1.0 + x)]
    }
}

/// The conjugacy action on generators: `g = f(psi) / psi'`.
///
/// `X_g` is mu-conjugate to `X_f` via the map of `psi`. The result carries
/// truncation order one less than its inputs, which is all `psi'` supports.
pub fn pushforward<C: Coeff>(f: &Jet<C>, psi: &MuDiffeo<C>) -> Jet<C> {
    let composed = f.compose(psi.psi()).expect("admissible psi vanishes at 0");
    let dpsi = psi.psi().derive();
    let inv = dpsi
        .reciprocal()
        .expect("admissible psi has unit linear term");
    &composed * &inv
}

/// Pointwise check report for `Dphi . X_g = X_f o phi`.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyReport {
    pub max_residual: f64,
    pub worst_point: [f64; 2],
    pub samples: usize,
    pub tol: f64,
    pub pass: bool,
}

/// Samples the conjugacy identity of Lemma-style transport on a uniform
/// `grid x grid` over `[-x_extent, x_extent] x [-y_extent, y_extent]`.
///
/// `g` should be (a truncation of) `pushforward(f, psi)`; the report
/// carries the largest Euclidean residual of `Dphi . X_g - X_f o phi`.
pub fn verify_conjugacy<C: Coeff>(
    f: &Jet<C>,
    g: &Jet<C>,
    psi: &MuDiffeo<C>,
    x_extent: f64,
    y_extent: f64,
    grid: usize,
    tol: f64,
) -> Result<ConjugacyReport> {
    if !(x_extent > 0.0 && x_extent < 1.0) {
        return Err(Error::invalid(
            "x_extent must lie in (0, 1): the sampled box may not touch the x = -1 line",
        ));
    }
    if grid == 0 {
        return Err(Error::invalid("sample grid must be positive"));
    }
    let xf = PlanarMuField::from_function(f.to_float());
    let xg = PlanarMuField::from_function(g.to_float());
    let map = MuDiffeo::new(psi.psi().to_float())?;

    let coord = |i: usize, extent: f64| {
        if grid == 1 {
            0.0
        } else {
            -extent + 2.0 * extent * i as f64 / (grid - 1) as f64
        }
    };
    let mut max_residual: f64 = 0.0;
    let mut worst_point = [0.0, 0.0];
    for i in 0..grid {
        for j in 0..grid {
            let x = coord(i, x_extent);
            let y = coord(j, y_extent);
            let jac = map.jacobian(x, y);
            let yg = xg.eval(x, y);
            let lhs = [
                jac[0][0] * yg[0] + jac[0][1] * yg[1],
                jac[1][0] * yg[0] + jac[1][1] * yg[1],
            ];
            let image = map.apply(x, y);
            let rhs = xf.eval(image[0], image[1]);
            let res = ((lhs[0] - rhs[0]).powi(2) + (lhs[1] - rhs[1]).powi(2)).sqrt();
            if res > max_residual {
                max_residual = res;
                worst_point = [x, y];
            }
        }
    }
    Ok(ConjugacyReport {
        max_residual,
        worst_point,
        samples: grid * grid,
        tol,
        pass: max_residual <= tol,
    })
}
