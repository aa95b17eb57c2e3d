//! Normal forms and invariants of mu-preserving germs.
//!
//! Every germ `f` falls into one of four classes under conjugacies tangent
//! to the identity:
//!
//! * `f(0) = a != 0`: conjugate to the constant `a` (model `X_0`),
//! * `f(0) = 0, f'(0) = a != 0`: conjugate to `a y` (model `X_1`),
//! * vanishing to order `k >= 2` with leading coefficient `a`: conjugate to
//!   `a y^k + d y^{2k-1}` (model `X_k`),
//! * flat to the truncation order: left unclassified.
//!
//! Because the admissible conjugacies satisfy `psi'(0) = 1`, `a` is a
//! genuine modulus and is never rescaled to unit size; `d` is the
//! obstruction surviving at order `2k-1`, where the homological equation
//! is singular.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::jets::{Jet, Vanishing, DEFAULT_ZERO_TOL};
use crate::mufields::{MuDiffeo, PlanarMuField};

/// Classification outcome with the invariants attached.
#[derive(Clone, Debug, PartialEq)]
pub enum GermClass<C: Coeff> {
    /// `f(0) = a != 0`; conjugate to the constant `a`.
    Regular0 { a: C },
    /// `f(0) = 0`, `f'(0) = a != 0`; conjugate to `a y`.
    Regular1 { a: C },
    /// Vanishing order `k >= 2`; conjugate to `a y^k + d y^{2k-1}`.
    Degenerate { k: usize, a: C, d: C },
    /// All coefficients vanish up to the truncation order.
    Flat { order: usize },
}

impl<C: Coeff> GermClass<C> {
    /// The Table-2 row this germ belongs to.
    pub fn label(&self) -> String {
        match self {
            GermClass::Regular0 { .. } => "X_0".to_string(),
            GermClass::Regular1 { .. } => "X_1".to_string(),
            GermClass::Degenerate { k, .. } => format!("X_{k}"),
            GermClass::Flat { .. } => "flat".to_string(),
        }
    }

    /// The normal-form generator as a jet of the given order.
    pub fn normal_form(&self, order: usize) -> Option<Jet<C>> {
        match self {
            GermClass::Regular0 { a } => Some(Jet::constant(a.clone(), order)),
            GermClass::Regular1 { a } => Some(Jet::monomial(a.clone(), 1, order)),
            GermClass::Degenerate { k, a, d } => {
                let mut jet = Jet::monomial(a.clone(), *k, order);
                if 2 * k - 1 <= order {
                    jet = &jet + &Jet::monomial(d.clone(), 2 * k - 1, order);
                }
                Some(jet)
            }
            GermClass::Flat { .. } => None,
        }
    }
}

/// A classified germ together with the conjugacy that normalizes it.
#[derive(Clone, Debug)]
pub struct Classification<C: Coeff> {
    pub class: GermClass<C>,
    /// Conjugacy with `pushforward(f, psi)` equal to the normal form; absent
    /// only for flat germs.
    pub psi: Option<MuDiffeo<C>>,
}

/// Classifies a germ with the default zero tolerance.
pub fn classify_germ<C: Coeff>(f: &Jet<C>) -> Result<Classification<C>> {
    classify_germ_with(f, DEFAULT_ZERO_TOL)
}

/// Classifies a germ, using `zero_tol` for vanishing detection in floating
/// mode (rational kernels test exactly).
pub fn classify_germ_with<C: Coeff>(f: &Jet<C>, zero_tol: f64) -> Result<Classification<C>> {
    let n = f.order();
    match f.vanishing_order(zero_tol) {
        Vanishing::Flat(order) => Ok(Classification {
            class: GermClass::Flat { order },
            psi: None,
        }),
        Vanishing::Order(0) => {
            let psi = normalize_regular(f)?;
            Ok(Classification {
                class: GermClass::Regular0 { a: f.coeff(0) },
                psi: Some(MuDiffeo::new(psi)?),
            })
        }
        Vanishing::Order(1) => {
            let (_, a, _, psi) = solve_normal_form(f, 1)?;
            Ok(Classification {
                class: GermClass::Regular1 { a },
                psi: Some(MuDiffeo::new(psi)?),
            })
        }
        Vanishing::Order(k) => {
            if n < 2 * k - 1 {
                return Err(Error::InsufficientOrder {
                    k,
                    order: n,
                    needed: 2 * k - 1,
                });
            }
            let (k, a, d, psi) = solve_normal_form(f, k)?;
            Ok(Classification {
                class: GermClass::Degenerate { k, a, d },
                psi: Some(MuDiffeo::new(psi)?),
            })
        }
    }
}

/// Flattening conjugacy for a germ with `f(0) = a != 0`.
///
/// Returns `psi = y + integral(a/f - 1)`, which satisfies `f psi' = a`
/// modulo `y^{N+1}`: transporting the constant `a` along `psi` recovers
/// `f`, and transporting `f` along the reversion of `psi` yields `a`.
pub fn normalize_regular<C: Coeff>(f: &Jet<C>) -> Result<Jet<C>> {
    let a = f.coeff(0);
    if a.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let ratio = f.reciprocal()?.scale(&a);
    let one = Jet::constant(C::one(), f.order());
    // integrate raises the order, so psi' = a/f holds at full order N.
    let psi1 = (&ratio - &one).integrate();
    Ok(&Jet::identity(psi1.order()) + &psi1)
}

/// Order-by-order normalization of a germ vanishing to order `k >= 2`.
///
/// Returns `(k, a, d, psi)` with `psi(0) = 0`, `psi'(0) = 1`, and
/// `pushforward(f, psi) = a y^k + d y^{2k-1}` through every computable
/// order. The coefficient of `y^k` in `psi` is a kernel direction of the
/// homological equation and is fixed to zero; coefficients above order
/// `N-k+1` are not determined and stay zero.
pub fn normalize_degenerate<C: Coeff>(f: &Jet<C>) -> Result<(usize, C, C, Jet<C>)> {
    normalize_degenerate_with(f, DEFAULT_ZERO_TOL)
}

pub fn normalize_degenerate_with<C: Coeff>(
    f: &Jet<C>,
    zero_tol: f64,
) -> Result<(usize, C, C, Jet<C>)> {
    match f.vanishing_order(zero_tol) {
        Vanishing::Flat(_) => Err(Error::LeadingCoefficientZero),
        Vanishing::Order(k) if k < 2 => Err(Error::invalid(
            "normalize_degenerate needs a germ vanishing to order >= 2",
        )),
        Vanishing::Order(k) => {
            let n = f.order();
            if n < 2 * k - 1 {
                return Err(Error::InsufficientOrder {
                    k,
                    order: n,
                    needed: 2 * k - 1,
                });
            }
            solve_normal_form(f, k)
        }
    }
}

/// Shared solver for `k >= 1`: constructs `psi` so that
/// `f o psi = (a y^k + d y^{2k-1}) psi'` holds modulo `y^{N+1}`.
///
/// At order `n = k + s` the defect depends on the unknown `psi`
/// coefficient `p_{s+1}` with slope `a (k - s - 1)`: solvable except at
/// `n = 2k-1`, where the defect itself is the invariant `d`. For `k = 1`
/// the singular order coincides with the leading term, so `d = 0` and the
/// loop never hits it.
fn solve_normal_form<C: Coeff>(f: &Jet<C>, k: usize) -> Result<(usize, C, C, Jet<C>)> {
    let n = f.order();
    let a = f.coeff(k);
    debug_assert!(!a.is_zero() || !C::EXACT);
    let mut psi = Jet::identity(n);
    let mut d = C::zero();
    for order in (k + 1)..=n {
        let defect = normal_form_defect(f, &psi, k, &a, &d).coeff(order);
        if order == 2 * k - 1 {
            // The homological equation is singular here; the defect is the
            // invariant, not a removable term (psi' has unit constant term,
            // so the d-slot absorbs it one-to-one).
            d = defect;
        } else {
            // p index s+1 = order - k + 1; slope a(k - s - 1).
            let slope = a.clone() * C::from_int(k as i64 - (order - k) as i64 - 1);
            let p = -(defect / slope);
            psi = &psi + &Jet::monomial(p, order - k + 1, n);
        }
    }
    Ok((k, a, d, psi))
}

/// `f o psi - (a y^k + d y^{2k-1}) psi'` at full working order. `psi` is a
/// polynomial by construction, so its derivative is taken after padding.
fn normal_form_defect<C: Coeff>(f: &Jet<C>, psi: &Jet<C>, k: usize, a: &C, d: &C) -> Jet<C> {
    let n = f.order();
    let mut target = Jet::monomial(a.clone(), k, n);
    if 2 * k - 1 <= n {
        target = &target + &Jet::monomial(d.clone(), 2 * k - 1, n);
    }
    let dpsi = psi.with_order(n + 1).derive();
    let lhs = f.compose(psi).expect("psi vanishes at the origin");
    &lhs - &(&target * &dpsi)
}

/// Classification of a planar field plus its printable Table-2 model and,
/// when the origin is singular, the structural Jacobian data.
#[derive(Clone, Debug)]
pub struct FieldClassification<C: Coeff> {
    pub classification: Classification<C>,
    pub label: String,
    /// The planar model with coefficients substituted, e.g.
    /// `-(1+x)(2y)∂x + (y^2)∂y`.
    pub model: String,
    /// Present when `X(0,0) = 0`: always `[[0, -f''(0)], [0, 0]]`.
    pub jacobian_at_origin: Option<[[C; 2]; 2]>,
    /// Eigenvalues of that Jacobian; both structurally zero.
    pub origin_eigenvalues: Option<[C; 2]>,
}

/// Classifies a mu-preserving field through its generator.
pub fn classify_field<C: Coeff>(field: &PlanarMuField<C>) -> Result<FieldClassification<C>> {
    classify_field_with(field, DEFAULT_ZERO_TOL)
}

pub fn classify_field_with<C: Coeff>(
    field: &PlanarMuField<C>,
    zero_tol: f64,
) -> Result<FieldClassification<C>> {
    let f = field.generator();
    let classification = classify_germ_with(f, zero_tol)?;
    let label = classification.class.label();
    let model = match classification.class.normal_form(f.order()) {
        Some(normal) => {
            let bracket = normal.with_order(normal.order() + 1).derive();
            if bracket.is_zero_within(0.0) {
                format!("({normal})∂y")
            } else {
                format!("-(1+x)({bracket})∂x + ({normal})∂y")
            }
        }
        None => "flat germ: no finite normal form".to_string(),
    };
    let singular = field.singular_at_origin(zero_tol);
    Ok(FieldClassification {
        classification,
        label,
        model,
        jacobian_at_origin: singular.then(|| field.jacobian_at_origin()),
        origin_eigenvalues: singular.then(|| field.origin_eigenvalues()),
    })
}
