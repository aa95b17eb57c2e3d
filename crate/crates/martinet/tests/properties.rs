//! Property and oracle tests spanning the crate: ring axioms of jet
//! arithmetic, independent series oracles (Lagrange inversion, flow
//! pullback), the group action of conjugacies, and invariance of the
//! classification data.

use num::{BigRational, Zero};
use proptest::prelude::*;

use martinet::classify::{classify_germ, GermClass};
use martinet::coeff::Coeff;
use martinet::dynamics::{
    bifurcation_sweep, equilibria_on_line_of, EquilibriumKind, RootOptions,
};
use martinet::jets::Jet;
use martinet::mufields::{
    lie_derivative_alpha, lie_derivative_mu, lie_derivative_mu_at, lift_to_3d, pushforward,
    MartinetForm, MuDiffeo, PlanarField, PlanarMuField, Tri,
};

type R = BigRational;
type RJet = Jet<R>;

fn rat(n: i64, d: i64) -> R {
    R::from_ratio(n, d)
}

fn small_rational() -> impl Strategy<Value = R> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn rational_jet(order: usize) -> impl Strategy<Value = RJet> {
    proptest::collection::vec(small_rational(), order + 1).prop_map(Jet::new)
}

/// Jet vanishing at the origin, for composition inners.
fn pointed_jet(order: usize) -> impl Strategy<Value = RJet> {
    rational_jet(order).prop_map(|jet| {
        let mut coeffs = jet.coeffs().to_vec();
        coeffs[0] = R::from_int(0);
        Jet::new(coeffs)
    })
}

/// Admissible conjugacy with moderate coefficients (psi(0)=0, psi'(0)=1).
fn admissible_psi(order: usize) -> impl Strategy<Value = MuDiffeo<R>> {
    proptest::collection::vec((-2i64..=2, 2i64..=5), order.saturating_sub(1))
        .prop_map(move |tail| {
            let mut coeffs = vec![R::from_int(0); order + 1];
            coeffs[1] = R::from_int(1);
            for (i, (n, d)) in tail.into_iter().enumerate() {
                coeffs[i + 2] = rat(n, d);
            }
            MuDiffeo::new(Jet::new(coeffs)).expect("constructed admissible")
        })
}

proptest! {
    #[test]
    fn ring_axioms(a in rational_jet(8), b in rational_jet(8), c in rational_jet(8)) {
        let left = &(&a + &b) * &c;
        let right = &(&a * &c) + &(&b * &c);
        prop_assert_eq!(left, right);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn composition_is_associative(
        f in rational_jet(7),
        g in pointed_jet(7),
        h in pointed_jet(7),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reciprocal_is_exact_inverse(f in rational_jet(8)) {
        prop_assume!(!f.coeff(0).is_zero());
        let product = &f * &f.reciprocal().unwrap();
        prop_assert_eq!(product, RJet::constant(R::from_int(1), 8));
    }

    #[test]
    fn reversion_round_trips(g in pointed_jet(7)) {
        prop_assume!(!g.coeff(1).is_zero());
        let h = g.reversion().unwrap();
        let id = RJet::identity(7);
        prop_assert_eq!(g.compose(&h).unwrap(), id.clone());
        prop_assert_eq!(h.compose(&g).unwrap(), id);
    }

    #[test]
    fn chain_rule(f in rational_jet(8), g in pointed_jet(8)) {
        let composed = f.compose(&g).unwrap();
        let left = composed.derive();
        let right = &f.derive().compose(&g).unwrap() * &g.derive();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mu_residual_vanishes_for_generated_fields(f in rational_jet(8)) {
        let field = PlanarMuField::from_function(f);
        let [r_dx, r_dy] = lie_derivative_mu(&field.to_biv_field());
        prop_assert!(r_dx.is_exactly_zero());
        prop_assert!(r_dy.is_exactly_zero());
    }

    #[test]
    fn lifted_fields_preserve_alpha_for_both_signs(f in rational_jet(6)) {
        let field = PlanarMuField::from_function(f);
        let lifted = lift_to_3d(&field);
        prop_assert!(lifted.third_component_is_zero());
        for form in [MartinetForm::Plus, MartinetForm::Minus] {
            let residual = lie_derivative_alpha(&lifted, form);
            prop_assert!(residual.iter().all(Tri::is_exactly_zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pushforward_is_a_group_action(
        f in rational_jet(10),
        psi1 in admissible_psi(10),
        psi2 in admissible_psi(10),
    ) {
        // Transporting along psi1 then psi2 equals transporting along the
        // composition psi1 o psi2, at matched truncation.
        let two_steps = pushforward(&pushforward(&f, &psi1), &psi2);
        let composed = MuDiffeo::new(psi1.psi().compose(psi2.psi()).unwrap()).unwrap();
        let one_step = pushforward(&f, &composed);
        let order = two_steps.order().min(one_step.order());
        prop_assert_eq!(two_steps.with_order(order), one_step.with_order(order));
    }

    #[test]
    fn diffeo_pullback_fixes_mu(psi in admissible_psi(8)) {
        let psi = MuDiffeo::new(psi.psi().to_float()).unwrap();
        for &(x, y) in &[(0.0, 0.0), (0.3, 0.05), (-0.4, -0.1), (0.1, 0.12)] {
            let defect = psi.pullback_mu_defect(x, y);
            prop_assert!(defect[0].abs() <= 1e-10 && defect[1].abs() <= 1e-10);
        }
    }

    #[test]
    fn classification_is_conjugacy_invariant(
        k in 2usize..=3,
        lead in prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
        tail in proptest::collection::vec(small_rational(), 8),
        psi_seed in proptest::collection::vec((-2i64..=2, 2i64..=5), 9),
    ) {
        let order = 2 * k + 4;
        let mut coeffs = vec![R::from_int(0); order + 1];
        coeffs[k] = R::from_int(lead);
        for (i, c) in tail.into_iter().enumerate() {
            if k + 1 + i <= order {
                coeffs[k + 1 + i] = c;
            }
        }
        let f = RJet::new(coeffs);

        let mut psi_coeffs = vec![R::from_int(0); order + 1];
        psi_coeffs[1] = R::from_int(1);
        for (i, (n, d)) in psi_seed.into_iter().enumerate() {
            if i + 2 <= order {
                psi_coeffs[i + 2] = rat(n, d);
            }
        }
        let psi = MuDiffeo::new(RJet::new(psi_coeffs)).unwrap();

        let direct = classify_germ(&f).unwrap();
        let transported = classify_germ(&pushforward(&f, &psi)).unwrap();
        match (direct.class, transported.class) {
            (
                GermClass::Degenerate { k: k1, a: a1, d: d1 },
                GermClass::Degenerate { k: k2, a: a2, d: d2 },
            ) => {
                prop_assert_eq!(k1, k2);
                prop_assert_eq!(a1, a2);
                prop_assert_eq!(d1, d2);
            }
            (one, other) => prop_assert!(false, "unexpected classes {one:?} / {other:?}"),
        }
    }

    #[test]
    fn equilibrium_count_is_odd_off_criticality(
        a in prop_oneof![Just(1.0f64), Just(-1.0), Just(0.5)],
        l1 in -0.2f64..0.2,
        l2 in prop_oneof![Just(1.0f64), Just(-1.0)],
    ) {
        // Away from the two critical parameter values the cubic has an odd
        // number of distinct real roots.
        let critical = -4.0 * a.powi(3) / (27.0 * l2 * l2);
        prop_assume!((l1 - critical).abs() > 1e-4 && l1.abs() > 1e-4);
        let poly = Jet::new(vec![l1, 0.0, a, l2]);
        let count = equilibria_on_line_of(&poly, &RootOptions::default()).len();
        prop_assert!(count == 1 || count == 3, "count {count}");
    }
}

/// Independent oracle for reversion: the Lagrange inversion formula
/// `h_n = [y^{n-1}] (y/g)^n / n`, computed through reciprocal powers and
/// never through `compose`.
fn lagrange_inverse(g: &RJet) -> RJet {
    let order = g.order();
    let q = Jet::new(g.coeffs()[1..].to_vec()); // g/y, constant term g1 != 0
    let inv_q = q.reciprocal().unwrap();
    let mut h = RJet::zero(order);
    let mut power = RJet::constant(R::from_int(1), order - 1);
    for n in 1..=order {
        power = &power * &inv_q;
        let mut coeffs = h.coeffs().to_vec();
        coeffs[n] = power.coeff(n - 1) / R::from_int(n as i64);
        h = Jet::new(coeffs);
    }
    h
}

#[test]
fn reversion_matches_lagrange_inversion_oracle() {
    let samples = [
        RJet::from_ints(&[0, 1, 1, 0, 0, 0, 0]),
        RJet::from_ints(&[0, 2, -1, 3, 0, 1, 0]),
        RJet::new(vec![
            rat(0, 1),
            rat(1, 2),
            rat(1, 3),
            rat(-2, 1),
            rat(0, 1),
            rat(5, 4),
            rat(1, 1),
        ]),
    ];
    for g in samples {
        assert_eq!(g.reversion().unwrap(), lagrange_inverse(&g));
    }
}

/// Independent oracle for the Lie derivative of mu: pull mu back along the
/// numerically integrated time-t flow and take the slope at t = 0.
fn flow_pullback_residual(field: &impl PlanarField, x: f64, y: f64) -> [f64; 2] {
    let tau = 1e-3;
    let h = 1e-4;
    let flow = |t: f64, px: f64, py: f64| -> [f64; 2] {
        // One RK4 step is O(t^5) accurate, plenty below the FD noise.
        let k1 = field.at(px, py);
        let k2 = field.at(px + 0.5 * t * k1[0], py + 0.5 * t * k1[1]);
        let k3 = field.at(px + 0.5 * t * k2[0], py + 0.5 * t * k2[1]);
        let k4 = field.at(px + t * k3[0], py + t * k3[1]);
        [
            px + t * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0,
            py + t * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0,
        ]
    };
    // mu applied to a tangent vector at a point: (1+x) * v_y.
    let mu = |p: [f64; 2], v: [f64; 2]| (1.0 + p[0]) * v[1];
    let pullback_coeff = |t: f64, v: [f64; 2]| {
        let plus = flow(t, x + h * v[0], y + h * v[1]);
        let minus = flow(t, x - h * v[0], y - h * v[1]);
        let image = flow(t, x, y);
        let dphi_v = [(plus[0] - minus[0]) / (2.0 * h), (plus[1] - minus[1]) / (2.0 * h)];
        mu(image, dphi_v)
    };
    let slope = |v: [f64; 2]| (pullback_coeff(tau, v) - pullback_coeff(-tau, v)) / (2.0 * tau);
    [slope([1.0, 0.0]), slope([0.0, 1.0])]
}

#[test]
fn flow_pullback_oracle_agrees_with_cartan_residuals() {
    let point = (0.2, 0.3);

    // d/dx: residual is exactly dy.
    let unit_x = |_x: f64, _y: f64| [1.0, 0.0];
    let oracle = flow_pullback_residual(&unit_x, point.0, point.1);
    assert!(oracle[0].abs() < 1e-5 && (oracle[1] - 1.0).abs() < 1e-5);
    let fd = lie_derivative_mu_at(&unit_x, point.0, point.1);
    assert!((fd[0] - oracle[0]).abs() < 1e-5 && (fd[1] - oracle[1]).abs() < 1e-5);

    // d/dy is X_f for f = 1 and preserves mu; the translation flow fixes
    // (1+x)dy, so the oracle vanishes.
    let unit_y = |_x: f64, _y: f64| [0.0, 1.0];
    let oracle = flow_pullback_residual(&unit_y, point.0, point.1);
    assert!(oracle[0].abs() < 1e-6 && oracle[1].abs() < 1e-6);
    let fd = lie_derivative_mu_at(&unit_y, point.0, point.1);
    assert!(fd[0].abs() < 1e-9 && fd[1].abs() < 1e-9);

    // A generated field: everything vanishes.
    let field = PlanarMuField::from_function(Jet::new(vec![1.0, 2.0, -1.0, 0.5]));
    let oracle = flow_pullback_residual(&field, point.0, point.1);
    assert!(oracle[0].abs() < 1e-5 && oracle[1].abs() < 1e-5);

    // A field that genuinely fails: X = (y, x) has residual
    // ((1+x), y) at each point; oracle and Cartan formula must agree.
    let swap = |x: f64, y: f64| [y, x];
    let oracle = flow_pullback_residual(&swap, point.0, point.1);
    let fd = lie_derivative_mu_at(&swap, point.0, point.1);
    assert!((oracle[0] - 1.2).abs() < 1e-4 && (oracle[1] - 0.3).abs() < 1e-4);
    assert!((fd[0] - 1.2).abs() < 1e-8 && (fd[1] - 0.3).abs() < 1e-8);
}

#[test]
fn normalization_is_idempotent_on_normal_jets() {
    for (k, a, d) in [(2, rat(1, 1), rat(7, 1)), (3, rat(-2, 1), rat(1, 3))] {
        let order = 2 * k + 4;
        let mut normal = RJet::monomial(a.clone(), k, order);
        normal = &normal + &RJet::monomial(d.clone(), 2 * k - 1, order);
        let c = classify_germ(&normal).unwrap();
        assert_eq!(c.class, GermClass::Degenerate { k, a, d });
        assert_eq!(c.psi.unwrap().psi(), &RJet::identity(order));
    }
}

#[test]
fn regular1_classification_reconstructs_linear_model() {
    // f = 3y + y^2: conjugate to 3y, with psi recovered by the solver.
    let f = RJet::from_ints(&[0, 3, 1, 0, 0, 0, 0, 0]);
    let c = classify_germ(&f).unwrap();
    assert_eq!(c.class, GermClass::Regular1 { a: rat(3, 1) });
    let psi = c.psi.unwrap();
    let g = pushforward(&f, &psi);
    assert_eq!(g, RJet::monomial(rat(3, 1), 1, g.order()));
}

#[test]
fn regular0_psi_transports_the_constant_back_to_f() {
    let f = RJet::new(vec![rat(2, 1), rat(1, 2), rat(-1, 3), rat(0, 1), rat(1, 4), rat(0, 1)]);
    let c = classify_germ(&f).unwrap();
    assert_eq!(c.class, GermClass::Regular0 { a: rat(2, 1) });
    let psi = c.psi.unwrap();
    // pushforward(a, psi) = a / psi' = f, one order short.
    let constant = RJet::constant(rat(2, 1), psi.psi().order());
    let back = pushforward(&constant, &psi);
    let order = back.order().min(f.order());
    assert_eq!(back.with_order(order), f.with_order(order));
    // And transporting f along the reversion flattens it to the constant.
    let inverse = MuDiffeo::new(psi.psi().reversion().unwrap()).unwrap();
    let flattened = pushforward(&f, &inverse);
    let order = flattened.order();
    assert_eq!(flattened, RJet::constant(rat(2, 1), order));
}

#[test]
fn double_roots_are_typed_degenerate() {
    // a y^2 + l2 y^3 with a != 0: y = 0 is a double root.
    let poly = Jet::new(vec![0.0, 0.0, 1.0, 1.0]);
    let reports = equilibria_on_line_of(&poly, &RootOptions::default());
    let origin = reports
        .iter()
        .find(|r| r.point[1].abs() < 1e-9)
        .expect("origin root");
    assert_eq!(origin.kind, EquilibriumKind::Degenerate);
    assert!(origin.multiplicity >= 2);
    assert!(origin.eigenvalues[0].re.abs() <= 1e-9);
    assert!(origin.eigenvalues[1].re.abs() <= 1e-9);
}

#[test]
fn sweep_counts_agree_with_pointwise_equilibria() {
    let opts = RootOptions::default();
    let diagram = bifurcation_sweep(1.0, 1.0, (-0.2, 0.2), 41, &opts);
    for sample in &diagram.samples {
        let poly = Jet::new(vec![sample.lambda1, 0.0, 1.0, 1.0]);
        let direct = equilibria_on_line_of(&poly, &opts).len();
        assert_eq!(direct, sample.equilibria, "lambda1 = {}", sample.lambda1);
    }
}
