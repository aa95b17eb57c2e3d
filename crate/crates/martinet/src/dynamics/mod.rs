//! Quantitative phase-space analysis of the models and their unfoldings.
//!
//! Everything here works on the floating kernel. Equilibria of a family
//! member live on the invariant `x = -1` line, where the x-component
//! carries the structural factor `1+x` and the Jacobian is diagonal with
//! entries `-f'(y0)` and `f'(y0)` — saddles or fully degenerate points,
//! never hyperbolic nodes. Trajectories come from a fixed-step RK4
//! integrator whose accuracy oracle is conservation of the Hamiltonian
//! `H = (1+x) f(y)`.

pub mod portrait;
mod roots;

use serde::Serialize;

use crate::exec;
use crate::jets::Jet;
use crate::mufields::PlanarMuField;
use crate::unfold::UnfoldingFamily;

pub use portrait::{phase_portrait, Portrait, PortraitOptions, PortraitPath};
pub use roots::real_roots;

/// Default RK4 step.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Default residual bound for accepted roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
/// Default search interval for equilibrium roots.
pub const DEFAULT_ROOT_INTERVAL: (f64, f64) = (-10.0, 10.0);
/// Tolerance to which critical parameter values are located.
pub const CRITICAL_VALUE_TOL: f64 = 1e-6;

/// Axis-aligned rectangle in the phase plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Window {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

/// Default integration bounding box.
pub const DEFAULT_BOUNDS: Window = Window {
    x_min: -5.0,
    x_max: 5.0,
    y_min: -5.0,
    y_max: 5.0,
};

/// Root-finding configuration for equilibrium searches.
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    pub interval: (f64, f64),
    pub root_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            interval: DEFAULT_ROOT_INTERVAL,
            root_tol: DEFAULT_ROOT_TOL,
        }
    }
}

/// One eigenvalue as a (re, im) pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumKind {
    Saddle,
    Node,
    Focus,
    Degenerate,
    OnFixedLine,
}

/// An equilibrium with its local data.
#[derive(Clone, Debug, Serialize)]
pub struct EquilibriumReport {
    pub point: [f64; 2],
    pub eigenvalues: [EigenValue; 2],
    pub kind: EquilibriumKind,
    /// Magnitude of the field at the reported point.
    pub residual: f64,
    /// Multiplicity of the root of the generator.
    pub multiplicity: usize,
}

/// Which subsets of the plane consist entirely of equilibria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedLocus {
    NoLine,
    /// The x-axis is fixed: the generator has no constant or linear term.
    XAxis,
    /// The zero field: every point is fixed.
    WholePlane,
}

/// Detects fixed lines of the field generated by `f`: the x-axis is fixed
/// exactly when the y-component has zero constant term and the x-component
/// carries a factor `y`, i.e. `f(0) = f'(0) = 0`.
pub fn fixed_line_detect(generator: &Jet<f64>, tol: f64) -> FixedLocus {
    if generator.is_zero_within(tol) {
        FixedLocus::WholePlane
    } else if generator.coeff(0).abs() <= tol && generator.coeff(1).abs() <= tol {
        FixedLocus::XAxis
    } else {
        FixedLocus::NoLine
    }
}

/// All equilibria of the field generated by `f` on the invariant `x = -1`
/// line: the roots of `f` inside the configured interval, each with the
/// diagonal Jacobian eigenvalues `{-f'(y0), +f'(y0)}`.
pub fn equilibria_on_line_of(generator: &Jet<f64>, opts: &RootOptions) -> Vec<EquilibriumReport> {
    let poly: Vec<f64> = generator.coeffs().to_vec();
    let deriv = roots::derivative(&poly);
    let (lo, hi) = opts.interval;
    real_roots(&poly, lo, hi, opts.root_tol)
        .into_iter()
        .map(|y0| {
            let slope = roots::eval(&deriv, y0);
            let eigenvalues = [
                EigenValue { re: -slope, im: 0.0 },
                EigenValue { re: slope, im: 0.0 },
            ];
            let multiplicity = roots::multiplicity(&poly, y0);
            let kind = if multiplicity >= 2 || slope.abs() <= 1e-9 {
                EquilibriumKind::Degenerate
            } else {
                EquilibriumKind::Saddle
            };
            EquilibriumReport {
                point: [-1.0, y0],
                eigenvalues,
                kind,
                residual: roots::eval(&poly, y0).abs(),
                multiplicity,
            }
        })
        .collect()
}

/// [`equilibria_on_line_of`] for a validated unfolding family.
pub fn equilibria_on_line(
    family: &UnfoldingFamily<f64>,
    opts: &RootOptions,
) -> Vec<EquilibriumReport> {
    equilibria_on_line_of(&family.generator(), opts)
}

/// Why an integration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Completed,
    /// The state left the bounding box; the partial path is returned.
    LeftBounds,
    /// The state became non-finite; the partial path is returned.
    NonFinite,
    MaxSteps,
}

/// RK4 path with its conservation report.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    /// Vertices `(t, x, y)`, starting at the seed.
    pub points: Vec<[f64; 3]>,
    pub stop: StopReason,
    /// Max of `|H(point) - H(start)|` along the path.
    pub hamiltonian_drift: f64,
}

/// Integration configuration.
#[derive(Clone, Copy, Debug)]
pub struct IntegrationOptions {
    pub step: f64,
    pub t_end: f64,
    pub bounds: Window,
    pub max_steps: Option<usize>,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            step: DEFAULT_STEP,
            t_end: 10.0,
            bounds: DEFAULT_BOUNDS,
            max_steps: None,
        }
    }
}

/// Fixed-step RK4 integration of the field generated by `f`, from `start`,
/// with the Hamiltonian drift tracked along the way.
pub fn integrate_trajectory(
    field: &PlanarMuField<f64>,
    start: [f64; 2],
    opts: &IntegrationOptions,
) -> Trajectory {
    rk4_path(field, start, opts, 1.0)
}

pub(crate) fn rk4_path(
    field: &PlanarMuField<f64>,
    start: [f64; 2],
    opts: &IntegrationOptions,
    time_sign: f64,
) -> Trajectory {
    assert!(opts.step > 0.0, "step must be positive");
    let full_steps = ((opts.t_end / opts.step).round() as usize).max(1);
    let n_steps = opts.max_steps.map_or(full_steps, |cap| full_steps.min(cap));
    let h = opts.step * time_sign;

    let h0 = field.hamiltonian_at(start[0], start[1]);
    let mut drift: f64 = 0.0;
    let mut points = Vec::with_capacity(n_steps + 1);
    points.push([0.0, start[0], start[1]]);
    let (mut x, mut y) = (start[0], start[1]);
    let mut stop = StopReason::Completed;

    for i in 0..n_steps {
        let k1 = field.eval(x, y);
        let k2 = field.eval(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1]);
        let k3 = field.eval(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1]);
        let k4 = field.eval(x + h * k3[0], y + h * k3[1]);
        let xn = x + h * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0;
        let yn = y + h * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0;
        if !xn.is_finite() || !yn.is_finite() {
            stop = StopReason::NonFinite;
            break;
        }
        if !opts.bounds.contains(xn, yn) {
            stop = StopReason::LeftBounds;
            break;
        }
        x = xn;
        y = yn;
        points.push([(i + 1) as f64 * h, x, y]);
        drift = drift.max((field.hamiltonian_at(x, y) - h0).abs());
    }
    if stop == StopReason::Completed && n_steps < full_steps {
        stop = StopReason::MaxSteps;
    }
    Trajectory {
        points,
        stop,
        hamiltonian_drift: drift,
    }
}

/// One sample of a bifurcation sweep.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepSample {
    pub lambda1: f64,
    pub equilibria: usize,
}

/// Equilibrium counts on `x = -1` across a `lambda_1` range, with the
/// critical parameter values located by bisection on count changes.
#[derive(Clone, Debug, Serialize)]
pub struct BifurcationDiagram {
    pub a: f64,
    pub lambda2: f64,
    pub samples: Vec<SweepSample>,
    pub critical_values: Vec<f64>,
}

/// Sweeps the `F_2` family `a y^2 + lambda_1 + lambda_2 y^3` over
/// `lambda_1 in [lo, hi]` with `samples >= 2` evenly spaced points.
/// Samples are evaluated through the execution layer (parallel when the
/// `parallel` feature is on) and merged in parameter order.
pub fn bifurcation_sweep(
    a: f64,
    lambda2: f64,
    l1_range: (f64, f64),
    samples: usize,
    root_opts: &RootOptions,
) -> BifurcationDiagram {
    assert!(samples >= 2, "a sweep needs at least two samples");
    let (lo, hi) = l1_range;
    let lambdas: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    let count_at = |l1: f64| count_f2_equilibria(a, lambda2, l1, root_opts);
    let counts = exec::map_collect(&lambdas, |&l1| count_at(l1));

    let mut critical_values = Vec::new();
    for i in 1..samples {
        if counts[i] != counts[i - 1] {
            let c = bisect_count_change(&count_at, lambdas[i - 1], lambdas[i], counts[i - 1]);
            critical_values.push(c);
        }
    }
    critical_values.sort_by(f64::total_cmp);
    critical_values.dedup_by(|x, y| (*x - *y).abs() <= 2.0 * CRITICAL_VALUE_TOL);

    BifurcationDiagram {
        a,
        lambda2,
        samples: lambdas
            .into_iter()
            .zip(counts)
            .map(|(lambda1, equilibria)| SweepSample {
                lambda1,
                equilibria,
            })
            .collect(),
        critical_values,
    }
}

fn count_f2_equilibria(a: f64, lambda2: f64, l1: f64, opts: &RootOptions) -> usize {
    let poly = [l1, 0.0, a, lambda2];
    let (lo, hi) = opts.interval;
    real_roots(&poly, lo, hi, opts.root_tol).len()
}

fn bisect_count_change(count_at: &impl Fn(f64) -> usize, mut lo: f64, mut hi: f64, left: usize) -> f64 {
    while hi - lo > CRITICAL_VALUE_TOL {
        let mid = 0.5 * (lo + hi);
        if count_at(mid) == left {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl BifurcationDiagram {
    /// CSV rows: `kind,lambda1,count` with one `sample` row per parameter
    /// value and one `critical` row per detected critical value (count left
    /// empty). Floats carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,lambda1,count\n");
        for s in &self.samples {
            out.push_str(&format!("sample,{:.16e},{}\n", s.lambda1, s.equilibria));
        }
        for c in &self.critical_values {
            out.push_str(&format!("critical,{c:.16e},\n"));
        }
        out
    }
}
