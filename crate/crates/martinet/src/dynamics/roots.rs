//! Real-root isolation for the low-degree unfolding polynomials.
//!
//! Sign-change bracketing alone misses even-multiplicity roots, so the
//! finder recurses on the derivative: the critical points split the
//! interval into monotone pieces, each holding at most one sign change,
//! and a critical point where the polynomial itself vanishes is a
//! multiple root. Brackets are refined by bisection and polished with a
//! few Newton steps where the derivative allows it.

/// Multiplicity threshold on derivative magnitudes.
const MULTIPLE_ROOT_TOL: f64 = 1e-8;

/// Distinct real roots of `poly` (dense coefficients, ascending, read as a
/// polynomial) inside `[lo, hi]`, each satisfying `|p(root)| <= root_tol`.
///
/// The zero polynomial vanishes everywhere; this returns an empty list for
/// it and callers must treat that case separately.
pub fn real_roots(poly: &[f64], lo: f64, hi: f64, root_tol: f64) -> Vec<f64> {
    let coeffs = trim(poly);
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    if coeffs.len() == 2 {
        let root = -coeffs[0] / coeffs[1];
        if root >= lo && root <= hi {
            return vec![root];
        }
        return Vec::new();
    }

    let deriv = derivative(&coeffs);
    let critical = real_roots(&deriv, lo, hi, root_tol);

    let mut breakpoints = Vec::with_capacity(critical.len() + 2);
    breakpoints.push(lo);
    breakpoints.extend(critical.iter().copied());
    breakpoints.push(hi);
    breakpoints.sort_by(f64::total_cmp);

    let mut roots = Vec::new();
    // Multiple roots sit at critical points where p itself vanishes;
    // endpoints can be roots too.
    for &b in &breakpoints {
        if eval(&coeffs, b).abs() <= root_tol {
            roots.push(b);
        }
    }
    // One sign change at most per monotone piece.
    for pair in breakpoints.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        if v - u <= f64::EPSILON {
            continue;
        }
        let pu = eval(&coeffs, u);
        let pv = eval(&coeffs, v);
        if pu.abs() <= root_tol || pv.abs() <= root_tol {
            continue;
        }
        if pu.signum() * pv.signum() < 0.0 {
            let root = polish(&coeffs, &deriv, bisect(&coeffs, u, v), u, v);
            roots.push(root);
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs())));
    roots
}

/// Multiplicity of a root: the number of leading derivatives (including the
/// value itself) below tolerance.
pub fn multiplicity(poly: &[f64], root: f64) -> usize {
    let mut current = trim(poly);
    let mut count = 0;
    while current.len() > 1 && eval(&current, root).abs() <= MULTIPLE_ROOT_TOL {
        count += 1;
        current = derivative(&current);
    }
    count.max(1)
}

pub fn eval(poly: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for c in poly.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

pub fn derivative(poly: &[f64]) -> Vec<f64> {
    if poly.len() <= 1 {
        return vec![0.0];
    }
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect()
}

fn trim(poly: &[f64]) -> Vec<f64> {
    let mut coeffs = poly.to_vec();
    while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
        coeffs.pop();
    }
    coeffs
}

fn bisect(poly: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(poly, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fmid = eval(poly, mid);
        if fmid == 0.0 {
            return mid;
        }
        if flo.signum() * fmid.signum() < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
        if hi - lo <= 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Newton refinement of a bisected simple root down to machine precision;
/// skipped near multiple roots where Newton stalls.
fn polish(poly: &[f64], deriv: &[f64], mut root: f64, lo: f64, hi: f64) -> f64 {
    for _ in 0..4 {
        let slope = eval(deriv, root);
        if slope.abs() < MULTIPLE_ROOT_TOL {
            break;
        }
        let step = eval(poly, root) / slope;
        let next = root - step;
        if !next.is_finite() || next < lo - 1e-9 || next > hi + 1e-9 {
            break;
        }
        root = next;
        if step.abs() <= f64::EPSILON * (1.0 + root.abs()) {
            break;
        }
    }
    root
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_roots_of_factored_cubic() {
        // (y-1)(y+2)(y-3) = y^3 - 2y^2 - 5y + 6
        let poly = [6.0, -5.0, -2.0, 1.0];
        let roots = real_roots(&poly, -10.0, 10.0, 1e-10);
        assert_eq!(roots.len(), 3);
        for (root, expected) in roots.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((root - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn finds_double_root_without_sign_change() {
        // y^2 (y+1): double root at 0, simple at -1.
        let poly = [0.0, 0.0, 1.0, 1.0];
        let roots = real_roots(&poly, -10.0, 10.0, 1e-10);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 1.0).abs() < 1e-12);
        assert!(roots[1].abs() < 1e-10);
        assert_eq!(multiplicity(&poly, 0.0), 2);
        assert_eq!(multiplicity(&poly, -1.0), 1);
    }

    #[test]
    fn triple_root() {
        let poly = [0.0, 0.0, 0.0, 1.0];
        let roots = real_roots(&poly, -10.0, 10.0, 1e-10);
        assert_eq!(roots, vec![0.0]);
        assert_eq!(multiplicity(&poly, 0.0), 3);
    }

    #[test]
    fn respects_interval_and_degenerate_inputs() {
        let poly = [6.0, -5.0, -2.0, 1.0];
        let roots = real_roots(&poly, 0.0, 2.0, 1e-10);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.0).abs() < 1e-12);
        assert!(real_roots(&[5.0], -1.0, 1.0, 1e-10).is_empty());
        assert!(real_roots(&[0.0, 0.0], -1.0, 1.0, 1e-10).is_empty());
    }

    #[test]
    fn simple_roots_are_polished_to_machine_precision() {
        // y^2 + y^3 has the simple root -1 exactly.
        let poly = [0.0, 0.0, 1.0, 1.0];
        let roots = real_roots(&poly, -10.0, -0.5, 1e-10);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn fig2_cubic_counts() {
        // y^3 + y^2 + 1: exactly one real root near -1.4656.
        let one = real_roots(&[1.0, 0.0, 1.0, 1.0], -10.0, 10.0, 1e-10);
        assert_eq!(one.len(), 1);
        assert!((one[0] + 1.465571).abs() < 1e-5);
        // y^3 + y^2 - 0.02: three real roots.
        let three = real_roots(&[-0.02, 0.0, 1.0, 1.0], -10.0, 10.0, 1e-10);
        assert_eq!(three.len(), 3);
    }
}
