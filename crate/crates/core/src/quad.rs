//! Adaptive quadrature used as a second opinion against closed forms.
//!
//! Adaptive Simpson with the usual Richardson error estimate. The integrands
//! here (trig products, sine powers) are smooth on each panel once split at
//! their zeros, so Simpson converges fast; this is deliberately boring
//! machinery that shares no code with the exact antiderivative paths it
//! cross-checks.

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`, with a recursion-depth cap.
///
/// The first few bisection levels are forced unconditionally: integrands
/// whose zeros sit at dyadic fractions of the interval (exactly the products
/// of `sin(2^k x)` this crate cares about) can make every early sample point
/// vanish, and an error estimate of `0 - 0` must not be trusted there.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 48, 6)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    force: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || (force == 0 && delta.abs() <= 15.0 * tol) {
        left + right + delta / 15.0
    } else {
        let force = force.saturating_sub(1);
        adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, force)
            + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, force)
    }
}

/// Integrate over `[a, b]` split at the given interior breakpoints
/// (typically zeros of the integrand, where |.| has kinks).
pub fn integrate_split<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> f64 {
    let mut points: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > a && p < b).collect();
    points.sort_by(|p, q| p.partial_cmp(q).unwrap());
    points.dedup();
    let mut total = 0.0;
    let mut lo = a;
    let per_panel = tol / (points.len() + 1) as f64;
    for &p in &points {
        total += integrate(f, lo, p, per_panel);
        lo = p;
    }
    total + integrate(f, lo, b, per_panel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_sine_exactly_enough() {
        let v = integrate(&|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn integrates_polynomial() {
        // Simpson is exact on cubics up to rounding.
        let v = integrate(&|x: f64| x * x * x - x, 0.0, 2.0, 1e-13);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn split_handles_absolute_value_kinks() {
        // int_0^pi |sin x sin 2x| dx = 4/3, with a kink at pi/2.
        let f = |x: f64| (x.sin() * (2.0 * x).sin()).abs();
        let v = integrate_split(&f, 0.0, PI, &[PI / 2.0], 1e-12);
        assert!((v - 4.0 / 3.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn oscillatory_integrand() {
        // int_0^pi sin^2(20 x) dx = pi/2
        let v = integrate(&|x: f64| (20.0 * x).sin().powi(2), 0.0, PI, 1e-11);
        assert!((v - PI / 2.0).abs() < 1e-9);
    }
}
