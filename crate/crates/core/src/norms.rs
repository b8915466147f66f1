//! Sup, L1, and L2 norms of `P_{r,n}(x) = |sin x sin rx ... sin r^n x|`.
//!
//! Sup norms: for odd `r` the sup is exactly 1 (attained at `pi/2`, where
//! every factor is `+-1`); for even `r` it is sandwiched between
//! `cos(pi/(2r+2))^{n+1}` and `cos(pi/(2r+2))^n`, the lower endpoint being
//! the value at the witness `x0 = pi floor((r+1)/2) / (r+1)`, at which
//! `|sin r^k x0| = |sin x0|` for every `k`. The search is a dense grid plus
//! golden-section refinement, with the witness value always included as a
//! candidate (its closed form is exact, while `f64` evaluation of
//! `sin(r^k x)` at huge arguments is not).
//!
//! L1 norm of the dyadic product: `P_n` changes sign exactly at the points
//! `j pi / 2^n`, and on each sign-constant interval the folded expansion
//! integrates in closed form (`sum +- sin/cos((2t+1)x)/(2t+1)`), so
//! `||P_n||_1` is a finite exact sum up to rounding; an adaptive-quadrature
//! second opinion guards the path. The growth rate `rho` is fitted by least
//! squares on `log ||P_n||_1`.
//!
//! L2 norm: when all `2^{N+1}` signed sums `sum +-lambda_q` are pairwise
//! distinct ("admissible"), the expansion of `prod sin(lambda_q x)` over the
//! `2^N` distinct frequencies is orthogonal on `(0, pi)` and Parseval gives
//! exactly
//!
//! ```text
//! (1/pi) int_0^pi prod_q sin^2(lambda_q x) dx = 1 / 2^{N+1}   (N+1 factors)
//! ```
//!
//! (each `+-` frequency pair is one basis function, so there are `2^N`
//! orthogonal terms of squared coefficient `2^{-2N}`, not `2^{N+1}`), and
//! Cauchy-Schwarz turns that into `int_0^pi |prod sin| <= pi / 2^{(N+1)/2}`.
//! Both constants are pinned by the quadrature cross-checks in the tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::quad;
use crate::trigprod::{expansion_for_factors, Basis};
use crate::{Error, Result};

/// Endpoint tolerance for bound sandwiches.
pub const BOUND_TOL: f64 = 1e-9;

/// Grid cap for the sup search.
pub const GRID_CAP: usize = 1 << 22;

/// One verified inequality `lower <= value <= upper`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub passed: bool,
}

impl BoundCheck {
    fn new(name: impl Into<String>, lower: f64, value: f64, upper: f64) -> Self {
        let passed = lower <= value && value <= upper;
        BoundCheck { name: name.into(), lower, value, upper, passed }
    }
}

/// Which weight family a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightFamily {
    /// `lambda_k = r^k`.
    Dyadic { r: u32 },
    /// Explicit weight list.
    Generic,
}

/// Norm estimates for one product, with bound-sandwich verdicts.
///
/// `l2_exact` is `(1/pi) int_0^pi prod sin^2`, an exact rational rendered as
/// `p/q`. Only the fields relevant to the request are populated.
#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    pub family: WeightFamily,
    pub factor_count: u32,
    pub sup_estimate: Option<f64>,
    pub argmax: Option<f64>,
    pub l1_estimate: Option<f64>,
    pub l1_error_bound: Option<f64>,
    pub l2_exact: Option<String>,
    pub bound_checks: Vec<BoundCheck>,
}

fn eval_abs_product(r: u32, n: u32, x: f64) -> f64 {
    let mut acc = 1.0f64;
    let mut scale = 1.0f64;
    for _ in 0..=n {
        acc *= (scale * x).sin().abs();
        scale *= r as f64;
    }
    acc
}

/// Golden-section maximization on `[a, b]`.
fn golden_refine(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Witness `x0 = pi floor((r+1)/2) / (r+1)` for even `r`, at which every
/// `|sin r^k x0|` equals `|sin x0|`.
///
/// The equality is verified internally through exact residue reduction:
/// `r = -1 (mod r+1)`, so `r^k w = +-w (mod r+1)` and the sine magnitude is
/// invariant; direct `f64` evaluation of `sin(r^k x0)` would drown in
/// argument-reduction error long before `k = 20`.
pub fn x0_witness(r: u32) -> Result<f64> {
    if r % 2 != 0 || r < 2 {
        return Err(Error::domain("x0_witness: r must be even and >= 2 (odd r attains sup 1 at pi/2)"));
    }
    let w = ((r + 1) / 2) as u64;
    let modulus = (r + 1) as u64;
    let base_value = (std::f64::consts::PI * w as f64 / modulus as f64).sin().abs();
    let mut rk_mod = 1u64;
    for k in 0..=20u32 {
        let residue = (rk_mod * w) % modulus;
        let value = (std::f64::consts::PI * residue as f64 / modulus as f64).sin().abs();
        if (value - base_value).abs() > 1e-12 {
            return Err(Error::SearchFailure(format!(
                "x0_witness: |sin(r^{k} x0)| deviates from |sin x0| by {}",
                (value - base_value).abs()
            )));
        }
        rk_mod = (rk_mod * r as u64) % modulus;
    }
    Ok(std::f64::consts::PI * w as f64 / modulus as f64)
}

/// Global maximum of `|sin x sin rx ... sin r^n x|` over `(0, pi)`.
///
/// Dense grid (at least `64 r^n` points, capped at `2^22`) + golden-section
/// refinement of the best 32 brackets, with the exact witness values merged
/// in: `1` at `pi/2` for odd `r`, `cos(pi/(2r+2))^{n+1}` at `x0` for even
/// `r`. Bound checks encode the odd-r equality and the even-r sandwich, and
/// for `r = 2` additionally the `(sqrt3/2)^n` bound with its `pi/3` witness.
pub fn sup_norm(r: u32, n: u32) -> Result<NormReport> {
    if r < 2 {
        return Err(Error::domain("sup_norm: r must be >= 2"));
    }
    if n > 16 {
        return Err(Error::resource("sup_norm: n above 16"));
    }
    let f = |x: f64| eval_abs_product(r, n, x);
    let pi = std::f64::consts::PI;

    let wanted = (r as f64).powi(n as i32) * 64.0;
    let grid_points = if wanted >= GRID_CAP as f64 { GRID_CAP } else { (wanted as usize).max(4096) };
    let step = pi / (grid_points as f64 + 1.0);
    let values: Vec<f64> = (1..=grid_points)
        .into_par_iter()
        .map(|i| f(i as f64 * step))
        .collect();

    // Local maxima on the grid, best 32 refined.
    let mut peaks: Vec<(usize, f64)> = Vec::new();
    for i in 1..grid_points.saturating_sub(1) {
        if values[i] >= values[i - 1] && values[i] >= values[i + 1] {
            peaks.push((i, values[i]));
        }
    }
    if peaks.is_empty() {
        // Degenerate grid (can only happen with a monotone sampling, which a
        // product of sines on (0, pi) never is at these densities).
        return Err(Error::SearchFailure(
            "sup_norm: no interior maximum bracketed on the grid".into(),
        ));
    }
    peaks.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    peaks.truncate(32);

    let mut best_x = 0.0f64;
    let mut best_v = f64::MIN;
    for &(i, _) in &peaks {
        let a = (i as f64 - 1.0) * step;
        let b = (i as f64 + 1.0) * step;
        let (x, v) = golden_refine(&f, a, b);
        if v > best_v {
            best_v = v;
            best_x = x;
        }
    }

    // Merge exact witness values (true values of |P|, free of large-argument
    // sine error).
    let mut bound_checks = Vec::new();
    if r % 2 == 1 {
        let witness = pi / 2.0;
        if 1.0 >= best_v {
            best_v = 1.0;
            best_x = witness;
        }
        bound_checks.push(BoundCheck::new(
            "odd-r-sup-equals-one",
            1.0 - BOUND_TOL,
            best_v,
            1.0 + BOUND_TOL,
        ));
    } else {
        let x0 = x0_witness(r)?;
        let base = (pi / (2.0 * (r as f64 + 1.0))).cos();
        let lower = base.powi(n as i32 + 1);
        let upper = base.powi(n as i32);
        if lower >= best_v {
            best_v = lower;
            best_x = x0;
        }
        bound_checks.push(BoundCheck::new(
            "even-r-sandwich",
            lower - BOUND_TOL,
            best_v,
            upper + BOUND_TOL,
        ));
        if r == 2 {
            let root3_half = 3f64.sqrt() / 2.0;
            bound_checks.push(BoundCheck::new(
                "gelfond-sqrt3-over-2",
                root3_half.powi(n as i32 + 1) - BOUND_TOL,
                best_v,
                root3_half.powi(n as i32) + BOUND_TOL,
            ));
            // Dual route on the witness: direct f64 product at pi/3 vs the
            // closed form (sqrt3/2)^{n+1}.
            let direct = f(pi / 3.0);
            bound_checks.push(BoundCheck::new(
                "pi-over-3-witness",
                root3_half.powi(n as i32 + 1) - BOUND_TOL,
                direct,
                root3_half.powi(n as i32 + 1) + BOUND_TOL,
            ));
        }
    }

    debug_assert!(best_x > 0.0 && best_x < pi);
    Ok(NormReport {
        family: WeightFamily::Dyadic { r },
        factor_count: n + 1,
        sup_estimate: Some(best_v),
        argmax: Some(best_x),
        l1_estimate: None,
        l1_error_bound: None,
        l2_exact: None,
        bound_checks,
    })
}

/// `||P_n||_1 = int_0^pi |sin x sin 2x ... sin 2^n x| dx`, exactly.
///
/// The antiderivative of the folded expansion is evaluated at the `2^n + 1`
/// sign-change points `j pi / 2^n`; the interval integrals are summed in
/// absolute value. All trig arguments are multiples of `pi / 2^n`, so the
/// needed sines live in a table of period `2^{n+1}` and every endpoint sum
/// is `2^n` table lookups. The returned error bound covers floating-point
/// accumulation only; the formula itself is exact.
pub fn l1_norm(n: u32) -> Result<(f64, f64)> {
    if n > 20 {
        return Err(Error::resource("l1_norm: n above 20 (2^{2n} work)"));
    }
    let factors = n + 1;
    let expansion = expansion_for_factors(factors);
    let terms: Vec<(f64, u64)> =
        expansion.terms.iter().map(|t| (t.sign as f64 / t.frequency as f64, t.frequency as u64)).collect();

    let intervals = 1u64 << n;
    let mask = (intervals << 1) - 1; // arguments live mod 2^{n+1}
    let pi = std::f64::consts::PI;

    // sin(k pi / 2^n) for k < 2^{n+1}
    let table: Vec<f64> = (0..(intervals << 1)).map(|k| (k as f64 * pi / intervals as f64).sin()).collect();
    // for sin basis the antiderivative needs cosines: cos t = sin(t + pi/2),
    // i.e. an index offset of 2^{n-1} (n = 0 falls back to direct eval).
    let cos_offset = if n == 0 { 0 } else { intervals >> 1 };

    let antiderivative = |i: u64| -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for &(coeff, freq) in &terms {
            let idx = (freq * i) & mask;
            let g = match expansion.basis {
                // integral of cos(f x) is sin(f x)/f
                Basis::Cos => table[idx as usize],
                // integral of sin(f x) is -cos(f x)/f
                Basis::Sin => {
                    if n == 0 {
                        -((freq * i) as f64 * pi / intervals as f64).cos()
                    } else {
                        -table[((idx + cos_offset) & mask) as usize]
                    }
                }
            };
            let value = coeff * g;
            let y = value - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    };

    let endpoint_values: Vec<f64> =
        (0..=intervals).into_par_iter().map(antiderivative).collect();

    let mut total = 0.0f64;
    for i in 0..intervals as usize {
        total += (endpoint_values[i + 1] - endpoint_values[i]).abs();
    }
    total *= expansion.amplitude;

    let g_magnitude: f64 =
        expansion.amplitude * terms.iter().map(|&(c, _)| c.abs()).sum::<f64>();
    let error_bound = (1u64 << (n + 2).min(63)) as f64 * f64::EPSILON * g_magnitude.max(1.0);
    Ok((total, error_bound))
}

/// Adaptive-quadrature second opinion on `||P_n||_1` (independent of the
/// antiderivative path).
pub fn l1_norm_quadrature(n: u32, tol: f64) -> Result<f64> {
    if n > 12 {
        return Err(Error::resource("l1_norm_quadrature: n above 12"));
    }
    let pi = std::f64::consts::PI;
    let breakpoints: Vec<f64> = (1..(1u64 << n)).map(|j| j as f64 * pi / (1u64 << n) as f64).collect();
    let f = |x: f64| eval_abs_product(2, n, x);
    Ok(quad::integrate_split(&f, 0.0, pi, &breakpoints, tol))
}

/// True iff all `2^{N+1}` signed sums `sum_q +-lambda_q` are pairwise
/// distinct.
///
/// Only the `2^N` sums with the first sign fixed positive are enumerated:
/// the full set is that half together with its negation, so distinctness is
/// the half being duplicate-free and disjoint from its own mirror.
pub fn admissible(lambda: &[u64]) -> Result<bool> {
    let len = lambda.len();
    if len == 0 {
        return Err(Error::domain("admissible: empty weight list"));
    }
    if len > 24 {
        return Err(Error::resource("admissible: length above 24"));
    }
    if lambda.iter().any(|&l| l == 0 || l > (1 << 40)) {
        return Err(Error::domain("admissible: weights must be in [1, 2^40]"));
    }
    let half = 1u64 << (len - 1);
    let mut sums: Vec<i64> = Vec::with_capacity(half as usize);
    for mask in 0..half {
        // epsilon_0 = +1; bit q of mask decides epsilon_{q+1}
        let mut v = lambda[0] as i64;
        for (q, &l) in lambda.iter().enumerate().skip(1) {
            if (mask >> (q - 1)) & 1 == 1 {
                v += l as i64;
            } else {
                v -= l as i64;
            }
        }
        sums.push(v);
    }
    sums.sort_unstable();
    if sums.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    // disjoint from its negation: binary-search each -s
    for &s in &sums {
        if sums.binary_search(&-s).is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `(1/pi) int_0^pi prod_q kind^2(lambda_q x) dx = 1 / 2^{N+1}` for an
/// admissible `(N+1)`-tuple, by Parseval over the `2^N` distinct orthogonal
/// frequencies.
pub fn l2_norm(lambda: &[u64], kind: L2Kind) -> Result<BigRational> {
    if !admissible(lambda)? {
        return Err(Error::domain("l2_norm: weights are not admissible (Parseval form invalid)"));
    }
    let _ = kind; // same collapsed value for sin and cos products
    Ok(BigRational::new(BigInt::from(1), BigInt::from(1) << lambda.len()))
}

/// Product flavor for the L2 computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum L2Kind {
    Sin,
    Cos,
}

/// `l2_norm` as a double (the value is a power of two, so the conversion is
/// exact for any practical factor count).
pub fn l2_norm_f64(lambda: &[u64], kind: L2Kind) -> Result<f64> {
    l2_norm(lambda, kind)?;
    Ok(0.5f64.powi(lambda.len() as i32))
}

/// Quadrature route to the same quantity: `(1/pi) int_0^pi prod kind^2`.
///
/// Split at the zeros of every factor; the dyadic weight families otherwise
/// park their zeros exactly on the bisection points of a naive adaptive rule.
pub fn l2_norm_quadrature(lambda: &[u64], kind: L2Kind, tol: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let f = |x: f64| -> f64 {
        lambda
            .iter()
            .map(|&l| {
                let t = l as f64 * x;
                let v = match kind {
                    L2Kind::Sin => t.sin(),
                    L2Kind::Cos => t.cos(),
                };
                v * v
            })
            .product()
    };
    let mut breakpoints = Vec::new();
    for &l in lambda {
        let steps = 2 * l; // zeros of sin and cos both live on the half-grid
        for k in 1..steps {
            breakpoints.push(k as f64 * pi / steps as f64);
        }
    }
    quad::integrate_split(&f, 0.0, pi, &breakpoints, tol) / pi
}

/// Verify `int_0^pi |prod sin(lambda_q x)| dx <= pi / 2^{(N+1)/2}` (the
/// Cauchy-Schwarz consequence of the Parseval value) by direct integration.
pub fn l1_upper_bound_check(lambda: &[u64]) -> Result<BoundCheck> {
    if !admissible(lambda)? {
        return Err(Error::domain("l1_upper_bound_check: weights not admissible"));
    }
    let total: u64 = lambda.iter().sum();
    if total > 1 << 16 {
        return Err(Error::resource("l1_upper_bound_check: sum of weights above 2^16"));
    }
    let pi = std::f64::consts::PI;
    // split at every factor zero k pi / lambda_j
    let mut breakpoints = Vec::new();
    for &l in lambda {
        for k in 1..l {
            breakpoints.push(k as f64 * pi / l as f64);
        }
    }
    let f = |x: f64| -> f64 { lambda.iter().map(|&l| (l as f64 * x).sin()).product::<f64>().abs() };
    let integral = quad::integrate_split(&f, 0.0, pi, &breakpoints, 1e-11);
    let bound = pi / 2f64.powf((lambda.len() as f64) / 2.0);
    Ok(BoundCheck::new("parseval-l1-bound", 0.0, integral, bound + BOUND_TOL))
}

/// Least-squares fit of `log ||P_n||_1` against `n`.
#[derive(Debug, Clone, Serialize)]
pub struct RhoFit {
    pub n_range: (u32, u32),
    pub slope: f64,
    pub rho_hat: f64,
    pub r_squared: f64,
    /// Eminyan's comparison constant `(2 + sqrt 2)^{1/4} / 2`.
    pub mu_eminyan: f64,
}

/// Fit the L1 growth rate `rho` over `n in [n_min, n_max]`.
pub fn rho_estimate(n_min: u32, n_max: u32) -> Result<RhoFit> {
    if !(4..18).contains(&n_min) || n_max <= n_min || n_max > 18 {
        return Err(Error::domain("rho_estimate: need 4 <= n_min < n_max <= 18"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in n_min..=n_max {
        let (value, _) = l1_norm(n)?;
        xs.push(n as f64);
        ys.push(value.ln());
    }
    let count = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(RhoFit {
        n_range: (n_min, n_max),
        slope,
        rho_hat: slope.exp(),
        r_squared,
        mu_eminyan: (2.0 + 2f64.sqrt()).powf(0.25) / 2.0,
    })
}

/// The envelope `phi(x) = (sin^2 x)^{r/(r+1)} (sin^2 rx)^{1/(r+1)}` from the
/// even-`r` sup bound; powers act on `sin^2`, which keeps the base
/// nonnegative.
pub fn phi(r: u32, x: f64) -> f64 {
    let rr = r as f64;
    let s = x.sin();
    let sr = (rr * x).sin();
    (s * s).powf(rr / (rr + 1.0)) * (sr * sr).powf(1.0 / (rr + 1.0))
}

/// Diagnostic log-derivative `sum_k r^k cot(r^k x)` of the dyadic product
/// (poles at every factor zero; never used as a root-finder).
pub fn log_derivative(r: u32, n: u32, x: f64) -> f64 {
    let mut acc = 0.0;
    let mut scale = 1.0f64;
    for _ in 0..=n {
        acc += scale * (scale * x).cos() / (scale * x).sin();
        scale *= r as f64;
    }
    acc
}

/// Full dyadic (`r = 2`) report for one `n`: sup + L1 + exact L2.
pub fn full_report(n: u32) -> Result<NormReport> {
    let mut report = sup_norm(2, n)?;
    let (l1, err) = l1_norm(n)?;
    report.l1_estimate = Some(l1);
    report.l1_error_bound = Some(err);
    let lambda: Vec<u64> = (0..=n as u64).map(|q| 1u64 << q).collect();
    let l2 = l2_norm(&lambda, L2Kind::Sin)?;
    report.l2_exact = Some(format!("{}/{}", l2.numer(), l2.denom()));
    Ok(report)
}

/// CSV rows `(n, sup, l1, l2)` for `n = 0..=n_max`.
pub fn norms_csv(n_max: u32) -> Result<String> {
    let mut out = String::from("n,sup,l1,l2\n");
    for n in 0..=n_max {
        let report = full_report(n)?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            n,
            report.sup_estimate.unwrap(),
            report.l1_estimate.unwrap(),
            report.l2_exact.as_deref().unwrap(),
        ));
    }
    Ok(out)
}
