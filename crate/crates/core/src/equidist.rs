//! Weyl sums of digit-weighted sequences and Pisot-number experiments.
//!
//! For `u(j, lambda) = sum_q e_q(j) lambda_q`, the mean of
//! `exp(2 pi i l u(j, lambda))` over a dyadic block `j < 2^n` factors as
//! `prod_{k<n} (1 + e^{2 pi i l lambda_k}) / 2`, so its modulus equals
//! `prod_{k<n} |cos(pi l lambda_k)|`. Whether the infinite product vanishes
//! is governed by nearest-integer norms: it is zero iff some
//! `l lambda_q = 1/2 (mod 1)` or `sum ||l lambda_q||^2` diverges. Those are
//! asymptotic statements; at finite scale this module reports evidence
//! (partial square sums, their trailing slope, star discrepancy trends),
//! never a theorem verdict.
//!
//! Quadratic Pisot numbers `theta^2 = t theta - n` get an exact path:
//! `x(theta^q + theta'^q)` obeys an integer recurrence, so
//! `||x theta^q|| = ||x theta'^q||` with `|theta'| < 1`, computed without
//! floating-point blowup. Other bases go through `fixed::Fixed` powers at a
//! precision of roughly `n log2(theta) + 64` bits.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::digits::bit_length;
use crate::fixed::Fixed;
use crate::{Error, Result};

/// Default divergence threshold for partial square sums.
pub const SQUARE_SUM_THRESHOLD: f64 = 25.0;

/// Tolerance for detecting `l lambda_q = 1/2 (mod 1)`.
pub const HALF_HIT_TOL: f64 = 1e-12;

/// Distance from `x` to the nearest integer, in `[0, 1/2]`.
pub fn nearest_int_norm(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Mean of `exp(2 pi i l u(j, lambda))` over `j < n`.
pub fn weyl_sum(ell: i64, n: u64, lambda: &[f64]) -> Result<Complex64> {
    if ell == 0 {
        return Err(Error::domain("weyl_sum: ell must be nonzero"));
    }
    if n == 0 {
        return Err(Error::domain("weyl_sum: need at least one sample"));
    }
    if bit_length(n - 1) > lambda.len() {
        return Err(Error::Domain(format!(
            "weyl_sum: N = {n} needs {} weights, got {}",
            bit_length(n - 1),
            lambda.len()
        )));
    }
    let tau = 2.0 * std::f64::consts::PI * ell as f64;
    // Incremental angles: u(j, lambda) mod 1 accumulated per bit would cost
    // popcount work per j; instead walk j in order, updating the angle by
    // the weight of the flipped low bits (Gray-code style is overkill, the
    // direct per-j sum over set bits is fine at these sizes).
    let mut acc = Complex64::zero();
    for j in 0..n {
        let mut u = 0.0f64;
        let mut rest = j;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            u += lambda[q].rem_euclid(1.0);
            rest &= rest - 1;
        }
        acc += Complex64::from_polar(1.0, tau * u);
    }
    Ok(acc / n as f64)
}

/// Report of one Weyl-sum vs cosine-product comparison.
#[derive(Debug, Clone, Serialize)]
pub struct WeylReport {
    pub ell: i64,
    pub n_samples: u64,
    pub weyl_mean_abs: f64,
    pub cos_product: f64,
    pub square_sum_partial: f64,
    /// Index `q` with `l lambda_q = 1/2 (mod 1)` within tolerance, if any.
    pub half_hit: Option<usize>,
    pub residual: f64,
}

/// Compare `|weyl_sum(l, 2^n, lambda)|` against `prod_{k<n} |cos(pi l
/// lambda_k)|`; the two are one identity evaluated two ways.
pub fn product_identity_check(ell: i64, n: u32, lambda: &[f64]) -> Result<WeylReport> {
    if n > 24 {
        return Err(Error::resource("product_identity_check: n above 24"));
    }
    if (lambda.len() as u32) < n {
        return Err(Error::Domain(format!(
            "product_identity_check: need {n} weights, got {}",
            lambda.len()
        )));
    }
    let mean = weyl_sum(ell, 1u64 << n, lambda)?;
    let mut product = 1.0f64;
    let mut square_sum = 0.0f64;
    let mut half_hit = None;
    for (q, &l) in lambda.iter().take(n as usize).enumerate() {
        let scaled = ell as f64 * l;
        product *= (std::f64::consts::PI * scaled).cos().abs();
        let norm = nearest_int_norm(scaled);
        square_sum += norm * norm;
        if half_hit.is_none() && (norm - 0.5).abs() <= HALF_HIT_TOL {
            half_hit = Some(q);
        }
    }
    let weyl_mean_abs = mean.norm();
    Ok(WeylReport {
        ell,
        n_samples: 1u64 << n,
        weyl_mean_abs,
        cos_product: product,
        square_sum_partial: square_sum,
        half_hit,
        residual: (weyl_mean_abs - product).abs(),
    })
}

/// Finite-scale verdict on whether `prod |cos(pi l lambda_q)|` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroVerdict {
    /// Some `l lambda_q = 1/2 (mod 1)` within tolerance: a factor is zero.
    DefinitelyZero,
    /// Partial square sums exceed the threshold and are still climbing.
    DivergingSquareSumEvidence,
    /// Neither signal at this prefix length.
    Inconclusive,
}

/// Classifier output with the evidence that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroClassification {
    pub verdict: ZeroVerdict,
    pub square_sum: f64,
    pub trailing_slope: f64,
    pub half_hit: Option<usize>,
}

/// Classify the vanishing evidence for `prod_q |cos(pi l lambda_q)|` from a
/// finite weight prefix.
///
/// `definitely_zero` needs an exact half-point hit; divergence evidence
/// needs the partial sums of `||l lambda_q||^2` above the threshold with a
/// positive trailing slope (mean increment over the last quarter of the
/// prefix). Everything else is inconclusive: the underlying dichotomy is a
/// statement about infinitely many weights and cannot be decided at finite
/// `q`.
pub fn zero_classifier(ell: i64, lambda_prefix: &[f64], threshold: f64) -> Result<ZeroClassification> {
    if ell == 0 {
        return Err(Error::domain("zero_classifier: ell must be nonzero"));
    }
    if lambda_prefix.is_empty() {
        return Err(Error::domain("zero_classifier: empty prefix"));
    }
    let q_len = lambda_prefix.len();
    let mut square_sum = 0.0f64;
    let mut half_hit = None;
    let mut norms = Vec::with_capacity(q_len);
    for (q, &l) in lambda_prefix.iter().enumerate() {
        let norm = nearest_int_norm(ell as f64 * l);
        if half_hit.is_none() && (norm - 0.5).abs() <= HALF_HIT_TOL {
            half_hit = Some(q);
        }
        norms.push(norm * norm);
        square_sum += norm * norm;
    }
    let tail = (q_len / 4).max(1);
    let trailing_slope = norms[q_len - tail..].iter().sum::<f64>() / tail as f64;

    let verdict = if half_hit.is_some() {
        ZeroVerdict::DefinitelyZero
    } else if square_sum > threshold && trailing_slope > 1e-6 {
        ZeroVerdict::DivergingSquareSumEvidence
    } else {
        ZeroVerdict::Inconclusive
    };
    Ok(ZeroClassification { verdict, square_sum, trailing_slope, half_hit })
}

/// A real quadratic integer `theta` with `theta^2 = trace * theta - norm`,
/// `theta > 1`, and conjugate strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadraticPisot {
    pub trace: i64,
    pub norm: i64,
}

impl QuadraticPisot {
    /// Validate the Pisot conditions exactly: discriminant positive,
    /// `theta > 1`, `|theta'| < 1`.
    pub fn new(trace: i64, norm: i64) -> Result<Self> {
        let disc = trace
            .checked_mul(trace)
            .and_then(|t2| t2.checked_sub(4 * norm))
            .ok_or_else(|| Error::domain("QuadraticPisot: trace/norm overflow"))?;
        if disc <= 0 {
            return Err(Error::domain("QuadraticPisot: complex conjugates (disc <= 0)"));
        }
        // theta = (t + sqrt(d))/2 > 1  <=>  sqrt(d) > 2 - t
        let sqrt_gt = |rhs: i64, d: i64| rhs < 0 || d > rhs * rhs;
        // theta' = (t - sqrt(d))/2 in (-1, 1)  <=>  t - 2 < sqrt(d) < t + 2
        let theta_gt_one = sqrt_gt(2 - trace, disc);
        let conj_lt_one = sqrt_gt(trace - 2, disc);
        let conj_gt_minus_one = trace + 2 > 0 && disc < (trace + 2) * (trace + 2);
        if !theta_gt_one {
            return Err(Error::domain("QuadraticPisot: theta <= 1"));
        }
        if !(conj_lt_one && conj_gt_minus_one) {
            return Err(Error::domain("QuadraticPisot: conjugate not inside the unit disk"));
        }
        Ok(QuadraticPisot { trace, norm })
    }

    pub const fn golden_ratio() -> Self {
        QuadraticPisot { trace: 1, norm: -1 }
    }

    /// `theta` at the requested precision.
    pub fn theta(&self, frac_bits: u32) -> Fixed {
        let disc = BigInt::from(self.trace) * BigInt::from(self.trace)
            - BigInt::from(4) * BigInt::from(self.norm);
        let sqrt_d = Fixed::from_bigint(disc, frac_bits).sqrt().expect("positive discriminant");
        sqrt_d
            .add(&Fixed::from_i64(self.trace, frac_bits))
            .mul(&Fixed::from_f64(0.5, frac_bits).unwrap())
    }

    /// Conjugate root `theta' = trace - theta`.
    pub fn conjugate(&self, frac_bits: u32) -> Fixed {
        Fixed::from_i64(self.trace, frac_bits).sub(&self.theta(frac_bits))
    }

    pub fn theta_f64(&self) -> f64 {
        let d = (self.trace * self.trace - 4 * self.norm) as f64;
        0.5 * (self.trace as f64 + d.sqrt())
    }
}

/// `||x theta^q||` for `q < count` via the exact integer recurrence
/// `t_{q+1} = trace * t_q - norm * t_{q-1}` on `t_q = x(theta^q + theta'^q)`.
///
/// Since `t_q` is an integer, `||x theta^q|| = ||x theta'^q||`, and the
/// conjugate power is computed in fixed point, so the result never loses the
/// fractional part to a huge integer part.
pub fn pisot_power_norms(p: &QuadraticPisot, x: i64, count: usize) -> Result<Vec<f64>> {
    if count > 500 {
        return Err(Error::resource("pisot_power_norms: count above 500"));
    }
    // 512 fractional bits keep |theta'|^q meaningful far past q = 200.
    let bits = 512u32;
    let conj = p.conjugate(bits);
    let mut out = Vec::with_capacity(count);
    let mut conj_pow = Fixed::from_i64(1, bits);
    for _ in 0..count {
        out.push(conj_pow.mul_i64(x).nearest_int_distance().to_f64());
        conj_pow = conj_pow.mul(&conj);
    }
    Ok(out)
}

/// Direct high-precision route to the same norms, used as the independent
/// cross-check: raise `theta` itself and reduce mod 1.
pub fn pisot_power_norms_direct(p: &QuadraticPisot, x: i64, count: usize, frac_bits: u32) -> Result<Vec<f64>> {
    if count > 500 {
        return Err(Error::resource("pisot_power_norms_direct: count above 500"));
    }
    let theta = p.theta(frac_bits);
    let mut out = Vec::with_capacity(count);
    let mut pow = Fixed::from_i64(1, frac_bits);
    for _ in 0..count {
        out.push(pow.mul_i64(x).nearest_int_distance().to_f64());
        pow = pow.mul(&theta);
    }
    Ok(out)
}

/// Worst residual of the Weyl-sum vs cosine-product identity over seeded
/// random draws (`n` up to `n_max`, weights uniform in `[-2, 2]`,
/// `ell in {1, -1, 2, 3, 5}`).
pub fn product_identity_batch(samples: u32, seed: u64, n_max: u32) -> Result<(u32, f64)> {
    use rand::Rng;
    use rand::SeedableRng;
    if n_max == 0 || n_max > 16 {
        return Err(Error::domain("product_identity_batch: n_max must be in [1, 16]"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let n = rng.gen_range(1u32..=n_max);
        let ell = [1i64, -1, 2, 3, 5][rng.gen_range(0..5)];
        let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let report = product_identity_check(ell, n, &lambda)?;
        worst = worst.max(report.residual);
    }
    Ok((samples, worst))
}

/// Star discrepancy of a mod-1 sample via the sorted-sample formula
/// `max_i max(i/N - x_(i), x_(i) - (i-1)/N)`.
pub fn star_discrepancy(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::domain("star_discrepancy: empty sample"));
    }
    let mut xs: Vec<f64> = samples.iter().map(|x| x.rem_euclid(1.0)).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut worst = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let up = (i as f64 + 1.0) / n - x;
        let down = x - i as f64 / n;
        worst = worst.max(up).max(down);
    }
    Ok(worst)
}

/// Brute-force `O(N^2)` star discrepancy: scan both one-sided limits of the
/// empirical CDF at every sample point. Test oracle for the sorted formula.
pub fn star_discrepancy_brute(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::domain("star_discrepancy_brute: empty sample"));
    }
    let xs: Vec<f64> = samples.iter().map(|x| x.rem_euclid(1.0)).collect();
    let n = xs.len() as f64;
    let mut worst = 0.0f64;
    for &t in &xs {
        let below = xs.iter().filter(|&&x| x < t).count() as f64;
        let at_or_below = xs.iter().filter(|&&x| x <= t).count() as f64;
        worst = worst.max((below / n - t).abs());
        worst = worst.max((at_or_below / n - t).abs());
    }
    // the supremum can also approach t -> 1 with CDF 1
    worst = worst.max(1.0 - xs.iter().cloned().fold(0.0, f64::max));
    Ok(worst)
}

/// Base for an equidistribution experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThetaSpec {
    /// Exact quadratic integer path.
    Quadratic(QuadraticPisot),
    /// `sqrt(k)` for a nonsquare integer `k >= 2`, in fixed point.
    SqrtInteger(u64),
    /// Arbitrary real `> 1` (taken exactly as the given double).
    Real(f64),
}

impl ThetaSpec {
    fn value(&self, frac_bits: u32) -> Result<Fixed> {
        match *self {
            ThetaSpec::Quadratic(p) => Ok(p.theta(frac_bits)),
            ThetaSpec::SqrtInteger(k) => {
                if k < 2 {
                    return Err(Error::domain("ThetaSpec: sqrt base must be >= 2"));
                }
                Ok(crate::fixed::sqrt_integer(k, frac_bits))
            }
            ThetaSpec::Real(v) => {
                if !(v > 1.0) {
                    return Err(Error::domain("ThetaSpec: theta must exceed 1"));
                }
                Fixed::from_f64(v, frac_bits)
            }
        }
    }

    fn approx(&self) -> f64 {
        match *self {
            ThetaSpec::Quadratic(p) => p.theta_f64(),
            ThetaSpec::SqrtInteger(k) => (k as f64).sqrt(),
            ThetaSpec::Real(v) => v,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            ThetaSpec::Quadratic(p) => format!("quadratic(trace={}, norm={})", p.trace, p.norm),
            ThetaSpec::SqrtInteger(k) => format!("sqrt({k})"),
            ThetaSpec::Real(v) => format!("real({v})"),
        }
    }
}

/// Everything one experiment produces. The raw samples ride along for CSV
/// dumps but stay out of the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub theta: String,
    pub x: f64,
    pub n: u32,
    pub sample_count: u64,
    pub discrepancy: f64,
    pub weyl: Vec<WeylReport>,
    pub classifier: ZeroClassification,
    #[serde(skip)]
    pub samples: Vec<f64>,
}

/// Compute `u(j, (x theta^q)_q) mod 1` for `j < 2^n` and report star
/// discrepancy, Weyl means for `ell in {1, 2, 3}`, and the zero-classifier
/// verdict on the weight prefix.
///
/// Weight fractional parts are produced in fixed point at
/// `ceil(n log2 theta) + 64` bits so `x theta^q mod 1` is trustworthy even
/// when `theta^q` is enormous, then folded into `f64` sums (each sample adds
/// at most `n` fractional parts, far inside `f64` headroom).
pub fn equidist_experiment(theta: ThetaSpec, x: f64, n: u32) -> Result<ExperimentReport> {
    if n == 0 || n > 20 {
        return Err(Error::domain("equidist_experiment: n must be in [1, 20]"));
    }
    if !x.is_finite() {
        return Err(Error::domain("equidist_experiment: x must be finite"));
    }
    let approx = theta.approx();
    let needed = (n as f64 * approx.log2()).ceil() as i64 + 64;
    let frac_bits: u32 = needed
        .try_into()
        .map_err(|_| Error::Precision("equidist_experiment: precision request overflow".into()))?;
    let theta_value = theta.value(frac_bits)?;
    let x_fixed = Fixed::from_f64(x, frac_bits)?;

    // lambda_q = frac(x theta^q), exact at frac_bits, then narrowed to f64.
    let mut weights = Vec::with_capacity(n as usize);
    let mut pow = Fixed::from_i64(1, frac_bits);
    for _ in 0..n {
        weights.push(x_fixed.mul(&pow).frac().to_f64());
        pow = pow.mul(&theta_value);
    }

    let sample_count = 1u64 << n;
    let mut samples = Vec::with_capacity(sample_count as usize);
    for j in 0..sample_count {
        let mut u = 0.0f64;
        let mut rest = j;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            u += weights[q];
            rest &= rest - 1;
        }
        samples.push(u.rem_euclid(1.0));
    }

    let discrepancy = star_discrepancy(&samples)?;
    let mut weyl = Vec::new();
    for ell in 1..=3i64 {
        weyl.push(product_identity_check(ell, n, &weights)?);
    }
    let classifier = zero_classifier(1, &weights, SQUARE_SUM_THRESHOLD)?;

    Ok(ExperimentReport {
        theta: theta.describe(),
        x,
        n,
        sample_count,
        discrepancy,
        weyl,
        classifier,
        samples,
    })
}

/// CSV dump of experiment samples for external plotting.
pub fn samples_csv(samples: &[f64]) -> String {
    let mut out = String::from("index,value\n");
    for (i, s) in samples.iter().enumerate() {
        out.push_str(&format!("{i},{s}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::u_value;
    use num_rational::BigRational;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn nearest_int_norm_values() {
        assert!((nearest_int_norm(2.7) - 0.3).abs() < 1e-15);
        assert!((nearest_int_norm(0.5) - 0.5).abs() < 1e-15);
        assert!((nearest_int_norm(-1.25) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn weyl_sum_thue_morse_cancellation() {
        // all lambda_q = 1/2, ell = 1: exp(pi i u) = (-1)^{s(j)}, sums to 0
        // over any dyadic block of length 2^n, n >= 1.
        for n in 1..=10u32 {
            let lambda = vec![0.5; n as usize];
            let mean = weyl_sum(1, 1 << n, &lambda).unwrap();
            assert!(mean.norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn weyl_sum_single_sample_is_one() {
        let mean = weyl_sum(1, 1, &[0.123]).unwrap();
        assert!((mean - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn weyl_sum_needs_enough_weights() {
        assert!(weyl_sum(1, 16, &[0.1, 0.2]).is_err());
        assert!(weyl_sum(0, 16, &[0.1; 4]).is_err());
    }

    #[test]
    fn product_identity_two_terms() {
        // n = 1: |cos(pi l lambda_0)| = |(1 + e^{2 pi i l lambda_0})/2|
        let report = product_identity_check(3, 1, &[0.377]).unwrap();
        assert!(report.residual < 1e-14);
    }

    #[test]
    fn product_identity_random_weights() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
        for trial in 0..50 {
            let n = rng.gen_range(1u32..=12);
            let ell = *[1i64, -1, 2, 3, 5].get(rng.gen_range(0..5)).unwrap();
            let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let report = product_identity_check(ell, n, &lambda).unwrap();
            assert!(report.residual < 1e-11, "trial {trial}: residual {}", report.residual);
        }
    }

    #[test]
    fn product_identity_large_block_linear_weights() {
        // lambda_q = q * 0.377 over a full 2^16 block: the Weyl-sum modulus
        // must equal the cosine product computed independently.
        let lambda: Vec<f64> = (0..16).map(|q| q as f64 * 0.377).collect();
        let report = product_identity_check(1, 16, &lambda).unwrap();
        assert!(report.residual < 1e-11, "residual {}", report.residual);
        let direct: f64 =
            (0..16).map(|q| (std::f64::consts::PI * q as f64 * 0.377).cos().abs()).product();
        assert!((report.cos_product - direct).abs() < 1e-14);
    }

    #[test]
    fn product_identity_half_weight_kills_both_sides() {
        let lambda = [0.25, 0.5, 0.75];
        let report = product_identity_check(1, 3, &lambda).unwrap();
        assert!(report.weyl_mean_abs < 1e-12);
        assert!(report.cos_product < 1e-12);
        assert_eq!(report.half_hit, Some(1));
    }

    #[test]
    fn weyl_shift_property_exact_on_rationals() {
        // u(2j, lambda) = u(j, T lambda) exactly for rational weights, hence
        // the even-index half of a Weyl sum over 2N terms is the Weyl sum of
        // the shifted weights over N terms.
        let lambda: Vec<BigRational> = (1..=6)
            .map(|k| BigRational::new(BigInt::from(k * k + 1), BigInt::from(7 * k)))
            .collect();
        for j in 0..(1u64 << 5) {
            let even = u_value(2 * j, &lambda).unwrap();
            let shifted = u_value(j, &lambda[1..]).unwrap();
            assert_eq!(even, shifted);
        }
    }

    #[test]
    fn classifier_half_point() {
        let c = zero_classifier(1, &[0.5; 8], SQUARE_SUM_THRESHOLD).unwrap();
        assert_eq!(c.verdict, ZeroVerdict::DefinitelyZero);
        assert_eq!(c.half_hit, Some(0));
    }

    #[test]
    fn classifier_golden_ratio_plateaus() {
        // ||phi^q|| decays geometrically; the square sums converge.
        let p = QuadraticPisot::golden_ratio();
        let norms = pisot_power_norms(&p, 1, 400).unwrap();
        let c = zero_classifier(1, &golden_weights(400), SQUARE_SUM_THRESHOLD).unwrap();
        assert_eq!(c.verdict, ZeroVerdict::Inconclusive);
        assert!(c.square_sum < 2.0, "square sum {}", c.square_sum);
        // trailing norms are essentially zero
        assert!(norms[350..].iter().all(|&v| v < 1e-30));

        fn golden_weights(count: usize) -> Vec<f64> {
            // q log2(phi) + margin bits so frac(phi^q) survives q = 400
            let bits = 512;
            let p = QuadraticPisot::golden_ratio();
            let theta = p.theta(bits);
            let mut pow = Fixed::from_i64(1, bits);
            let mut out = Vec::new();
            for _ in 0..count {
                out.push(pow.frac().to_f64());
                pow = pow.mul(&theta);
            }
            out
        }
    }

    #[test]
    fn classifier_sqrt_two_multiples_diverge() {
        // lambda_q = q sqrt(2): equidistributed norms, linear square sums.
        let lambda: Vec<f64> = (0..1000).map(|q| q as f64 * 2f64.sqrt()).collect();
        let c = zero_classifier(1, &lambda, SQUARE_SUM_THRESHOLD).unwrap();
        assert_eq!(c.verdict, ZeroVerdict::DivergingSquareSumEvidence);
        assert!(c.square_sum > SQUARE_SUM_THRESHOLD);
        assert!(c.trailing_slope > 0.01);
    }

    #[test]
    fn pisot_validation() {
        assert!(QuadraticPisot::new(1, -1).is_ok()); // golden ratio
        assert!(QuadraticPisot::new(2, -1).is_ok()); // 1 + sqrt 2
        assert!(QuadraticPisot::new(0, -2).is_err()); // sqrt 2: conjugate -sqrt 2
        assert!(QuadraticPisot::new(1, 1).is_err()); // complex roots
    }

    #[test]
    fn golden_power_norms_match_conjugate_decay() {
        let p = QuadraticPisot::golden_ratio();
        let norms = pisot_power_norms(&p, 1, 101).unwrap();
        // phi^4 = 6.854..., Lucas L_4 = 7, distance ~ 0.14590.
        assert!((norms[4] - 0.14589803375031546).abs() < 1e-12);
        let conj = (1.0 - (1.0 + 5f64.sqrt()) / 2.0).abs();
        for q in 10..=100usize {
            let expected = conj.powi(q as i32);
            assert!((norms[q] - expected).abs() < 1e-12, "q = {q}");
        }
    }

    #[test]
    fn pisot_norms_match_direct_high_precision() {
        let p = QuadraticPisot::new(2, -1).unwrap(); // 1 + sqrt 2
        let rec = pisot_power_norms(&p, 1, 201).unwrap();
        let direct = pisot_power_norms_direct(&p, 1, 201, 512).unwrap();
        for q in 0..=200usize {
            assert!((rec[q] - direct[q]).abs() < 1e-20, "q = {q}");
        }
        // Sum of squared norms stays below 1/2 (geometric decay, |theta'| = sqrt(2)-1).
        let sum: f64 = rec[..100].iter().map(|v| v * v).sum();
        assert!(sum < 0.5);
    }

    #[test]
    fn star_discrepancy_hand_cases() {
        assert!((star_discrepancy(&[0.25, 0.75]).unwrap() - 0.25).abs() < 1e-15);
        assert!((star_discrepancy(&[0.0]).unwrap() - 1.0).abs() < 1e-15);
        let n = 64;
        let lattice: Vec<f64> = (0..n).map(|k| (k as f64 + 0.5) / n as f64).collect();
        assert!((star_discrepancy(&lattice).unwrap() - 0.5 / n as f64).abs() < 1e-12);
    }

    #[test]
    fn star_discrepancy_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let len = rng.gen_range(1usize..=12);
            let xs: Vec<f64> = (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let fast = star_discrepancy(&xs).unwrap();
            let brute = star_discrepancy_brute(&xs).unwrap();
            assert!((fast - brute).abs() < 1e-12, "{xs:?}");
        }
    }

    #[test]
    fn star_discrepancy_invariant_under_integer_shift() {
        let xs = [0.1, 0.37, 0.99, 0.5];
        let shifted: Vec<f64> = xs.iter().map(|x| x + 3.0).collect();
        assert_eq!(star_discrepancy(&xs).unwrap(), star_discrepancy(&shifted).unwrap());
    }

    #[test]
    fn experiment_zero_x_degenerates() {
        let report = equidist_experiment(ThetaSpec::SqrtInteger(2), 0.0, 6).unwrap();
        assert!((report.discrepancy - 1.0).abs() < 1e-15);
    }

    #[test]
    fn experiment_contrast_golden_vs_sqrt2() {
        let golden = equidist_experiment(
            ThetaSpec::Quadratic(QuadraticPisot::golden_ratio()),
            1.0,
            14,
        )
        .unwrap();
        let sqrt2 = equidist_experiment(ThetaSpec::SqrtInteger(2), 1.0, 14).unwrap();
        assert!(golden.discrepancy > 0.05, "golden D* = {}", golden.discrepancy);
        assert!(
            golden.discrepancy > 3.0 * sqrt2.discrepancy,
            "golden {} vs sqrt2 {}",
            golden.discrepancy,
            sqrt2.discrepancy
        );
    }

    #[test]
    fn experiment_sqrt2_discrepancy_decreases() {
        let small = equidist_experiment(ThetaSpec::SqrtInteger(2), 1.0, 10).unwrap();
        let large = equidist_experiment(ThetaSpec::SqrtInteger(2), 1.0, 16).unwrap();
        assert!(
            large.discrepancy < small.discrepancy,
            "D* at n=16 ({}) should be below D* at n=10 ({})",
            large.discrepancy,
            small.discrepancy
        );
    }

    #[test]
    fn experiment_weyl_reports_satisfy_identity() {
        let report = equidist_experiment(ThetaSpec::Real(1.5), 1.0, 10).unwrap();
        for w in &report.weyl {
            assert!(w.residual < 1e-10, "ell = {}", w.ell);
        }
    }
}
