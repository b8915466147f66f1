//! The fundamental identity and its exponential generalizations.
//!
//! Exact layer: `product_poly` expands `prod_{k<n} (1 + a X^(2^k))` as a
//! bivariate integer polynomial in `(a, X)` and `sum_poly` builds
//! `sum_{j<2^n} a^s(j) X^j` directly from digit sums; the two must agree
//! coefficientwise. Specializing `a = +1 / -1` gives the Euler and
//! Thue-Morse corollaries, checked exactly.
//!
//! Numeric layer: the exponential forms
//!
//! ```text
//! prod_{k<n} (1 + a exp(lambda_k z))        = sum_{j<2^n} a^s(j) exp(u(j,lambda) z)
//! a^n prod_{k<n} (exp(lambda_k z) + a^{-1} exp(-lambda_k z))
//!                                           = sum_{j<2^n} a^s(j) exp((sum_q sigma_q(j) lambda_q) z)
//! ```
//!
//! are identities of entire functions; both sides are finite sums/products of
//! exponentials, so verifying pointwise equality at sampled complex points
//! (plus exactness of the polynomial layer) covers them. Residuals are
//! compared at relative tolerance `1e-10` by default.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digits::{digit_sum, signed_u_value, u_value};
use crate::{Error, Result};

/// Factor-count cap for the exact polynomial expansions (2^n monomials).
pub const POLY_CAP: u32 = 20;

/// Default relative tolerance for the numeric identity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Sparse polynomial in two indeterminates `(a, X)` with exact integer
/// coefficients, keyed by `(deg_a, deg_X)`. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    coeffs: BTreeMap<(u32, u64), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::default();
        p.coeffs.insert((0, 0), BigInt::one());
        p
    }

    /// Add `c * a^da * X^dx`, dropping the monomial if it cancels to zero.
    pub fn add_term(&mut self, da: u32, dx: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((da, dx)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(da, dx));
        }
    }

    pub fn coeff(&self, da: u32, dx: u64) -> BigInt {
        self.coeffs.get(&(da, dx)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u64), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree_a(&self) -> u32 {
        self.coeffs.keys().map(|&(da, _)| da).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u64 {
        self.coeffs.keys().map(|&(_, dx)| dx).max().unwrap_or(0)
    }

    /// Multiply in place by `(1 + a X^(2^k))`.
    fn mul_binomial(&mut self, k: u32) {
        let shift = 1u64 << k;
        let mut extra = BTreeMap::new();
        for (&(da, dx), c) in &self.coeffs {
            extra.insert((da + 1, dx + shift), c.clone());
        }
        for ((da, dx), c) in extra {
            self.add_term(da, dx, c);
        }
    }

    /// Substitute `a := value` (an integer), collapsing to a univariate
    /// polynomial in `X` represented as exponent -> coefficient.
    pub fn specialize_a(&self, value: i64) -> BTreeMap<u64, BigInt> {
        let a = BigInt::from(value);
        let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&(da, dx), c) in &self.coeffs {
            let scaled = c * a.pow(da);
            let entry = out.entry(dx).or_insert_with(BigInt::zero);
            *entry += scaled;
            if entry.is_zero() {
                out.remove(&dx);
            }
        }
        out
    }
}

/// Outcome of one identity check, serializable as a JSON report row.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheckReport {
    pub identity: String,
    pub n: u32,
    pub samples: u32,
    pub max_residual: f64,
    pub passed: bool,
}

impl IdentityCheckReport {
    pub fn new(identity: impl Into<String>, n: u32, samples: u32, max_residual: f64, tol: f64) -> Self {
        IdentityCheckReport {
            identity: identity.into(),
            n,
            samples,
            max_residual,
            passed: max_residual <= tol,
        }
    }
}

fn check_cap(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("factor count must be positive"));
    }
    if n > POLY_CAP {
        return Err(Error::Resource(format!(
            "factor count {n} exceeds polynomial cap {POLY_CAP}"
        )));
    }
    Ok(())
}

/// Exact expansion of `prod_{0 <= k < n} (1 + a X^(2^k))`.
pub fn product_poly(n: u32) -> Result<BivariatePoly> {
    check_cap(n)?;
    let mut p = BivariatePoly::one();
    for k in 0..n {
        p.mul_binomial(k);
    }
    Ok(p)
}

/// Exact construction of `sum_{0 <= j < 2^n} a^s(j) X^j` from digit sums.
pub fn sum_poly(n: u32) -> Result<BivariatePoly> {
    check_cap(n)?;
    let mut p = BivariatePoly::zero();
    for j in 0..(1u64 << n) {
        p.add_term(digit_sum(j), j, BigInt::one());
    }
    Ok(p)
}

/// Exact check of the `a = +1 / -1` specializations.
///
/// At `a = +1` the product collapses to the geometric sum
/// `(1 - X^(2^n)) / (1 - X) = sum_{j<2^n} X^j`; at `a = -1` it is the
/// Thue-Morse signed sum `sum_{j<2^n} (-1)^s(j) X^j`. Both comparisons are
/// exact big-integer equalities, so the report's residual is 0 or 1.
pub fn check_corollary(n: u32, a: i8) -> Result<IdentityCheckReport> {
    if a != 1 && a != -1 {
        return Err(Error::domain("check_corollary: a must be +1 or -1"));
    }
    let specialized = product_poly(n)?.specialize_a(a as i64);
    let mut expected: BTreeMap<u64, BigInt> = BTreeMap::new();
    for j in 0..(1u64 << n) {
        let c = if a == 1 { BigInt::one() } else { BigInt::from(thue_morse_i64(j)) };
        expected.insert(j, c);
    }
    let passed = specialized == expected;
    Ok(IdentityCheckReport {
        identity: format!("corollary-a{}", if a == 1 { "+1" } else { "-1" }),
        n,
        samples: 1,
        max_residual: if passed { 0.0 } else { 1.0 },
        passed,
    })
}

fn thue_morse_i64(j: u64) -> i64 {
    crate::digits::thue_morse(j) as i64
}

/// Divide a univariate polynomial (exponent -> coefficient) by `(1 - X)`,
/// returning the quotient, or `None` when the division leaves a remainder.
///
/// With `p = (1 - X) q`, the quotient coefficients are the prefix sums
/// `q_i = sum_{k <= i} p_k`, and divisibility is equivalent to all
/// coefficients summing to zero.
pub fn divide_by_one_minus_x(p: &BTreeMap<u64, BigInt>) -> Option<BTreeMap<u64, BigInt>> {
    if p.is_empty() {
        return Some(BTreeMap::new());
    }
    let deg = *p.keys().max().unwrap();
    let mut quotient = BTreeMap::new();
    let mut acc = BigInt::zero();
    for i in 0..=deg {
        acc += p.get(&i).cloned().unwrap_or_else(BigInt::zero);
        if i < deg && !acc.is_zero() {
            quotient.insert(i, acc.clone());
        }
    }
    // acc now holds p(1); divisibility by (1 - X) means p(1) = 0.
    if acc.is_zero() {
        Some(quotient)
    } else {
        None
    }
}

fn residual_report(
    identity: &str,
    n: u32,
    samples: u32,
    lhs: Complex64,
    rhs: Complex64,
    worst: &mut f64,
    tol: f64,
) -> IdentityCheckReport {
    let scale = 1.0 + lhs.norm().max(rhs.norm());
    let residual = (lhs - rhs).norm() / scale;
    *worst = worst.max(residual);
    IdentityCheckReport::new(identity, n, samples, *worst, tol)
}

/// Evaluate both sides of the exponential step identity at one complex point
/// and report the relative residual.
///
/// LHS: `prod_{k<n} (1 + a exp(lambda_k z))`; RHS: brute-force summation of
/// `a^s(j) exp(u(j, lambda) z)` over `j < 2^n`.
pub fn check_step_identity(
    n: u32,
    a: Complex64,
    lambda: &[Complex64],
    z: Complex64,
    tol: f64,
) -> Result<IdentityCheckReport> {
    check_cap(n)?;
    if lambda.len() < n as usize {
        return Err(Error::Domain(format!(
            "check_step_identity: need {n} weights, got {}",
            lambda.len()
        )));
    }
    let mut lhs = Complex64::one();
    for k in 0..n as usize {
        lhs *= Complex64::one() + a * (lambda[k] * z).exp();
    }
    let mut rhs = Complex64::zero();
    for j in 0..(1u64 << n) {
        let u = u_value(j, &lambda[..n as usize]).unwrap();
        rhs += a.powu(digit_sum(j)) * (u * z).exp();
    }
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(Error::NumericRange(
            "check_step_identity: exponential overflow".into(),
        ));
    }
    let mut worst = 0.0;
    Ok(residual_report("step", n, 1, lhs, rhs, &mut worst, tol))
}

/// Evaluate both sides of the symmetrized identity
/// `a^n prod (exp(lambda_k z) + a^{-1} exp(-lambda_k z))
///  = sum_j a^s(j) exp((sum_q sigma_q(j) lambda_q) z)`.
pub fn check_general_identity(
    n: u32,
    a: Complex64,
    lambda: &[Complex64],
    z: Complex64,
    tol: f64,
) -> Result<IdentityCheckReport> {
    check_cap(n)?;
    if a.is_zero() {
        return Err(Error::domain("check_general_identity: a must be nonzero"));
    }
    if lambda.len() < n as usize {
        return Err(Error::Domain(format!(
            "check_general_identity: need {n} weights, got {}",
            lambda.len()
        )));
    }
    let a_inv = Complex64::one() / a;
    let mut lhs = a.powu(n);
    for k in 0..n as usize {
        lhs *= (lambda[k] * z).exp() + a_inv * (-lambda[k] * z).exp();
    }
    let mut rhs = Complex64::zero();
    for j in 0..(1u64 << n) {
        let w = signed_u_value(j, &lambda[..n as usize]).unwrap();
        rhs += a.powu(digit_sum(j)) * (w * z).exp();
    }
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(Error::NumericRange(
            "check_general_identity: exponential overflow".into(),
        ));
    }
    let mut worst = 0.0;
    Ok(residual_report("general", n, 1, lhs, rhs, &mut worst, tol))
}

/// Run a batch of seeded random draws through one of the exponential
/// identity checks, reporting the worst residual.
///
/// Draws `a`, `z`, and each weight uniformly from the unit disk. The same
/// seed always produces the same report.
pub fn check_identity_batch(
    identity: StepOrGeneral,
    n: u32,
    samples: u32,
    seed: u64,
    tol: f64,
) -> Result<IdentityCheckReport> {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draw_disk = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let re = rng.gen_range(-1.0..1.0);
        let im = rng.gen_range(-1.0..1.0);
        let z = Complex64::new(re, im);
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    };
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = match identity {
            StepOrGeneral::Step => draw_disk(&mut rng),
            StepOrGeneral::General => loop {
                let a = draw_disk(&mut rng);
                // Keep 1/a bounded so the residual scale stays meaningful.
                if a.norm() > 0.1 {
                    break a;
                }
            },
        };
        let lambda: Vec<Complex64> = (0..n).map(|_| draw_disk(&mut rng)).collect();
        let z = draw_disk(&mut rng);
        let report = match identity {
            StepOrGeneral::Step => check_step_identity(n, a, &lambda, z, tol)?,
            StepOrGeneral::General => check_general_identity(n, a, &lambda, z, tol)?,
        };
        worst = worst.max(report.max_residual);
    }
    Ok(IdentityCheckReport::new(
        match identity {
            StepOrGeneral::Step => "step",
            StepOrGeneral::General => "general",
        },
        n,
        samples,
        worst,
        tol,
    ))
}

/// Selector for the two exponential identity layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOrGeneral {
    Step,
    General,
}
