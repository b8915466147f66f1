//! Wallis' formula via digit-sum counting.
//!
//! Expanding `(sin x)^{2m}` with the signed-digit identity and integrating
//! over `(0, pi/2)` kills every frequency except the `C(2m, m)` indices with
//! digit sum `m`, giving the exact moments
//!
//! ```text
//! I_{2m} = int_0^{pi/2} (sin x)^{2m} dx = C(2m, m) / 2^{2m} * pi/2.
//! ```
//!
//! The classical recurrence `(n+2) I_{n+2} = (n+1) I_n` makes
//! `(n+1) I_{n+1} I_n = pi/2` independent of `n`, and squeezing
//! `I_{n+1}/I_n -> 1` produces `2^{4n} / (n C(2n,n)^2) -> pi`.
//!
//! Everything exact is big-integer/rational; quadrature cross-checks are in
//! tests and `moment_recurrence_check`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::digits::digit_sum;
use crate::quad;
use crate::{Error, Result};

/// Exact even sine moment: `I_{2m} = rational_part * pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub m: u32,
    /// `C(2m, m) / 2^{2m+1}`, so that `I_{2m} = rational_part * pi`.
    pub rational_part: BigRational,
}

impl MomentValue {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational_part) * std::f64::consts::PI
    }
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Shift the numerator so the integer quotient keeps ~80 significant
    // bits, divide exactly, then undo the scaling. Naive per-side shifting
    // loses everything when the two magnitudes are far apart.
    if r.numer().is_zero() {
        return 0.0;
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = 80 - (nb - db);
    let quotient = if shift >= 0 {
        (r.numer() << shift as u32) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as u32)
    };
    quotient.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// Exact even moment `int_0^{pi/2} (sin x)^{2m} dx` as a rational multiple
/// of pi.
pub fn sin_moment(m: u32) -> Result<MomentValue> {
    if m > 10_000 {
        return Err(Error::resource("sin_moment: m above 10^4"));
    }
    let c = BigInt::from(binomial(2 * m as u64, m as u64));
    let rational_part = BigRational::new(c, BigInt::from(1) << (2 * m + 1));
    Ok(MomentValue { m, rational_part })
}

/// Count `{ j < 2^{2m} : s(j) = m }` by exhaustive enumeration.
///
/// This is the combinatorial heart of the moment formula; the count equals
/// `C(2m, m)`, which tests assert against `binomial`.
pub fn central_count(m: u32) -> Result<u64> {
    if m > 14 {
        return Err(Error::resource(
            "central_count: enumeration capped at m = 14; use binomial(2m, m) beyond",
        ));
    }
    if m == 0 {
        return Ok(1);
    }
    let mut count = 0u64;
    for j in 0..(1u64 << (2 * m)) {
        if digit_sum(j) == m {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact `I_n` for any parity: even moments are `rational * pi`, odd moments
/// are plain rationals (`I_{2m+1} = 4^m (m!)^2 / (2m+1)!`).
pub fn exact_moment(n: u32) -> (BigRational, bool) {
    if n % 2 == 0 {
        let m = n / 2;
        (sin_moment(m).unwrap().rational_part, true)
    } else {
        let m = (n - 1) / 2;
        let mut numer = BigInt::one() << (2 * m);
        let mut denom = BigInt::one();
        // (m!)^2 / (2m+1)!
        for i in 1..=m as u64 {
            numer *= BigInt::from(i * i);
        }
        for i in 1..=(2 * m as u64 + 1) {
            denom *= BigInt::from(i);
        }
        (BigRational::new(numer, denom), false)
    }
}

fn moment_f64(n: u32) -> f64 {
    let (r, times_pi) = exact_moment(n);
    let v = rational_to_f64(&r);
    if times_pi {
        v * std::f64::consts::PI
    } else {
        v
    }
}

/// Report for the moment-recurrence verification.
#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceReport {
    pub n_max: u32,
    pub max_recurrence_residual: f64,
    pub max_product_residual: f64,
    pub max_quadrature_residual: f64,
    pub ratio_monotone: bool,
    pub passed: bool,
}

/// Verify `(n+2) I_{n+2} = (n+1) I_n`, the invariance of `(n+1) I_{n+1} I_n
/// = pi/2`, and the squeeze `I_{n+2}/I_n < I_{n+1}/I_n < 1`, cross-checking
/// the first few moments against adaptive quadrature.
pub fn moment_recurrence_check(n_max: u32, tol: f64) -> Result<RecurrenceReport> {
    if n_max > 200 {
        return Err(Error::resource("moment_recurrence_check: n_max above 200"));
    }
    let moments: Vec<f64> = (0..=n_max + 2).map(moment_f64).collect();
    let half_pi = std::f64::consts::FRAC_PI_2;

    let mut max_rec = 0.0f64;
    let mut max_prod = 0.0f64;
    let mut ratio_monotone = true;
    for n in 0..=n_max as usize {
        let rec = ((n as f64 + 2.0) * moments[n + 2] - (n as f64 + 1.0) * moments[n]).abs()
            / moments[n];
        max_rec = max_rec.max(rec);
        let prod = ((n as f64 + 1.0) * moments[n + 1] * moments[n] - half_pi).abs();
        max_prod = max_prod.max(prod);
        // I_{n+2}/I_n < I_{n+1}/I_n < 1
        if !(moments[n + 2] < moments[n + 1] && moments[n + 1] < moments[n]) {
            ratio_monotone = false;
        }
    }

    let quad_limit = n_max.min(20);
    let mut max_quad = 0.0f64;
    for n in 0..=quad_limit {
        let direct = quad::integrate(&|x: f64| x.sin().powi(n as i32), 0.0, half_pi, 1e-13);
        max_quad = max_quad.max((direct - moments[n as usize]).abs() / moments[n as usize]);
    }

    let passed = max_rec <= tol && max_prod <= tol && max_quad <= tol && ratio_monotone;
    Ok(RecurrenceReport {
        n_max,
        max_recurrence_residual: max_rec,
        max_product_residual: max_prod,
        max_quadrature_residual: max_quad,
        ratio_monotone,
        passed,
    })
}

/// Exact Wallis partial `2^{4n} / (n C(2n,n)^2)` as a rational.
pub fn wallis_partial(n: u64) -> Result<BigRational> {
    if n == 0 || n > 100_000 {
        return Err(Error::resource("wallis_partial: n must be in [1, 10^5]"));
    }
    let c = BigInt::from(binomial(2 * n, n));
    let numer = BigInt::one() << (4 * n as u32);
    Ok(BigRational::new(numer, BigInt::from(n) * (&c * &c)))
}

/// Decimal expansion of a positive rational with `digits` digits after the
/// point, truncated toward zero.
pub fn decimal_string(value: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (value.numer() * &scale) / value.denom();
    let s = scaled.to_string();
    let (sign, body) = if let Some(stripped) = s.strip_prefix('-') {
        ("-", stripped.to_string())
    } else {
        ("", s)
    };
    let body = if body.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - body.len()), body)
    } else {
        body
    };
    let split = body.len() - digits as usize;
    format!("{sign}{}.{}", &body[..split], &body[split..])
}

/// `wallis_partial(n)` to at least 50 significant digits.
pub fn wallis_partial_decimal(n: u64, digits: u32) -> Result<String> {
    let w = wallis_partial(n)?;
    Ok(decimal_string(&w, digits.max(50)))
}

/// Rows `(n, wallis_partial(n), |error| vs pi)` for CSV emission.
pub fn wallis_csv(ns: &[u64]) -> Result<String> {
    let mut out = String::from("n,wallis_partial,error_vs_pi\n");
    for &n in ns {
        let w = wallis_partial(n)?;
        let value = rational_to_f64(&w);
        out.push_str(&format!(
            "{},{},{:e}\n",
            n,
            decimal_string(&w, 50),
            (value - std::f64::consts::PI).abs()
        ));
    }
    Ok(out)
}

/// First 100 decimal digits of pi, for high-precision comparisons.
pub const PI_100: &str =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
