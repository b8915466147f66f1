//! Finite sine/cosine product identities and their Fourier expansions.
//!
//! Specializing the exponential identities to `a = +-1` and real or purely
//! imaginary arguments yields closed expansions for products of cosh, cos,
//! sinh, and sin over a weight sequence, e.g.
//!
//! ```text
//! prod_{k<2m} sin lambda_k = (-1)^m 2^{-2m} sum_{j<2^{2m}} (-1)^s(j) cos(sum_q sigma_q(j) lambda_q)
//! ```
//!
//! and, for the dyadic weights `lambda_q = 2^q x`, folded forms over odd
//! frequencies only:
//!
//! ```text
//! prod_{k<n}  cos(2^k x) = 2^{1-n}  sum_{j<2^{n-1}}  cos((2j+1)x)
//! prod_{k<2m} sin(2^k x) = (-1)^{m+1} 2^{1-2m} sum_{j<2^{2m-1}} (-1)^s(j) cos((2j+1)x)
//! ```
//!
//! `fourier_expansion` produces the folded form as exact signs on odd integer
//! frequencies; every identity has a numeric checker with residual scaled by
//! the sum of absolute term values.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::digits::{digit_sum, signed_u_value, thue_morse};
use crate::series::IdentityCheckReport;
use crate::{Error, Result};

/// Which elementary function each factor applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl ProductKind {
    fn apply(self, t: f64) -> f64 {
        match self {
            ProductKind::Sin => t.sin(),
            ProductKind::Cos => t.cos(),
            ProductKind::Sinh => t.sinh(),
            ProductKind::Cosh => t.cosh(),
        }
    }
}

/// Geometric weight family `lambda_q = r^q x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DyadicParams {
    pub r: u32,
    pub x: f64,
}

/// One finite product `prod_k kind(lambda_k)`, with the dyadic family
/// `lambda_q = r^q x` tracked explicitly when that is how the weights arose.
#[derive(Debug, Clone, Serialize)]
pub struct ProductSpec {
    pub weights: Vec<f64>,
    pub kind: ProductKind,
    pub dyadic: Option<DyadicParams>,
}

impl ProductSpec {
    /// Product over an explicit weight list.
    pub fn new(kind: ProductKind, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::domain("ProductSpec: need at least one factor"));
        }
        if !weights.iter().all(|w| w.is_finite()) {
            return Err(Error::domain("ProductSpec: weights must be finite"));
        }
        Ok(ProductSpec { weights, kind, dyadic: None })
    }

    /// Product over the geometric family `lambda_q = r^q x` with `factors`
    /// factors (`q = 0 .. factors-1`).
    pub fn dyadic(kind: ProductKind, r: u32, x: f64, factors: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::domain("ProductSpec: dyadic ratio r must be >= 2"));
        }
        if factors == 0 {
            return Err(Error::domain("ProductSpec: need at least one factor"));
        }
        let weights = (0..factors).map(|q| (r as f64).powi(q as i32) * x).collect();
        Ok(ProductSpec { weights, kind, dyadic: Some(DyadicParams { r, x }) })
    }

    pub fn factor_count(&self) -> usize {
        self.weights.len()
    }

    fn require_dyadic_two(&self) -> Result<f64> {
        match self.dyadic {
            Some(DyadicParams { r: 2, x }) => Ok(x),
            _ => Err(Error::domain("identity requires a dyadic spec with r = 2")),
        }
    }
}

/// Straightforward product of the chosen function over all weights.
pub fn eval_product(spec: &ProductSpec) -> f64 {
    spec.weights.iter().map(|&w| spec.kind.apply(w)).product()
}

/// Residual of the classical closed form
/// `prod_{k<=n} cos(2^k x) = sin(2^{n+1} x) / (2^{n+1} sin x)`.
///
/// `x` must avoid multiples of pi, where the right-hand side is singular.
pub fn cos_closed_form_check(n: u32, x: f64) -> Result<f64> {
    let t = x / std::f64::consts::PI;
    if (t - t.round()).abs() < 1e-12 {
        return Err(Error::SingularInput(format!(
            "cos_closed_form_check: x = {x} is a multiple of pi"
        )));
    }
    let lhs: f64 = (0..=n).map(|k| ((1u64 << k) as f64 * x).cos()).product();
    let scale = (1u64 << (n + 1)) as f64;
    let rhs = (scale * x).sin() / (scale * x.sin());
    Ok((lhs - rhs).abs())
}

/// The expansion identities, named by the function on the left-hand side.
///
/// `Cosh`/`Cos`/`Sinh`/`Sin` take arbitrary weights (the latter two need an
/// even factor count), `SinOdd` is the odd-count sine analog, and the
/// `Dyadic*` forms require `lambda_q = 2^q x`; the `*Folded` variants sum
/// over odd frequencies only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrigIdentity {
    Cosh,
    Cos,
    Sinh,
    Sin,
    SinOdd,
    DyadicCos,
    DyadicSin,
    DyadicCosFolded,
    DyadicSinFolded,
}

impl TrigIdentity {
    pub const ALL: [TrigIdentity; 9] = [
        TrigIdentity::Cosh,
        TrigIdentity::Cos,
        TrigIdentity::Sinh,
        TrigIdentity::Sin,
        TrigIdentity::SinOdd,
        TrigIdentity::DyadicCos,
        TrigIdentity::DyadicSin,
        TrigIdentity::DyadicCosFolded,
        TrigIdentity::DyadicSinFolded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrigIdentity::Cosh => "cosh",
            TrigIdentity::Cos => "cos",
            TrigIdentity::Sinh => "sinh",
            TrigIdentity::Sin => "sin",
            TrigIdentity::SinOdd => "sin-odd",
            TrigIdentity::DyadicCos => "dyadic-cos",
            TrigIdentity::DyadicSin => "dyadic-sin",
            TrigIdentity::DyadicCosFolded => "dyadic-cos-folded",
            TrigIdentity::DyadicSinFolded => "dyadic-sin-folded",
        }
    }

    fn expected_kind(self) -> ProductKind {
        match self {
            TrigIdentity::Cosh => ProductKind::Cosh,
            TrigIdentity::Cos | TrigIdentity::DyadicCos | TrigIdentity::DyadicCosFolded => {
                ProductKind::Cos
            }
            TrigIdentity::Sinh => ProductKind::Sinh,
            TrigIdentity::Sin
            | TrigIdentity::SinOdd
            | TrigIdentity::DyadicSin
            | TrigIdentity::DyadicSinFolded => ProductKind::Sin,
        }
    }

    /// Parity demanded of the factor count: `Some(0)` even, `Some(1)` odd.
    fn parity(self) -> Option<u32> {
        match self {
            TrigIdentity::Sinh
            | TrigIdentity::Sin
            | TrigIdentity::DyadicSin
            | TrigIdentity::DyadicSinFolded => Some(0),
            TrigIdentity::SinOdd => Some(1),
            _ => None,
        }
    }

    fn needs_dyadic(self) -> bool {
        matches!(
            self,
            TrigIdentity::DyadicCos
                | TrigIdentity::DyadicSin
                | TrigIdentity::DyadicCosFolded
                | TrigIdentity::DyadicSinFolded
        )
    }
}

fn parity_sign(m: u32) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Check one expansion identity on a concrete spec.
///
/// The right-hand sum is evaluated by brute force over `j < 2^n`; the
/// residual is compared against `tol * (1 + sum of absolute term values)`,
/// which keeps the check meaningful when the product is exponentially small
/// or the hyperbolic terms are exponentially large.
pub fn check_identity(
    which: TrigIdentity,
    spec: &ProductSpec,
    tol: f64,
) -> Result<IdentityCheckReport> {
    let n = spec.factor_count() as u32;
    if n > 24 {
        return Err(Error::resource("check_identity: factor count above 24"));
    }
    if spec.kind != which.expected_kind() {
        return Err(Error::Domain(format!(
            "identity {} expects a {:?} product",
            which.name(),
            which.expected_kind()
        )));
    }
    if let Some(p) = which.parity() {
        if n % 2 != p {
            return Err(Error::Domain(format!(
                "identity {} needs a factor count with parity {p}, got {n}",
                which.name()
            )));
        }
    }
    let x = if which.needs_dyadic() { spec.require_dyadic_two()? } else { f64::NAN };

    let lhs = eval_product(spec);
    let lambda = &spec.weights;
    let m = n / 2;
    let scale = 0.5f64.powi(n as i32);

    // (rhs, sum of |term| values including prefactors)
    let (rhs, magnitude) = match which {
        TrigIdentity::Cosh
        | TrigIdentity::Cos
        | TrigIdentity::Sinh
        | TrigIdentity::Sin
        | TrigIdentity::SinOdd => {
            let mut acc = 0.0;
            let mut mag = 0.0;
            for j in 0..(1u64 << n) {
                let w = signed_u_value(j, lambda).unwrap();
                let (term, signed) = match which {
                    TrigIdentity::Cosh => (w.cosh(), false),
                    TrigIdentity::Cos => (w.cos(), false),
                    TrigIdentity::Sinh => (w.cosh(), true),
                    TrigIdentity::Sin => (w.cos(), true),
                    TrigIdentity::SinOdd => (w.sin(), true),
                    _ => unreachable!(),
                };
                let sign = if signed { thue_morse(j) as f64 } else { 1.0 };
                acc += sign * term;
                mag += term.abs();
            }
            let prefactor = match which {
                TrigIdentity::Cosh | TrigIdentity::Cos | TrigIdentity::Sinh => scale,
                TrigIdentity::Sin => parity_sign(m) * scale,
                TrigIdentity::SinOdd => parity_sign(m + 1) * scale,
                _ => unreachable!(),
            };
            (prefactor * acc, scale * mag)
        }
        TrigIdentity::DyadicCos | TrigIdentity::DyadicSin => {
            let offset = (1u64 << n) as f64 * x;
            let mut acc = 0.0;
            for j in 0..(1u64 << n) {
                let angle = (2 * j + 1) as f64 * x - offset;
                let sign =
                    if which == TrigIdentity::DyadicSin { thue_morse(j) as f64 } else { 1.0 };
                acc += sign * angle.cos();
            }
            let prefactor =
                if which == TrigIdentity::DyadicSin { parity_sign(m) * scale } else { scale };
            (prefactor * acc, 1.0)
        }
        TrigIdentity::DyadicCosFolded | TrigIdentity::DyadicSinFolded => {
            let half = 1u64 << (n - 1);
            let mut acc = 0.0;
            for j in 0..half {
                let angle = (2 * j + 1) as f64 * x;
                let sign = if which == TrigIdentity::DyadicSinFolded {
                    thue_morse(j) as f64
                } else {
                    1.0
                };
                acc += sign * angle.cos();
            }
            let prefactor = if which == TrigIdentity::DyadicSinFolded {
                parity_sign(m + 1) * 2.0 * scale
            } else {
                2.0 * scale
            };
            (prefactor * acc, 1.0)
        }
    };

    let residual = (lhs - rhs).abs();
    Ok(IdentityCheckReport::new(which.name(), n, 1, residual / (1.0 + magnitude), tol))
}

/// Seeded batch of random draws through one identity; worst residual wins.
///
/// General-weight identities draw each `lambda_k` uniformly from `[-2, 2]`;
/// dyadic identities draw `x` uniformly from `(0, pi)`.
pub fn check_identity_batch(
    which: TrigIdentity,
    factors: u32,
    samples: u32,
    seed: u64,
    tol: f64,
) -> Result<IdentityCheckReport> {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let spec = if which.needs_dyadic() {
            let x = rng.gen_range(0.0..std::f64::consts::PI);
            ProductSpec::dyadic(which.expected_kind(), 2, x, factors)?
        } else {
            let weights = (0..factors).map(|_| rng.gen_range(-2.0..2.0)).collect();
            ProductSpec::new(which.expected_kind(), weights)?
        };
        let report = check_identity(which, &spec, tol)?;
        worst = worst.max(report.max_residual);
    }
    Ok(IdentityCheckReport::new(which.name(), factors, samples, worst, tol))
}

/// Basis function of a folded expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Sin,
    Cos,
}

/// One `sign * basis(frequency * x)` term.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpansionTerm {
    pub sign: i8,
    pub frequency: i64,
}

/// Folded Fourier expansion of a dyadic sine product:
/// `P(x) = amplitude * sum_t sign_t * basis(frequency_t * x)` with strictly
/// increasing odd integer frequencies `1, 3, ..., 2^F - 1` and Thue-Morse
/// signs up to a global prefactor.
#[derive(Debug, Clone, Serialize)]
pub struct TrigExpansion {
    pub terms: Vec<ExpansionTerm>,
    pub amplitude: f64,
    pub basis: Basis,
}

impl TrigExpansion {
    /// Evaluate at `x` with compensated summation (the reconstruction error
    /// must stay near machine epsilon even at 2^13 terms).
    pub fn eval(&self, x: f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for term in &self.terms {
            let angle = term.frequency as f64 * x;
            let value = term.sign as f64
                * match self.basis {
                    Basis::Sin => angle.sin(),
                    Basis::Cos => angle.cos(),
                };
            let y = value - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        self.amplitude * sum
    }

    /// CSV rows `(sign, frequency)` under a `sign,frequency` header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::from("sign,frequency\n");
        for t in &self.terms {
            out.push_str(&format!("{},{}\n", t.sign, t.frequency));
        }
        out
    }
}

/// Folded expansion of `prod_{k<F} sin(2^k x)` over odd frequencies.
///
/// For an even factor count `F = 2m` the basis is cosine with signs
/// `(-1)^{m+1} (-1)^{s(t)}`; for odd `F = 2m+1` it is sine with signs
/// `(-1)^m (-1)^{s(t)}`. The amplitude is `2^{1-F}` in both cases.
pub fn fourier_expansion(spec: &ProductSpec) -> Result<TrigExpansion> {
    spec.require_dyadic_two()?;
    if spec.kind != ProductKind::Sin {
        return Err(Error::domain("fourier_expansion: spec must be a sin product"));
    }
    let factors = spec.factor_count() as u32;
    if factors > 24 {
        return Err(Error::resource("fourier_expansion: factor count above 24"));
    }
    Ok(expansion_for_factors(factors))
}

/// Same expansion, parameterized by factor count alone (the term structure
/// does not depend on `x`).
pub fn expansion_for_factors(factors: u32) -> TrigExpansion {
    let m = factors / 2;
    let global = if factors % 2 == 0 { parity_sign(m + 1) } else { parity_sign(m) };
    let basis = if factors % 2 == 0 { Basis::Cos } else { Basis::Sin };
    let half = 1u64 << (factors - 1);
    let terms = (0..half)
        .map(|t| ExpansionTerm {
            sign: (global as i8) * thue_morse(t),
            frequency: (2 * t + 1) as i64,
        })
        .collect();
    TrigExpansion { terms, amplitude: 0.5f64.powi(factors as i32 - 1), basis }
}

/// The two equal forms of the expansion terms: indexed by `j < 2^n` with
/// digit sums, or by sign tuples `epsilon in {-1,+1}^n`.
///
/// Returns both multisets of `(s, sum_q +-lambda_q)` pairs, sorted; weights
/// are exact rationals so equality is literal, not approximate.
pub fn remark5_term_multisets(
    lambda: &[BigRational],
) -> (Vec<(u32, BigRational)>, Vec<(u32, BigRational)>) {
    let n = lambda.len();
    let mut by_digits: Vec<(u32, BigRational)> = Vec::with_capacity(1 << n);
    for j in 0..(1u64 << n) {
        let w = signed_u_value(j, lambda).unwrap();
        by_digits.push((digit_sum(j), w));
    }
    let mut by_epsilon: Vec<(u32, BigRational)> = Vec::with_capacity(1 << n);
    for mask in 0..(1u64 << n) {
        // epsilon_q = +1 where bit q of mask is set, else -1
        let mut s = 0u32;
        let mut w = BigRational::zero();
        for (q, l) in lambda.iter().enumerate() {
            if (mask >> q) & 1 == 1 {
                s += 1;
                w += l.clone();
            } else {
                w -= l.clone();
            }
        }
        by_epsilon.push((s, w));
    }
    by_digits.sort();
    by_epsilon.sort();
    (by_digits, by_epsilon)
}

/// Seeded random-rational instance of the term-multiset comparison; true
/// when the digit-indexed and epsilon-indexed forms agree exactly.
pub fn remark5_check(factors: u32, seed: u64) -> Result<bool> {
    use num_bigint::BigInt;
    use rand::Rng;
    use rand::SeedableRng;
    if factors == 0 || factors > 12 {
        return Err(Error::domain("remark5_check: factors must be in [1, 12]"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let lambda: Vec<BigRational> = (0..factors)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.gen_range(-30i64..30)),
                BigInt::from(rng.gen_range(1i64..9)),
            )
        })
        .collect();
    let (by_digits, by_epsilon) = remark5_term_multisets(&lambda);
    Ok(by_digits == by_epsilon)
}
