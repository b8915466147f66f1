//! Exact and numerical machinery around the family of product identities
//!
//! ```text
//! prod_{0 <= k < n} (1 + a X^(2^k))  =  sum_{0 <= j < 2^n} a^s(j) X^j
//! ```
//!
//! where `s(j)` is the binary digit sum of `j`, together with everything the
//! identity radiates into once `X` is replaced by exponentials: trigonometric
//! expansions of `sin x sin 2x ... sin 2^n x`, Wallis' formula via sine-power
//! moments, Prouhet-Tarry-Escott multigrade equalities, Thue-Morse sign words,
//! equidistribution of digit-weighted sums `u(j, lambda)`, and sup/L1/L2 norm
//! asymptotics of the dyadic sine product.
//!
//! Exact layers (polynomials, residuals, moments, partitions) use
//! arbitrary-precision integers and rationals; numerical layers (identity
//! residuals, norm estimates, discrepancy experiments) use `f64` with seeded,
//! reproducible sampling, plus a fixed-point big-integer type where 53 bits
//! are not enough.
//!
//! Modules map one-to-one onto the subject areas:
//!
//! - [`digits`]: binary expansions, digit sums, signed digits, `u(j, lambda)`
//! - [`series`]: the fundamental polynomial identity and its exponential forms
//! - [`trigprod`]: finite sin/cos/sinh/cosh product expansions
//! - [`wallis`]: sine-power moments, the moment recurrence, Wallis partials
//! - [`pte`]: multigrade residuals and Prouhet partitions
//! - [`equidist`]: Weyl sums, Pisot power norms, star discrepancy
//! - [`signs`]: sign words of the dyadic sine product and the `+- / -+` morphism
//! - [`norms`]: sup/L1/L2 norms of `P_{r,n}` and the L1 growth-rate fit

pub mod digits;
pub mod equidist;
mod error;
pub mod fixed;
pub mod norms;
pub mod pte;
pub mod quad;
pub mod report;
pub mod series;
pub mod signs;
pub mod trigprod;
pub mod wallis;

pub use error::{Error, Result};

/// Environment variable capping the rayon thread pool used by grid searches
/// and interval-parallel integration.
pub const THREADS_ENV: &str = "SINEFOLD_THREADS";

/// Configure the global rayon pool from `SINEFOLD_THREADS`, if set.
///
/// Call once at process start; later calls are ignored (rayon's global pool
/// can only be built once). Invalid values are ignored rather than fatal.
pub fn init_threads_from_env() {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
