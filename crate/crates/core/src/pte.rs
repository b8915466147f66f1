//! Multigrade equalities and the Prouhet partition.
//!
//! The alternating sums
//!
//! ```text
//! R_e = sum_{j < 2^L} (-1)^s(j) (sum_q sigma_q(j) lambda_q)^e
//! ```
//!
//! are the Taylor coefficients (times e!) of
//! `(-1)^L 2^L prod_k sinh(lambda_k x)`, which starts at order `x^L`. So
//! `R_e = 0` for all `e < L` and for all `e` of parity opposite to `L`, and
//! the first pivot is exactly `R_L = (-1)^L L! 2^L prod_q lambda_q`.
//! Splitting `j` by the parity of `s(j)`
//! re-expresses each vanishing `R_e` as a pair of integer multisets with
//! equal `e`-th power sums, the classical Prouhet-Tarry-Escott shape; the
//! dyadic specialization `lambda_q = 2^q` is Prouhet's partition of
//! `[0, 2^n)` by digit-sum parity.
//!
//! Residual magnitudes reach `(sum |lambda|)^{2L}`, so everything here is
//! exact big-integer arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digits::{digit_sum, thue_morse};
use crate::{Error, Result};

/// Exact residuals `R_e` for one weight vector, with the verified vanishing
/// pattern and the Taylor-pivot check.
#[derive(Debug, Clone, Serialize)]
pub struct MultigradeWitness {
    pub lambda: Vec<i64>,
    /// Exponent -> exact residual (serialized as decimal strings).
    #[serde(serialize_with = "serialize_residuals")]
    pub residuals: BTreeMap<u32, BigInt>,
    /// Exponents whose residuals are required to vanish: `e < L` is always
    /// included, plus every `e <= e_max` of parity opposite to `L`.
    pub verified_range: Vec<u32>,
    pub pivot_check: Option<PivotCheck>,
}

/// Comparison of the first structural nonzero residual `R_L` against
/// `L! 2^L prod lambda_q`.
#[derive(Debug, Clone, Serialize)]
pub struct PivotCheck {
    pub exponent: u32,
    #[serde(serialize_with = "serialize_bigint")]
    pub expected: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub actual: BigInt,
    pub passed: bool,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn serialize_residuals<S: serde::Serializer>(
    map: &BTreeMap<u32, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        m.serialize_entry(k, &v.to_string())?;
    }
    m.end()
}

/// Prouhet's partition of `[0, 2^n)` by the parity of the digit sum.
#[derive(Debug, Clone, Serialize)]
pub struct ProuhetPartition {
    pub n: u32,
    pub even_class: Vec<u64>,
    pub odd_class: Vec<u64>,
    /// Exponents `e < n` with exactly equal power sums.
    pub equal_through: u32,
    /// Whether the power sums differ at `e = n` (they must).
    pub differs_at_n: bool,
}

/// Signed sums `sum_q sigma_q(j) lambda_q` collapsed to value -> signed
/// count, so residuals cost `O(distinct values * e_max)` big-integer
/// multiplications instead of `O(2^L * e_max)`.
fn signed_sum_counts(lambda: &[i64]) -> BTreeMap<i64, i64> {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    let len = lambda.len();
    for j in 0..(1u64 << len) {
        let mut v = 0i64;
        for (q, &l) in lambda.iter().enumerate() {
            if (j >> q) & 1 == 1 {
                v += l;
            } else {
                v -= l;
            }
        }
        *counts.entry(v).or_insert(0) += thue_morse(j) as i64;
    }
    counts
}

/// Exact residuals `R_e` for `e <= e_max`, with the vanishing pattern and
/// the pivot `R_L = L! 2^L prod lambda_q` verified when `e_max >= L`.
pub fn multigrade_residuals(lambda: &[i64], e_max: u32) -> Result<MultigradeWitness> {
    let len = lambda.len() as u32;
    if len == 0 || len > 24 {
        return Err(Error::resource("multigrade_residuals: length must be in [1, 24]"));
    }
    if e_max > 2 * len {
        return Err(Error::resource("multigrade_residuals: e_max capped at 2L"));
    }
    let counts = signed_sum_counts(lambda);

    let mut residuals: BTreeMap<u32, BigInt> = BTreeMap::new();
    // powers[i] tracks value_i^e across the exponent loop
    let values: Vec<(BigInt, BigInt)> = counts
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(v, c)| (BigInt::from(v), BigInt::from(c)))
        .collect();
    let mut powers: Vec<BigInt> = values.iter().map(|_| BigInt::one()).collect();
    for e in 0..=e_max {
        if e > 0 {
            for (power, (value, _)) in powers.iter_mut().zip(&values) {
                *power *= value;
            }
        }
        let r: BigInt = powers.iter().zip(&values).map(|(p, (_, c))| p * c).sum();
        residuals.insert(e, r);
    }

    let mut verified_range = Vec::new();
    for e in 0..=e_max {
        if e < len || e % 2 != len % 2 {
            verified_range.push(e);
        }
    }

    let pivot_check = if e_max >= len {
        // The generating function is (-1)^L 2^L prod sinh(lambda_k x), so the
        // first structural coefficient carries the parity sign.
        let mut expected = BigInt::one() << len;
        if len % 2 == 1 {
            expected = -expected;
        }
        for i in 1..=len as u64 {
            expected *= BigInt::from(i);
        }
        for &l in lambda {
            expected *= BigInt::from(l);
        }
        let actual = residuals[&len].clone();
        let passed = expected == actual;
        Some(PivotCheck { exponent: len, expected, actual, passed })
    } else {
        None
    };

    Ok(MultigradeWitness { lambda: lambda.to_vec(), residuals, verified_range, pivot_check })
}

impl MultigradeWitness {
    /// True when every residual in the verified range vanishes and the pivot
    /// (if computed) matches.
    pub fn vanishing_holds(&self) -> bool {
        self.verified_range.iter().all(|e| self.residuals[e].is_zero())
            && self.pivot_check.as_ref().map_or(true, |p| p.passed)
    }
}

/// The two multisets `{sum_q sigma_q(j) lambda_q : s(j) even / odd}`, the
/// conventional two-sided presentation of a PTE solution.
pub fn multigrade_from_weights(lambda: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let len = lambda.len();
    if len == 0 || len > 20 {
        return Err(Error::resource("multigrade_from_weights: length must be in [1, 20]"));
    }
    let mut even = Vec::with_capacity(1 << (len - 1));
    let mut odd = Vec::with_capacity(1 << (len - 1));
    for j in 0..(1u64 << len) {
        let mut v = 0i64;
        for (q, &l) in lambda.iter().enumerate() {
            if (j >> q) & 1 == 1 {
                v += l;
            } else {
                v -= l;
            }
        }
        if digit_sum(j) % 2 == 0 {
            even.push(v);
        } else {
            odd.push(v);
        }
    }
    even.sort_unstable();
    odd.sort_unstable();
    Ok((even, odd))
}

/// Exact `e`-th power sum of a multiset.
pub fn power_sum(values: &[i64], e: u32) -> BigInt {
    values.iter().map(|&v| BigInt::from(v).pow(e)).sum()
}

/// Prouhet's partition of `[0, 2^n)` with exact power-sum verification:
/// equality for every `e < n`, strict inequality at `e = n`.
pub fn prouhet_partition(n: u32) -> Result<ProuhetPartition> {
    if n == 0 || n > 20 {
        return Err(Error::resource("prouhet_partition: n must be in [1, 20]"));
    }
    let mut even_class = Vec::with_capacity(1 << (n - 1));
    let mut odd_class = Vec::with_capacity(1 << (n - 1));
    for j in 0..(1u64 << n) {
        if digit_sum(j) % 2 == 0 {
            even_class.push(j);
        } else {
            odd_class.push(j);
        }
    }

    let even_values: Vec<i64> = even_class.iter().map(|&j| j as i64).collect();
    let odd_values: Vec<i64> = odd_class.iter().map(|&j| j as i64).collect();
    let mut equal_through = 0;
    for e in 0..n {
        if power_sum(&even_values, e) == power_sum(&odd_values, e) {
            equal_through = e;
        } else {
            return Err(Error::SearchFailure(format!(
                "prouhet_partition: power sums differ already at e = {e} < n = {n}"
            )));
        }
    }
    let differs_at_n = power_sum(&even_values, n) != power_sum(&odd_values, n);

    Ok(ProuhetPartition { n, even_class, odd_class, equal_through, differs_at_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn residuals_dyadic_weights() {
        // lambda = (1,2,4,8): R_0 = R_2 = 0 (and all odd), pivot R_4 = 24576.
        let w = multigrade_residuals(&[1, 2, 4, 8], 8).unwrap();
        assert!(w.residuals[&0].is_zero());
        assert!(w.residuals[&2].is_zero());
        assert!(w.residuals[&1].is_zero());
        assert!(w.residuals[&3].is_zero());
        assert_eq!(w.residuals[&4], BigInt::from(24576)); // 4! * 2^4 * 64
        let pivot = w.pivot_check.as_ref().unwrap();
        assert!(pivot.passed);
        assert!(w.vanishing_holds());
    }

    #[test]
    fn residuals_repeated_weight() {
        // lambda = (1,1): hand enumeration over j < 4 gives R_0 = 0, R_2 = 8.
        let w = multigrade_residuals(&[1, 1], 4).unwrap();
        assert!(w.residuals[&0].is_zero());
        assert_eq!(w.residuals[&2], BigInt::from(8)); // 2! * 2^2 * 1
        assert!(w.vanishing_holds());
    }

    #[test]
    fn residuals_odd_length() {
        // L = 3: odd exponent 1 vanishes, all even vanish, pivot R_3 = -3! 2^3 prod
        // (hand check at L = 1, lambda = (1): R_1 = -1 - 1 = -2 = -1! 2^1).
        let w = multigrade_residuals(&[1, 3, 9], 6).unwrap();
        assert!(w.residuals[&0].is_zero());
        assert!(w.residuals[&1].is_zero());
        assert!(w.residuals[&2].is_zero());
        assert_eq!(w.residuals[&3], BigInt::from(-6 * 8 * 27));
        assert!(w.residuals[&4].is_zero());
        assert!(w.residuals[&6].is_zero());
        assert!(w.vanishing_holds());
    }

    #[test]
    fn residuals_brute_force_cross_check() {
        // Independent route: direct sum over j with BigInt powers.
        let lambda = [3i64, -5, 7, 2];
        let w = multigrade_residuals(&lambda, 8).unwrap();
        for e in 0..=8u32 {
            let mut direct = BigInt::zero();
            for j in 0..(1u64 << lambda.len()) {
                let mut v = 0i64;
                for (q, &l) in lambda.iter().enumerate() {
                    v += if (j >> q) & 1 == 1 { l } else { -l };
                }
                direct += BigInt::from(thue_morse(j)) * BigInt::from(v).pow(e);
            }
            assert_eq!(w.residuals[&e], direct, "e = {e}");
        }
    }

    #[test]
    fn random_lambdas_vanish_and_pivot() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(404);
        for _ in 0..200 {
            let len = rng.gen_range(2usize..=10);
            let lambda: Vec<i64> = (0..len).map(|_| rng.gen_range(-50i64..=50)).collect();
            let e_max = (len as u32 + 2).min(2 * len as u32);
            let w = multigrade_residuals(&lambda, e_max).unwrap();
            assert!(w.vanishing_holds(), "lambda = {lambda:?}");
        }
    }

    #[test]
    fn multisets_power_sums_match_residual_route() {
        let lambda = [1i64, 3, 9, 27];
        let (even, odd) = multigrade_from_weights(&lambda).unwrap();
        assert_eq!(even.len(), 8);
        assert_eq!(odd.len(), 8);
        let w = multigrade_residuals(&lambda, 8).unwrap();
        for e in 0..=8u32 {
            let diff = power_sum(&even, e) - power_sum(&odd, e);
            assert_eq!(diff, w.residuals[&e], "e = {e}");
        }
        // PTE pair of size 8 with degree >= 1: equal sums at e = 1..3.
        for e in 0..=3u32 {
            assert_eq!(power_sum(&even, e), power_sum(&odd, e));
        }
    }

    #[test]
    fn multisets_dyadic_weights_are_shifted_odds() {
        // lambda_q = 2^q: signed sums are exactly 2j+1-2^n, split by sign.
        let n = 4usize;
        let lambda: Vec<i64> = (0..n).map(|q| 1i64 << q).collect();
        let (even, odd) = multigrade_from_weights(&lambda).unwrap();
        let mut expected_even: Vec<i64> = (0..(1u64 << n))
            .filter(|&j| digit_sum(j) % 2 == 0)
            .map(|j| 2 * j as i64 + 1 - (1i64 << n))
            .collect();
        expected_even.sort_unstable();
        assert_eq!(even, expected_even);
        let all: Vec<i64> = even.iter().chain(&odd).copied().collect();
        assert_eq!(all.len(), 1 << n);
        assert!(all.iter().all(|v| v.rem_euclid(2) == 1), "all signed sums odd");
    }

    #[test]
    fn multisets_degenerate_repeated_weights() {
        let (even, odd) = multigrade_from_weights(&[1, 1]).unwrap();
        assert_eq!(power_sum(&even, 0), power_sum(&odd, 0));
        assert_eq!(even.len(), 2);
    }

    #[test]
    fn prouhet_three() {
        let p = prouhet_partition(3).unwrap();
        assert_eq!(p.even_class, vec![0, 3, 5, 6]);
        assert_eq!(p.odd_class, vec![1, 2, 4, 7]);
        let even: Vec<i64> = p.even_class.iter().map(|&j| j as i64).collect();
        let odd: Vec<i64> = p.odd_class.iter().map(|&j| j as i64).collect();
        assert_eq!(power_sum(&even, 1), BigInt::from(14));
        assert_eq!(power_sum(&odd, 1), BigInt::from(14));
        assert_eq!(power_sum(&even, 2), BigInt::from(70));
        assert_eq!(power_sum(&odd, 2), BigInt::from(70));
        assert!(p.differs_at_n);
    }

    #[test]
    fn prouhet_one() {
        let p = prouhet_partition(1).unwrap();
        assert_eq!(p.even_class, vec![0]);
        assert_eq!(p.odd_class, vec![1]);
        assert_eq!(p.equal_through, 0);
        assert!(p.differs_at_n);
    }

    #[test]
    fn prouhet_partition_through_fourteen() {
        for n in 1..=14u32 {
            let p = prouhet_partition(n).unwrap();
            assert_eq!(p.even_class.len(), p.odd_class.len());
            assert!(p.differs_at_n, "n = {n}");
            assert_eq!(p.equal_through, n.saturating_sub(1).max(0), "n = {n}");
        }
    }

    #[test]
    fn caps() {
        assert!(multigrade_residuals(&[], 2).is_err());
        assert!(multigrade_residuals(&[1; 25], 2).is_err());
        assert!(prouhet_partition(0).is_err());
        assert!(prouhet_partition(21).is_err());
    }
}
