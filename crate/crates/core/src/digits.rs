//! Exact binary-digit machinery.
//!
//! Everything downstream is built from the digits `e_q(j)` of a nonnegative
//! integer `j = sum_q e_q(j) 2^q`:
//!
//! - `s(j)`: the digit sum (number of ones),
//! - `(-1)^s(j)`: the Thue-Morse sign,
//! - `sigma_q(j) = 2 e_q(j) - 1`: signed digits in `{-1, +1}`,
//! - `u(j, lambda) = sum_q e_q(j) lambda_q`: digit-weighted sums, which
//!   reduce to `j` itself when `lambda_q = 2^q`.
//!
//! Digit order is least-significant-first everywhere in this crate; the
//! constructors here are the only place widths and orders are decided.

use num_traits::Zero;

use crate::{Error, Result};

/// Binary expansion of a nonnegative integer, least significant digit first,
/// zero-padded to a fixed width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitExpansion {
    j: u64,
    digits: Vec<u8>,
}

impl BitExpansion {
    /// The expanded integer.
    pub fn value(&self) -> u64 {
        self.j
    }

    /// Digits `e_0, e_1, ..., e_{width-1}`, each 0 or 1.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }
}

/// Signed binary digits `sigma_q = 2 e_q - 1`, least significant first.
///
/// For width `n` they satisfy `sum_q sigma_q 2^q = 2j + 1 - 2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDigits {
    sigmas: Vec<i8>,
}

impl SignedDigits {
    /// Signed digits `sigma_0, ..., sigma_{width-1}`, each -1 or +1.
    pub fn sigmas(&self) -> &[i8] {
        &self.sigmas
    }

    pub fn width(&self) -> usize {
        self.sigmas.len()
    }
}

/// Expand `j` into `width` binary digits, least significant first.
///
/// Fails when `width` cannot hold `j`.
pub fn bits(j: u64, width: usize) -> Result<BitExpansion> {
    if width == 0 {
        return Err(Error::domain("bits: width must be positive"));
    }
    if bit_length(j) > width {
        return Err(Error::Domain(format!(
            "bits: width {width} too small for j = {j} (needs {})",
            bit_length(j)
        )));
    }
    let digits = (0..width).map(|q| ((j >> q) & 1) as u8).collect();
    Ok(BitExpansion { j, digits })
}

/// Number of binary digits of `j` (0 for `j = 0`).
pub fn bit_length(j: u64) -> usize {
    (64 - j.leading_zeros()) as usize
}

/// Binary digit sum `s(j)`: the number of ones of `j`.
pub fn digit_sum(j: u64) -> u32 {
    j.count_ones()
}

/// Thue-Morse sign `(-1)^s(j)`.
pub fn thue_morse(j: u64) -> i8 {
    if digit_sum(j) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signed digits `sigma_q(j) = 2 e_q(j) - 1` at width `width`.
pub fn signed_digits(j: u64, width: usize) -> Result<SignedDigits> {
    let expansion = bits(j, width)?;
    let sigmas = expansion.digits().iter().map(|&e| 2 * (e as i8) - 1).collect();
    Ok(SignedDigits { sigmas })
}

/// Digit-weighted sum `u(j, lambda) = sum_q e_q(j) lambda_q`.
///
/// Generic over the weight type so the same code path serves `f64`,
/// `Complex64`, exact rationals, and fixed-point reals. Satisfies the shift
/// recurrences `u(2j, lambda) = u(j, T lambda)` and
/// `u(2j+1, lambda) = lambda_0 + u(j, T lambda)` with `T` the left shift.
pub fn u_value<T>(j: u64, lambda: &[T]) -> Result<T>
where
    T: Clone + Zero,
{
    if bit_length(j) > lambda.len() {
        return Err(Error::Domain(format!(
            "u_value: j = {j} needs {} weights, got {}",
            bit_length(j),
            lambda.len()
        )));
    }
    let mut acc = T::zero();
    for (q, w) in lambda.iter().enumerate() {
        if (j >> q) & 1 == 1 {
            acc = acc + w.clone();
        }
    }
    Ok(acc)
}

/// Signed digit-weighted sum `sum_q sigma_q(j) lambda_q` at width
/// `lambda.len()`, i.e. `2 u(j, lambda) - sum_q lambda_q`.
pub fn signed_u_value<T>(j: u64, lambda: &[T]) -> Result<T>
where
    T: Clone + Zero + std::ops::Sub<Output = T>,
{
    if bit_length(j) > lambda.len() {
        return Err(Error::Domain(format!(
            "signed_u_value: j = {j} needs {} weights, got {}",
            bit_length(j),
            lambda.len()
        )));
    }
    let mut acc = T::zero();
    for (q, w) in lambda.iter().enumerate() {
        if (j >> q) & 1 == 1 {
            acc = acc + w.clone();
        } else {
            acc = acc - w.clone();
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bits_five_width_four() {
        let b = bits(5, 4).unwrap();
        assert_eq!(b.digits(), &[1, 0, 1, 0]);
        assert_eq!(b.value(), 5);
    }

    #[test]
    fn bits_zero() {
        assert_eq!(bits(0, 3).unwrap().digits(), &[0, 0, 0]);
    }

    #[test]
    fn bits_saturated() {
        let b = bits((1 << 20) - 1, 20).unwrap();
        assert!(b.digits().iter().all(|&d| d == 1));
    }

    #[test]
    fn bits_width_too_small() {
        assert!(bits(5, 2).is_err());
        assert!(bits(4, 0).is_err());
    }

    #[test]
    fn digit_sum_values() {
        assert_eq!(digit_sum(0), 0);
        assert_eq!(digit_sum(11), 3); // 1011
        assert_eq!(digit_sum(255), 8);
    }

    #[test]
    fn digit_sum_reconstructs_from_bits() {
        for j in 0..(1u64 << 20) {
            let b = bits(j, 20).unwrap();
            let total: u32 = b.digits().iter().map(|&d| d as u32).sum();
            assert_eq!(total, digit_sum(j));
        }
    }

    #[test]
    fn digit_sum_recurrences() {
        for j in 0..(1u64 << 16) {
            assert_eq!(digit_sum(2 * j), digit_sum(j));
            assert_eq!(digit_sum(2 * j + 1), digit_sum(j) + 1);
        }
    }

    #[test]
    fn thue_morse_first_eight() {
        let signs: Vec<i8> = (0..8).map(thue_morse).collect();
        assert_eq!(signs, vec![1, -1, -1, 1, -1, 1, 1, -1]);
    }

    #[test]
    fn thue_morse_recurrences() {
        for j in 0..(1u64 << 20) {
            assert_eq!(thue_morse(2 * j), thue_morse(j));
            assert_eq!(thue_morse(2 * j + 1), -thue_morse(j));
        }
    }

    #[test]
    fn signed_digits_five() {
        let s = signed_digits(5, 4).unwrap();
        assert_eq!(s.sigmas(), &[1, -1, 1, -1]);
    }

    #[test]
    fn signed_digits_extremes() {
        let n = 7;
        let zero = signed_digits(0, n).unwrap();
        assert!(zero.sigmas().iter().all(|&s| s == -1));
        let ones = signed_digits((1 << n) - 1, n).unwrap();
        assert!(ones.sigmas().iter().all(|&s| s == 1));
    }

    #[test]
    fn signed_digit_weighted_sum_identity() {
        // sum sigma_q 2^q = 2j + 1 - 2^n
        for n in 1..=12usize {
            for j in 0..(1u64 << n) {
                let s = signed_digits(j, n).unwrap();
                let total: i64 = s
                    .sigmas()
                    .iter()
                    .enumerate()
                    .map(|(q, &sg)| (sg as i64) << q)
                    .sum();
                assert_eq!(total, 2 * j as i64 + 1 - (1i64 << n));
            }
        }
    }

    #[test]
    fn u_value_selects_weights() {
        let lambda = [rational(1, 1), rational(10, 1), rational(100, 1)];
        assert_eq!(u_value(5, &lambda).unwrap(), rational(101, 1));
        assert_eq!(u_value(6, &lambda).unwrap(), rational(110, 1));
    }

    #[test]
    fn u_value_powers_of_two_recovers_j() {
        let lambda: Vec<BigRational> = (0..24).map(|q| rational(1i64 << q, 1)).collect();
        for j in [0u64, 1, 5, 100, 65535, (1 << 24) - 1] {
            assert_eq!(u_value(j, &lambda).unwrap(), rational(j as i64, 1));
        }
    }

    #[test]
    fn u_value_requires_enough_weights() {
        let lambda = [1.0f64, 2.0];
        assert!(u_value(4, &lambda).is_err());
        assert!(u_value(3, &lambda).is_ok());
    }

    #[test]
    fn signed_u_value_matches_sigma_sum() {
        let lambda: Vec<BigRational> = (1..=5).map(|k| rational(k, 3)).collect();
        for j in 0..(1u64 << 5) {
            let direct = signed_u_value(j, &lambda).unwrap();
            let sigmas = signed_digits(j, 5).unwrap();
            let mut acc = rational(0, 1);
            for (q, &sg) in sigmas.sigmas().iter().enumerate() {
                acc += rational(sg as i64, 1) * lambda[q].clone();
            }
            assert_eq!(direct, acc);
        }
    }

    proptest! {
        // Exact shift recurrences over random rational weights.
        #[test]
        fn u_value_shift_recurrences(
            j in 0u64..(1 << 20),
            nums in proptest::collection::vec(-50i64..50, 21),
            dens in proptest::collection::vec(1i64..20, 21),
        ) {
            let lambda: Vec<BigRational> = nums
                .iter()
                .zip(&dens)
                .map(|(&n, &d)| rational(n, d))
                .collect();
            let shifted = &lambda[1..];
            let even = u_value(2 * j, &lambda).unwrap();
            let odd = u_value(2 * j + 1, &lambda).unwrap();
            let base = u_value(j, shifted).unwrap();
            prop_assert_eq!(even, base.clone());
            prop_assert_eq!(odd, lambda[0].clone() + base);
        }
    }
}
