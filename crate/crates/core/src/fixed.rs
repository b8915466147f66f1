//! Fixed-point reals over big integers.
//!
//! A value is `mantissa / 2^frac_bits`. This is enough machinery to raise
//! algebraic numbers like `sqrt(2)` or `(1+sqrt(5))/2` to large powers and
//! look at them modulo 1 without losing the fractional part, which `f64`
//! cannot do once the integer part eats the mantissa.
//!
//! Operations align scales automatically (the result carries the larger
//! `frac_bits`), so mixed-precision arithmetic is well defined; multiplication
//! truncates back to the common scale.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Fixed-point real: `mantissa / 2^frac_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    mantissa: BigInt,
    frac_bits: u32,
}

impl Fixed {
    pub fn new(mantissa: BigInt, frac_bits: u32) -> Self {
        Fixed { mantissa, frac_bits }
    }

    pub fn zero() -> Self {
        Fixed { mantissa: BigInt::zero(), frac_bits: 0 }
    }

    pub fn from_bigint(value: BigInt, frac_bits: u32) -> Self {
        Fixed { mantissa: value << frac_bits, frac_bits }
    }

    pub fn from_i64(value: i64, frac_bits: u32) -> Self {
        Self::from_bigint(BigInt::from(value), frac_bits)
    }

    /// Exact conversion from `f64` (every finite double is a dyadic rational).
    pub fn from_f64(value: f64, frac_bits: u32) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain("Fixed::from_f64: value must be finite"));
        }
        // value = mant * 2^exp with integer mant
        let bits = value.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exponent == 0 {
            (fraction, -1074i64)
        } else {
            (fraction | (1u64 << 52), exponent - 1075)
        };
        let mut m = BigInt::from(sign) * BigInt::from(mant);
        let shift = exp + frac_bits as i64;
        if shift >= 0 {
            m <<= shift as u32;
        } else {
            m >>= (-shift) as u32;
        }
        Ok(Fixed { mantissa: m, frac_bits })
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    fn aligned(&self, other: &Fixed) -> (BigInt, BigInt, u32) {
        let bits = self.frac_bits.max(other.frac_bits);
        let a = &self.mantissa << (bits - self.frac_bits);
        let b = &other.mantissa << (bits - other.frac_bits);
        (a, b, bits)
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        let (a, b, bits) = self.aligned(other);
        Fixed { mantissa: a + b, frac_bits: bits }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        let (a, b, bits) = self.aligned(other);
        Fixed { mantissa: a - b, frac_bits: bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { mantissa: -&self.mantissa, frac_bits: self.frac_bits }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        let (a, b, bits) = self.aligned(other);
        Fixed { mantissa: (a * b) >> bits, frac_bits: bits }
    }

    pub fn mul_i64(&self, k: i64) -> Fixed {
        Fixed { mantissa: &self.mantissa * BigInt::from(k), frac_bits: self.frac_bits }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { mantissa: self.mantissa.abs(), frac_bits: self.frac_bits }
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    /// Floor square root at this scale; errors on negative input.
    pub fn sqrt(&self) -> Result<Fixed> {
        if self.is_negative() {
            return Err(Error::domain("Fixed::sqrt: negative input"));
        }
        // sqrt(m / 2^f) = sqrt(m << f) / 2^f
        let scaled: BigInt = &self.mantissa << self.frac_bits;
        Ok(Fixed { mantissa: scaled.sqrt(), frac_bits: self.frac_bits })
    }

    /// Power by repeated squaring.
    pub fn powi(&self, mut e: u32) -> Fixed {
        let mut result = Fixed::from_i64(1, self.frac_bits);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Integer part, rounding toward negative infinity.
    pub fn floor(&self) -> BigInt {
        self.mantissa.div_floor(&(BigInt::from(1) << self.frac_bits))
    }

    /// Fractional part in `[0, 1)` at the same scale.
    pub fn frac(&self) -> Fixed {
        let modulus = BigInt::from(1) << self.frac_bits;
        Fixed { mantissa: self.mantissa.mod_floor(&modulus), frac_bits: self.frac_bits }
    }

    /// Distance to the nearest integer, in `[0, 1/2]`.
    pub fn nearest_int_distance(&self) -> Fixed {
        let f = self.frac();
        let one = BigInt::from(1) << self.frac_bits;
        let complement = &one - &f.mantissa;
        if f.mantissa <= complement {
            f
        } else {
            Fixed { mantissa: complement, frac_bits: self.frac_bits }
        }
    }

    /// Approximate conversion to `f64`.
    pub fn to_f64(&self) -> f64 {
        // Split into integer and fractional parts so huge mantissas still
        // convert without the fractional bits being rounded away.
        let floor = self.floor();
        let frac = self.frac();
        let scale = (BigInt::from(1) << self.frac_bits).to_f64().unwrap_or(f64::INFINITY);
        let frac64 = frac.mantissa.to_f64().unwrap_or(0.0) / scale;
        floor.to_f64().unwrap_or(f64::NAN) + frac64
    }
}

/// `sqrt(k)` for a nonnegative integer `k` at the given precision.
pub fn sqrt_integer(k: u64, frac_bits: u32) -> Fixed {
    Fixed::from_bigint(BigInt::from(k), frac_bits).sqrt().expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_integers() {
        let x = Fixed::from_i64(-42, 128);
        assert_eq!(x.to_f64(), -42.0);
        assert_eq!(x.floor(), BigInt::from(-42));
    }

    #[test]
    fn from_f64_is_exact() {
        for v in [0.5, -0.375, 3.141592653589793, 1e-12, -7.0] {
            let x = Fixed::from_f64(v, 200).unwrap();
            assert_eq!(x.to_f64(), v);
        }
    }

    #[test]
    fn sqrt_two_squares_back() {
        let s = sqrt_integer(2, 256);
        let delta = s.mul(&s).sub(&Fixed::from_i64(2, 256)).abs();
        // |s^2 - 2| stays within a few ulps at scale 2^-256
        assert!(delta.to_f64() < 1e-70);
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mixed_scale_arithmetic() {
        let a = Fixed::from_i64(3, 16);
        let b = Fixed::from_f64(0.25, 64).unwrap();
        let sum = a.add(&b);
        assert_eq!(sum.frac_bits(), 64);
        assert_eq!(sum.to_f64(), 3.25);
        assert_eq!(a.mul(&b).to_f64(), 0.75);
    }

    #[test]
    fn floor_and_frac_negative_values() {
        let x = Fixed::from_f64(-1.25, 64).unwrap();
        assert_eq!(x.floor(), BigInt::from(-2));
        assert!((x.frac().to_f64() - 0.75).abs() < 1e-15);
        assert!((x.nearest_int_distance().to_f64() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn nearest_int_distance_half() {
        let x = Fixed::from_f64(2.5, 64).unwrap();
        assert!((x.nearest_int_distance().to_f64() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn golden_ratio_powers_approach_integers() {
        // phi = (1 + sqrt 5)/2; phi^q + (1-phi)^q is the Lucas sequence.
        let bits = 256;
        let sqrt5 = sqrt_integer(5, bits);
        let phi = sqrt5.add(&Fixed::from_i64(1, bits)).mul(&Fixed::from_f64(0.5, bits).unwrap());
        let p4 = phi.powi(4);
        assert!((p4.to_f64() - 6.854101966249685).abs() < 1e-12);
        assert!((p4.nearest_int_distance().to_f64() - 0.14589803375031546).abs() < 1e-12);
    }

    #[test]
    fn powi_matches_f64_for_small_values() {
        let x = Fixed::from_f64(1.4142135623730951, 192).unwrap();
        let p = x.powi(10);
        assert!((p.to_f64() - 1.4142135623730951f64.powi(10)).abs() < 1e-10);
    }

    proptest::proptest! {
        #[test]
        fn roundtrip_and_field_ops_match_f64(
            a in -1e6f64..1e6,
            b in -1e6f64..1e6,
        ) {
            let fa = Fixed::from_f64(a, 128).unwrap();
            let fb = Fixed::from_f64(b, 128).unwrap();
            proptest::prop_assert_eq!(fa.to_f64(), a);
            // exact dyadic inputs: sum and difference are exact in both systems
            proptest::prop_assert_eq!(fa.add(&fb).to_f64(), a + b);
            proptest::prop_assert_eq!(fa.sub(&fb).to_f64(), a - b);
            let dist = fa.nearest_int_distance().to_f64();
            proptest::prop_assert!((dist - (a - a.round()).abs()).abs() < 1e-9);
        }
    }
}
