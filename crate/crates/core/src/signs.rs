//! Sign words of the dyadic sine product on `(0, pi)`.
//!
//! `P_n(x) = sin x sin 2x ... sin 2^n x` keeps a constant sign on each
//! interval `(j pi / 2^n, (j+1) pi / 2^n)`. Splitting an interval in two at
//! the next level keeps the sign on the left half and flips it on the right,
//! which is exactly the monoid morphism `+ -> + -`, `- -> - +`; iterating it
//! from `+` yields the Thue-Morse prefix of length `2^n`.
//!
//! `sign_word_analytic` derives the word from actual evaluations at interval
//! midpoints (factor signs counted in log space so nothing underflows);
//! `morphism_word` iterates the morphism. The two routes and the digit-sum
//! formula must coincide exactly.

use serde::Serialize;

use crate::{Error, Result};

/// Word of signs of `P_n` across the `2^n` sign-constant intervals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignWord {
    pub n: u32,
    pub word: Vec<i8>,
}

impl SignWord {
    /// Render as a `+-` string.
    pub fn to_plus_minus(&self) -> String {
        self.word.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

/// Sign of `P_n` on each interval, from midpoint evaluation.
///
/// Midpoints `(2j+1) pi / 2^{n+1}` keep every factor `sin(2^k x)` at least
/// `sin(pi / 2^{n+1})` away from zero, so the factor signs are numerically
/// unambiguous; magnitudes are accumulated as `log |sin|` only to confirm
/// the product stayed representable, never to decide a sign.
pub fn sign_word_analytic(n: u32) -> Result<SignWord> {
    if n > 20 {
        return Err(Error::resource("sign_word_analytic: n above 20"));
    }
    let count = 1u64 << n;
    let mut word = Vec::with_capacity(count as usize);
    for j in 0..count {
        let x = (2 * j + 1) as f64 * std::f64::consts::PI / (2u64 << n) as f64;
        let mut negatives = 0u32;
        let mut log_magnitude = 0.0f64;
        for k in 0..=n {
            let v = ((1u64 << k) as f64 * x).sin();
            debug_assert!(v != 0.0, "midpoint hit a factor zero");
            if v < 0.0 {
                negatives += 1;
            }
            log_magnitude += v.abs().ln();
        }
        debug_assert!(log_magnitude.is_finite());
        word.push(if negatives % 2 == 0 { 1 } else { -1 });
    }
    Ok(SignWord { n, word })
}

/// `n`-fold application of `+ -> + -`, `- -> - +` to the one-letter word `+`.
pub fn morphism_word(n: u32) -> Result<SignWord> {
    if n > 24 {
        return Err(Error::resource("morphism_word: n above 24"));
    }
    let mut word: Vec<i8> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &s in &word {
            next.push(s);
            next.push(-s);
        }
        word = next;
    }
    Ok(SignWord { n, word })
}

/// Report of the interval-splitting relations between consecutive words.
#[derive(Debug, Clone, Serialize)]
pub struct SplittingReport {
    pub n: u32,
    pub relations_checked: u64,
    pub passed: bool,
}

/// Verify `p_{n+1, 2j} = p_{n, j}` and `p_{n+1, 2j+1} = -p_{n, j}` for all
/// `j < 2^n`, using analytic sign words on both levels.
pub fn splitting_check(n: u32) -> Result<SplittingReport> {
    if n > 14 {
        return Err(Error::resource("splitting_check: n above 14"));
    }
    let coarse = sign_word_analytic(n)?;
    let fine = sign_word_analytic(n + 1)?;
    let mut passed = true;
    for j in 0..(1usize << n) {
        if fine.word[2 * j] != coarse.word[j] || fine.word[2 * j + 1] != -coarse.word[j] {
            passed = false;
        }
    }
    Ok(SplittingReport { n, relations_checked: 2u64 << n, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::thue_morse;

    #[test]
    fn analytic_word_small_cases() {
        assert_eq!(sign_word_analytic(1).unwrap().word, vec![1, -1]);
        assert_eq!(sign_word_analytic(2).unwrap().word, vec![1, -1, -1, 1]);
    }

    #[test]
    fn morphism_word_small_cases() {
        assert_eq!(morphism_word(0).unwrap().word, vec![1]);
        assert_eq!(morphism_word(2).unwrap().word, vec![1, -1, -1, 1]);
    }

    #[test]
    fn words_start_positive() {
        for n in 0..=10 {
            assert_eq!(morphism_word(n).unwrap().word[0], 1);
            assert_eq!(sign_word_analytic(n).unwrap().word[0], 1);
        }
    }

    #[test]
    fn morphism_equals_thue_morse_prefix() {
        let w = morphism_word(10).unwrap();
        for (j, &s) in w.word.iter().enumerate() {
            assert_eq!(s, thue_morse(j as u64));
        }
    }

    #[test]
    fn analytic_equals_morphism_equals_thue_morse() {
        for n in 0..=16u32 {
            let analytic = sign_word_analytic(n).unwrap();
            let morphism = morphism_word(n).unwrap();
            assert_eq!(analytic.word, morphism.word, "n = {n}");
            for (j, &s) in analytic.word.iter().enumerate() {
                assert_eq!(s, thue_morse(j as u64), "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn analytic_word_lengths() {
        for n in 0..=8 {
            assert_eq!(sign_word_analytic(n).unwrap().word.len(), 1 << n);
        }
    }

    #[test]
    fn morphism_fixed_point_on_even_positions() {
        for n in 0..=12u32 {
            let w = morphism_word(n).unwrap();
            let next = morphism_word(n + 1).unwrap();
            for j in 0..w.word.len() {
                assert_eq!(next.word[2 * j], w.word[j]);
            }
        }
    }

    #[test]
    fn splitting_relations() {
        for n in [0u32, 1, 5, 10, 14] {
            let report = splitting_check(n).unwrap();
            assert!(report.passed, "n = {n}");
            assert_eq!(report.relations_checked, 2u64 << n);
        }
    }

    #[test]
    fn splitting_degenerate_base() {
        // (+) splits to (+, -).
        let fine = sign_word_analytic(1).unwrap();
        assert_eq!(fine.word, vec![1, -1]);
    }

    #[test]
    fn plus_minus_rendering() {
        assert_eq!(morphism_word(3).unwrap().to_plus_minus(), "+--+-++-");
    }

    #[test]
    fn caps() {
        assert!(sign_word_analytic(21).is_err());
        assert!(morphism_word(25).is_err());
        assert!(splitting_check(15).is_err());
    }
}
