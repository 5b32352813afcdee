//! Exact integer linear recurrences and the two sequences under study.
//!
//! Padovan numbers here use the convention P(0) = P(1) = P(2) = 1 with
//! P(k+3) = P(k+1) + P(k), and Lucas numbers use L(0) = 2, L(1) = 1 with
//! L(k+2) = L(k+1) + L(k). Everything is exact `BigInt` arithmetic; indices
//! are unsigned by construction, so negative indices are unrepresentable.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("recurrence order must be positive")]
    ZeroOrder,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("all recurrence coefficients are zero")]
    DegenerateCoefficients,
}

/// A homogeneous linear recurrence with integer coefficients:
/// `x(k+r) = coeffs[r-1] x(k+r-1) + ... + coeffs[0] x(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceDef {
    coeffs: Vec<BigInt>,
    initial: Vec<BigInt>,
}

impl RecurrenceDef {
    pub fn new(coeffs: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self, SeqError> {
        if coeffs.is_empty() {
            return Err(SeqError::ZeroOrder);
        }
        if initial.len() != coeffs.len() {
            return Err(SeqError::LengthMismatch {
                expected: coeffs.len(),
                got: initial.len(),
            });
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(SeqError::DegenerateCoefficients);
        }
        Ok(RecurrenceDef { coeffs, initial })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn padovan() -> Self {
        RecurrenceDef::new(
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
        )
        .expect("valid fixed definition")
    }

    pub fn lucas() -> Self {
        RecurrenceDef::new(
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(2), BigInt::from(1)],
        )
        .expect("valid fixed definition")
    }

    pub fn term(&self, k: u64) -> BigInt {
        let r = self.order();
        if (k as usize) < r {
            return self.initial[k as usize].clone();
        }
        let mut window = self.initial.clone();
        for _ in r as u64..=k {
            let mut next = BigInt::zero();
            for (i, c) in self.coeffs.iter().enumerate() {
                next += c * &window[i];
            }
            window.rotate_left(1);
            window[r - 1] = next;
        }
        window[r - 1].clone()
    }

    /// All terms with index `0..=k_max`, computed in one forward pass.
    pub fn terms_through(&self, k_max: u64) -> Vec<BigInt> {
        let r = self.order();
        let mut out: Vec<BigInt> = Vec::with_capacity(k_max as usize + 1);
        out.extend(self.initial.iter().cloned());
        while (out.len() as u64) <= k_max {
            let n = out.len();
            let mut next = BigInt::zero();
            for (i, c) in self.coeffs.iter().enumerate() {
                next += c * &out[n - r + i];
            }
            out.push(next);
        }
        out.truncate(k_max as usize + 1);
        out
    }
}

pub fn padovan(k: u64) -> BigInt {
    RecurrenceDef::padovan().term(k)
}

pub fn lucas(k: u64) -> BigInt {
    RecurrenceDef::lucas().term(k)
}

pub fn recurrence_term(def: &RecurrenceDef, k: u64) -> BigInt {
    def.term(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn padovan_small_values() {
        let expected: [i64; 13] = [1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21];
        let got = RecurrenceDef::padovan().terms_through(12);
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(got[k], BigInt::from(*e), "index {k}");
        }
    }

    #[test]
    fn lucas_small_values() {
        let expected: [i64; 11] = [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123];
        let got = RecurrenceDef::lucas().terms_through(10);
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(got[k], BigInt::from(*e), "index {k}");
        }
    }

    #[test]
    fn lucas_doubling_identity() {
        // L(2k) = L(k)^2 - 2(-1)^k, an independent cross-check of the
        // forward recurrence.
        let terms = RecurrenceDef::lucas().terms_through(600);
        for k in 1..=300usize {
            let sign = if k % 2 == 0 { 2 } else { -2 };
            assert_eq!(
                terms[2 * k],
                &terms[k] * &terms[k] - BigInt::from(sign),
                "doubling failed at k = {k}"
            );
        }
    }

    #[test]
    fn padovan_difference_identity() {
        // P(m) - P(m-1) = P(m-5) for m >= 5.
        let terms = RecurrenceDef::padovan().terms_through(400);
        for m in 5..=400usize {
            assert_eq!(&terms[m] - &terms[m - 1], terms[m - 5], "identity failed at m = {m}");
        }
    }

    #[test]
    fn term_matches_bulk() {
        let def = RecurrenceDef::padovan();
        let bulk = def.terms_through(50);
        for k in 0..=50u64 {
            assert_eq!(def.term(k), bulk[k as usize]);
        }
    }

    #[test]
    fn validation_rejects_bad_definitions() {
        assert_eq!(
            RecurrenceDef::new(vec![], vec![]).unwrap_err(),
            SeqError::ZeroOrder
        );
        assert!(matches!(
            RecurrenceDef::new(vec![BigInt::one()], vec![]).unwrap_err(),
            SeqError::LengthMismatch { .. }
        ));
        assert_eq!(
            RecurrenceDef::new(vec![BigInt::zero()], vec![BigInt::one()]).unwrap_err(),
            SeqError::DegenerateCoefficients
        );
    }
}
