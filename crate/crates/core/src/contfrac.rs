//! Certified continued fraction expansions and convergents.
//!
//! Expanding a continued fraction from an interval enclosure is only valid
//! while every partial quotient is determined by the enclosure: each step
//! takes a certified floor and a certified reciprocal, and the expansion
//! stops with an explicit error as soon as the interval is too wide to
//! decide the next quotient. An adaptive wrapper rebuilds the input at
//! doubled precision until the requested number of terms is certified.

use crate::real::CertifiedReal;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CfError {
    #[error("enclosure too wide to certify partial quotient {at_term}")]
    PrecisionExhausted { at_term: usize },
    #[error("no certified quotient beyond {at_term} even at {max_bits} bits")]
    AdaptiveLimit { at_term: usize, max_bits: u32 },
    #[error("expansion has only {have} convergents, none exceeding the requested bound")]
    InsufficientTerms { have: usize },
    #[error("failed to rebuild the input at {bits} bits: {message}")]
    Builder { bits: u32, message: String },
    #[error("denominator is zero")]
    ZeroDenominator,
}

/// A certified initial segment of a continued fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    /// Partial quotients `a_0, a_1, ...`; all entries are certified exact.
    pub quotients: Vec<BigInt>,
    /// Convergents `(p_i, q_i)` in lowest terms, one per quotient.
    pub convergents: Vec<(BigInt, BigInt)>,
    /// Number of certified terms (equals `quotients.len()`).
    pub certified_terms: usize,
}

impl CFExpansion {
    fn from_quotients(quotients: Vec<BigInt>) -> Self {
        let mut convergents = Vec::with_capacity(quotients.len());
        let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
        let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
        for a in &quotients {
            let p = a * &p1 + &p2;
            let q = a * &q1 + &q2;
            convergents.push((p.clone(), q.clone()));
            p2 = std::mem::replace(&mut p1, p);
            q2 = std::mem::replace(&mut q1, q);
        }
        let certified_terms = quotients.len();
        CFExpansion {
            quotients,
            convergents,
            certified_terms,
        }
    }
}

/// Expands `x` to `max_terms` certified partial quotients.
pub fn cf_expand(x: &CertifiedReal, max_terms: usize) -> Result<CFExpansion, CfError> {
    let mut quotients: Vec<BigInt> = Vec::with_capacity(max_terms);
    let mut current = x.clone();
    for i in 0..max_terms {
        let a = current
            .floor_certified()
            .ok_or(CfError::PrecisionExhausted { at_term: i })?;
        if i > 0 && a < BigInt::one() {
            // Quotients beyond the first are at least 1 for any real input;
            // anything else means the enclosure has degraded.
            return Err(CfError::PrecisionExhausted { at_term: i });
        }
        quotients.push(a.clone());
        if i + 1 < max_terms {
            let frac = current.sub(&CertifiedReal::from_bigint(&a, current.precision_bits()));
            if !frac.certainly_positive() {
                return Err(CfError::PrecisionExhausted { at_term: i + 1 });
            }
            current = frac.recip().expect("certainly positive fraction");
        }
    }
    Ok(CFExpansion::from_quotients(quotients))
}

/// Expands to `max_terms` quotients, rebuilding the input at doubled
/// precision (up to `max_bits`) whenever the current enclosure runs out.
/// Returns the expansion together with the precision that sufficed.
pub fn cf_expand_adaptive<F>(
    builder: F,
    start_bits: u32,
    max_bits: u32,
    max_terms: usize,
) -> Result<(CFExpansion, u32), CfError>
where
    F: Fn(u32) -> Result<CertifiedReal, String>,
{
    let mut bits = start_bits.max(16).min(max_bits);
    loop {
        let x = builder(bits).map_err(|message| CfError::Builder { bits, message })?;
        match cf_expand(&x, max_terms) {
            Ok(exp) => return Ok((exp, bits)),
            Err(CfError::PrecisionExhausted { at_term }) => {
                if bits >= max_bits {
                    return Err(CfError::AdaptiveLimit {
                        at_term,
                        max_bits: bits,
                    });
                }
                bits = (bits * 2).min(max_bits);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Exact expansion of the rational `num/den` by the Euclidean algorithm.
pub fn cf_expand_ratio(
    num: &BigInt,
    den: &BigInt,
    max_terms: usize,
) -> Result<CFExpansion, CfError> {
    if den.is_zero() {
        return Err(CfError::ZeroDenominator);
    }
    let (mut n, mut d) = if den.is_negative() {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    };
    let mut quotients = Vec::new();
    while !d.is_zero() && quotients.len() < max_terms {
        let a = num_integer::Integer::div_floor(&n, &d);
        let r = &n - &a * &d;
        quotients.push(a);
        n = std::mem::replace(&mut d, r);
    }
    Ok(CFExpansion::from_quotients(quotients))
}

/// Smallest index `i` with `q_i > bound`, together with that convergent.
pub fn find_convergent_exceeding<'a>(
    exp: &'a CFExpansion,
    bound: &BigInt,
) -> Result<(usize, &'a (BigInt, BigInt)), CfError> {
    for (i, pq) in exp.convergents.iter().enumerate() {
        if &pq.1 > bound {
            return Ok((i, pq));
        }
    }
    Err(CfError::InsufficientTerms {
        have: exp.convergents.len(),
    })
}

/// Data for the classical convergent-based irrationality bound: for every
/// rational `r/s` with `0 < s < cap`,
/// `|x - r/s| > 1 / ((max_quotient + 2) s^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendreBound {
    /// Index of the first convergent denominator exceeding the cap.
    pub cutoff_index: usize,
    /// Largest partial quotient among `a_0 ..= a_cutoff`.
    pub max_quotient: BigInt,
}

impl LegendreBound {
    /// The denominator `(max_quotient + 2) s^2` of the lower bound.
    pub fn gap_denominator(&self, s: &BigInt) -> BigInt {
        (&self.max_quotient + 2) * s * s
    }
}

pub fn legendre_lower_bound(exp: &CFExpansion, cap: &BigInt) -> Result<LegendreBound, CfError> {
    let (cutoff_index, _) = find_convergent_exceeding(exp, cap)?;
    let max_quotient = exp.quotients[..=cutoff_index]
        .iter()
        .max()
        .expect("nonempty quotient prefix")
        .clone();
    Ok(LegendreBound {
        cutoff_index,
        max_quotient,
    })
}
