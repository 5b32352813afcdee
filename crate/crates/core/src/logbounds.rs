//! Lower bounds for linear forms in logarithms and the resulting absolute
//! bound on the exponents of a multiply-represented difference.
//!
//! Two published estimates are wrapped here. The first is the general
//! real-case bound of Matveev (in Bugeaud, Mignotte and Siksek's widely used
//! formulation) for forms in `s` logarithms of algebraic numbers from a field
//! of degree `D`:
//!
//! ```text
//! log |Lambda| > -1.4 * 30^(s+3) * s^4.5 * D^2 (1 + log D)(1 + log B) * A_1 ... A_s
//! ```
//!
//! The second is the sharper two-logarithm estimate of Laurent, Mignotte and
//! Nesterenko, which is not needed for the main chain but is provided for
//! cross-checks. Both are evaluated in certified interval arithmetic.
//!
//! [`bound_chain`] strings the estimates together exactly as the published
//! argument does, recomputing every intermediate constant and comparing each
//! against the value that appears in print. The chain ends with a fixed point
//! iteration that turns `n < C (1 + log 2n)^3` into an explicit numeric
//! bound on `n`.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::field::{FieldConstants, FieldError};
use crate::real::{ln2_const, CertifiedReal, RealError};

/// Errors from bound evaluation.
#[derive(Debug, Error)]
pub enum LogBoundsError {
    #[error(transparent)]
    Real(#[from] RealError),
    #[error(transparent)]
    Field(#[from] FieldError),
    /// A linear form description fails basic sanity checks.
    #[error("invalid linear form data: {0}")]
    InvalidSpec(String),
    /// The index window derivation needs the larger index to clear a small
    /// threshold before its inequalities are valid.
    #[error("index m = {0} is below the window's validity threshold of 8")]
    IndexTooSmall(u32),
    /// The growth-bound fixed point iteration failed to stabilise.
    #[error("fixed point iteration failed to converge within {0} steps")]
    NonConvergence(u32),
}

/// Description of a linear form in logarithms, carrying exactly the data the
/// general lower bound consumes.
#[derive(Debug, Clone)]
pub struct LinearFormSpec {
    /// Number of logarithms in the form.
    pub num_terms: u32,
    /// Degree of the number field containing all the algebraic numbers.
    pub degree: u32,
    /// One certified height majorant `A_j` per term, each required to
    /// satisfy `A_j >= max(D h(g_j), |log g_j|, 0.16)`.
    pub height_majorants: Vec<CertifiedReal>,
    /// Bound on the absolute values of the integer coefficients.
    pub coefficient_bound: BigInt,
}

/// The constant `C_1(n)` from Matveev's theorem,
/// `min{ (1/chi) (en/2)^chi 30^(n+3) n^3.5, 2^(6n+20) }` with `chi = 1` in
/// the totally real case and `chi = 2` otherwise.
pub fn matveev_c1(num_terms: u32, totally_real: bool, prec: u32) -> Result<CertifiedReal, LogBoundsError> {
    if num_terms == 0 {
        return Err(LogBoundsError::InvalidSpec("a linear form needs at least one term".into()));
    }
    let n = i64::from(num_terms);
    let half_en = crate::real::e_const(prec)
        .mul_i64(n)
        .div_u64(2);
    let chi: u32 = if totally_real { 1 } else { 2 };
    let mut smooth = half_en.powi(chi);
    if chi == 2 {
        smooth = smooth.div_u64(2);
    }
    let pow30 = BigInt::from(30).pow(num_terms + 3);
    let n35 = CertifiedReal::from_i64(n, prec).powi(3).mul(&CertifiedReal::from_i64(n, prec).sqrt()?);
    smooth = smooth.mul_int(&pow30).mul(&n35);
    let crude = CertifiedReal::from_bigint(&(BigInt::one() << (6 * num_terms + 20)), prec);
    Ok(smooth.min_interval(&crude))
}

/// Positive exponent `E` such that `log |Lambda| > -E` for a nonzero real
/// form matching `spec`, by the general estimate quoted in the module
/// documentation.
pub fn bms_real_lower_exponent(spec: &LinearFormSpec, prec: u32) -> Result<CertifiedReal, LogBoundsError> {
    if spec.height_majorants.len() != spec.num_terms as usize {
        return Err(LogBoundsError::InvalidSpec(format!(
            "{} height majorants supplied for a form in {} logarithms",
            spec.height_majorants.len(),
            spec.num_terms
        )));
    }
    if spec.degree == 0 {
        return Err(LogBoundsError::InvalidSpec("field degree must be positive".into()));
    }
    if spec.coefficient_bound.sign() != num_bigint::Sign::Plus {
        return Err(LogBoundsError::InvalidSpec("coefficient bound must be positive".into()));
    }
    for a in &spec.height_majorants {
        if !a.certainly_positive() {
            return Err(LogBoundsError::InvalidSpec("height majorants must be certainly positive".into()));
        }
    }
    let one = CertifiedReal::one(prec);
    let mut exponent = bms_base_coefficient(spec.num_terms, spec.degree, prec)?;
    let log_b = CertifiedReal::from_bigint(&spec.coefficient_bound, prec).ln()?;
    exponent = exponent.mul(&one.add(&log_b));
    for a in &spec.height_majorants {
        exponent = exponent.mul(&a.with_precision(prec));
    }
    Ok(exponent)
}

/// The coefficient-free part `1.4 * 30^(s+3) * s^4.5 * D^2 (1 + log D)` of
/// the general lower bound. [`bound_chain`] keeps `(1 + log B)` symbolic,
/// so it consumes this factor directly.
pub fn bms_base_coefficient(num_terms: u32, degree: u32, prec: u32) -> Result<CertifiedReal, LogBoundsError> {
    if num_terms == 0 || degree == 0 {
        return Err(LogBoundsError::InvalidSpec("term count and degree must be positive".into()));
    }
    let s = i64::from(num_terms);
    let d = i64::from(degree);
    let s45 = CertifiedReal::from_i64(s, prec).powi(4).mul(&CertifiedReal::from_i64(s, prec).sqrt()?);
    let one = CertifiedReal::one(prec);
    let d_part = CertifiedReal::from_i64(d * d, prec).mul(&one.add(&CertifiedReal::from_i64(d, prec).ln()?));
    Ok(CertifiedReal::from_ratio_i64(7, 5, prec)?
        .mul_int(&BigInt::from(30).pow(num_terms + 3))
        .mul(&s45)
        .mul(&d_part))
}

/// The two-logarithm lower bound of Laurent, Mignotte and Nesterenko:
/// `log |Lambda| >= -24.34 d^4 max{log b' + 0.14, 21/d, 1/2}^2 log B_1 log B_2`.
///
/// Returns the positive exponent, so `log |Lambda| >= -result`.
pub fn lmn_two_log_lower(
    log_b1: &CertifiedReal,
    log_b2: &CertifiedReal,
    b_prime: &CertifiedReal,
    degree: u32,
    prec: u32,
) -> Result<CertifiedReal, LogBoundsError> {
    if degree == 0 {
        return Err(LogBoundsError::InvalidSpec("field degree must be positive".into()));
    }
    if !b_prime.certainly_positive() {
        return Err(LogBoundsError::InvalidSpec("b' must be certainly positive".into()));
    }
    let d = i64::from(degree);
    let corner = b_prime
        .ln()?
        .add(&CertifiedReal::from_ratio_i64(7, 50, prec)?)
        .max_interval(&CertifiedReal::from_ratio_i64(21, d, prec)?)
        .max_interval(&CertifiedReal::from_ratio_i64(1, 2, prec)?);
    Ok(CertifiedReal::from_ratio_i64(2434, 100, prec)?
        .mul_i64(d * d * d * d)
        .mul(&corner.powi(2))
        .mul(&log_b1.with_precision(prec))
        .mul(&log_b2.with_precision(prec)))
}

/// Certified window tying the two indices of any solution together: once the
/// growth envelopes of both sequences are combined, the Lucas index `n` of a
/// represented value is pinned between two linear functions of the other
/// index `m`.
#[derive(Debug, Clone)]
pub struct IndexWindow {
    /// Certified lower bound `(m - 7) log(alpha)/log(delta) - 1 < n`.
    pub n_lo: CertifiedReal,
    /// Certified upper bound `n < (m - 1) log(alpha)/log(delta) + 3`.
    pub n_hi: CertifiedReal,
    /// Whether `m < 2n` is certified from the lower window edge.
    pub m_lt_2n_certified: bool,
}

/// Computes the index window for a given `m`. The growth envelope argument
/// behind the window needs `m >= 8`.
pub fn index_window(m: u32, consts: &FieldConstants) -> Result<IndexWindow, LogBoundsError> {
    if m < 8 {
        return Err(LogBoundsError::IndexTooSmall(m));
    }
    let tau_inv = consts.tau_inv();
    let n_lo = tau_inv.mul_i64(i64::from(m) - 7).add_i64(-1);
    let n_hi = tau_inv.mul_i64(i64::from(m) - 1).add_i64(3);
    let m_real = CertifiedReal::from_i64(i64::from(m), consts.working_bits);
    let m_lt_2n_certified = m_real.certainly_lt(&n_lo.mul_i64(2));
    Ok(IndexWindow { n_lo, n_hi, m_lt_2n_certified })
}

/// The four linear forms in logarithms attached to a pair of representations
/// `P(m) - L(n) = P(m1) - L(n1)`, with `m > m1` and `n > n1`.
///
/// Writing `P(k) = a alpha^k + e(k)` and `L(k) = delta^k + eta^k`,
/// rearranging the equation four ways and taking logarithms of the dominant
/// factors yields, in order:
///
/// ```text
/// Gamma  = n  log delta - m  log alpha - log a
/// Gamma1 = n1 log delta - m  log alpha - log a + log(delta^(n-n1) - 1)
/// Gamma2 = n  log delta - m1 log alpha - log a - log(alpha^(m-m1) - 1)
/// Gamma3 = n1 log delta - m1 log alpha - log a + log(delta^(n-n1) - 1)
///                                              - log(alpha^(m-m1) - 1)
/// ```
#[derive(Debug, Clone)]
pub struct LinearForms {
    pub gamma: CertifiedReal,
    pub gamma1: CertifiedReal,
    pub gamma2: CertifiedReal,
    pub gamma3: CertifiedReal,
}

/// Evaluates all four forms for concrete indices.
pub fn linear_forms(
    n: u32,
    m: u32,
    n1: u32,
    m1: u32,
    consts: &FieldConstants,
) -> Result<LinearForms, LogBoundsError> {
    if n1 >= n || m1 >= m || m1 == 0 {
        return Err(LogBoundsError::InvalidSpec(format!(
            "need n > n1 >= 0 and m > m1 >= 1, got n = {n}, n1 = {n1}, m = {m}, m1 = {m1}"
        )));
    }
    let base = |nn: u32, mm: u32| {
        consts
            .ln_delta
            .mul_i64(i64::from(nn))
            .sub(&consts.ln_alpha.mul_i64(i64::from(mm)))
            .sub(&consts.ln_a)
    };
    let ln_delta_gap = consts.delta.powi(n - n1).add_i64(-1).ln()?;
    let ln_alpha_gap = consts.alpha.powi(m - m1).add_i64(-1).ln()?;
    Ok(LinearForms {
        gamma: base(n, m),
        gamma1: base(n1, m).add(&ln_delta_gap),
        gamma2: base(n, m1).sub(&ln_alpha_gap),
        gamma3: base(n1, m1).add(&ln_delta_gap).sub(&ln_alpha_gap),
    })
}

/// One reproducible inequality between explicit constants, used while
/// converting the exact difference equations into clean bounds on the linear
/// forms. Each check certifies `lhs < rhs`.
#[derive(Debug, Clone)]
pub struct EnvelopeCheck {
    pub id: &'static str,
    pub description: String,
    pub lhs: CertifiedReal,
    pub rhs: CertifiedReal,
    pub holds: bool,
}

fn check(id: &'static str, description: String, lhs: CertifiedReal, rhs: CertifiedReal) -> EnvelopeCheck {
    let holds = lhs.certainly_lt(&rhs);
    EnvelopeCheck { id, description, lhs, rhs, holds }
}

/// Certifies the numeric envelope inequalities used when the small
/// (conjugate and second-root) terms of both sequences are absorbed into
/// explicit constants. All sides are recomputed from the certified field
/// constants; none of the published decimals are trusted.
pub fn envelope_checks(consts: &FieldConstants) -> Result<Vec<EnvelopeCheck>, LogBoundsError> {
    let w = consts.working_bits;
    let one = CertifiedReal::one(w);
    let a = &consts.a;
    let alpha = &consts.alpha;
    let delta = &consts.delta;
    let beta = &consts.beta_abs;
    let b = &consts.b_abs;
    let eta = &consts.eta_abs;
    let dec = |s: &str| CertifiedReal::from_decimal_str(s, w);

    // Worst case of |eta^n + eta^n1 - 2 Re(b beta^m) + 2 Re(b beta^m1)| over
    // the index ranges n > n1 >= 1 and m > m1 >= 1.
    let small_sum = eta
        .powi(2)
        .add(eta)
        .add(&b.mul_i64(2).mul(&beta.powi(2).add(beta)));
    let c302 = dec("3.02")?;
    let c476 = dec("4.76")?;
    let c403 = dec("4.03")?;
    let mut checks = vec![
        check(
            "envelope_small_sum",
            "combined small terms of a represented pair stay below 3.02".into(),
            small_sum,
            c302.clone(),
        ),
        check(
            "envelope_base_476",
            "1 + a + 3.02/delta < 4.76".into(),
            one.add(a).add(&c302.div(delta)?),
            c476.clone(),
        ),
        check(
            "envelope_base_501",
            "4.76/(a alpha) < 5.01".into(),
            c476.div(&a.mul(alpha))?,
            dec("5.01")?,
        ),
        check(
            "envelope_alpha7",
            "4.76/a < alpha^7".into(),
            c476.div(a)?,
            alpha.powi(7),
        ),
        check(
            "envelope_delta4",
            "4.76/(a alpha) < delta^4".into(),
            c476.div(&a.mul(alpha))?,
            delta.powi(4),
        ),
        check(
            "envelope_forms_521",
            "1 + 3.02/(a alpha) < 5.21".into(),
            one.add(&c302.div(&a.mul(alpha))?),
            dec("5.21")?,
        ),
        check(
            "envelope_forms_403",
            "1 + 3.02/delta < 4.03".into(),
            one.add(&c302.div(delta)?),
            c403.clone(),
        ),
        check(
            "envelope_gap_18",
            "4.03/(a (1 - 1/alpha) alpha) < 18 once the larger indices differ".into(),
            c403.div(&a.mul(&one.sub(&alpha.recip()?)).mul(alpha))?,
            CertifiedReal::from_i64(18, w),
        ),
        check(
            "envelope_pair_numerator",
            "the small terms of the double difference stay below 3".into(),
            b.mul_i64(2).mul(&beta.powi(4).add(beta)).add(&eta.powi(2)).add(eta),
            CertifiedReal::from_i64(3, w),
        ),
        check(
            "envelope_gap20_135",
            "3/(a (1 - alpha^-20) alpha) < 13.5 once the index gap reaches 20".into(),
            CertifiedReal::from_i64(3, w).div(&a.mul(&one.sub(&alpha.powi(20).recip()?)).mul(alpha))?,
            CertifiedReal::from_ratio_i64(27, 2, w)?,
        ),
    ];
    for c in &mut checks {
        c.lhs = c.lhs.with_precision(consts.precision_bits);
        c.rhs = c.rhs.with_precision(consts.precision_bits);
    }
    Ok(checks)
}

/// Comparison outcome of one recomputed chain constant against its published
/// decimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageStatus {
    /// The certified enclosure lies within the stated relative tolerance of
    /// the published value.
    Match,
    /// The certified enclosure is fully outside the tolerance band.
    Mismatch,
    /// The enclosure straddles the tolerance band edge; a precision increase
    /// would resolve it. Never expected at the default precision.
    Indeterminate,
}

/// One intermediate constant of the bound chain.
#[derive(Debug, Clone)]
pub struct BoundStage {
    pub id: &'static str,
    /// The published decimal, kept as a string so it can be re-parsed
    /// exactly.
    pub published: &'static str,
    /// Accepted relative deviation from the published value, in percent.
    pub tolerance_percent: u32,
    pub recomputed: CertifiedReal,
    pub status: StageStatus,
}

/// Output of [`bound_chain`].
#[derive(Debug, Clone)]
pub struct BoundChainReport {
    pub stages: Vec<BoundStage>,
    /// Coefficient of `(1 + log 2n)^2` bounding `(n - n1) log delta` and
    /// `(m - m1) log alpha` in the single-collapse cases.
    pub max_single_coeff: CertifiedReal,
    /// Coefficient of `(1 + log 2n)^3` in the final inequality for `n`.
    pub cubic_coeff: CertifiedReal,
    /// Certified absolute bound on `n`, from the published final inequality
    /// `n < 3 + C (1 + log 2n)^3`.
    pub n_upper: CertifiedReal,
    /// Certified absolute bound on `n` after restoring the `1/log delta`
    /// factor that the published final step drops, making the bound
    /// self-contained. Larger than [`Self::n_upper`] by roughly the factor
    /// `1/log delta`.
    pub n_upper_sound: CertifiedReal,
}

impl BoundChainReport {
    pub fn stage(&self, id: &str) -> Option<&BoundStage> {
        self.stages.iter().find(|s| s.id == id)
    }
}

fn classify(recomputed: &CertifiedReal, published: &str, tolerance_percent: u32) -> Result<StageStatus, LogBoundsError> {
    let prec = recomputed.precision_bits();
    let p = CertifiedReal::from_decimal_str(published, prec)?;
    let band_lo = p.mul_i64(i64::from(100 - tolerance_percent)).div_u64(100);
    let band_hi = p.mul_i64(i64::from(100 + tolerance_percent)).div_u64(100);
    if band_lo.certainly_le(recomputed) && recomputed.certainly_le(&band_hi) {
        Ok(StageStatus::Match)
    } else if recomputed.certainly_lt(&band_lo) || band_hi.certainly_lt(recomputed) {
        Ok(StageStatus::Mismatch)
    } else {
        Ok(StageStatus::Indeterminate)
    }
}

/// Solves `x = map(x)` for an increasing, eventually contracting map by
/// fixed point iteration from `x = 1000`, then certifies the result: the
/// returned value `x_hat` satisfies `map(x_hat) <= x_hat`, so every `n` with
/// `n <= map(n)` obeys `n <= x_hat`.
pub fn solve_growth_bound<F>(map: F, rel_tol: f64, prec: u32) -> Result<CertifiedReal, LogBoundsError>
where
    F: Fn(&CertifiedReal) -> Result<CertifiedReal, LogBoundsError>,
{
    let mut x = CertifiedReal::from_i64(1000, prec);
    let mut converged = false;
    for _ in 0..200 {
        let fx = map(&x)?;
        let rel = (fx.to_f64() - x.to_f64()).abs() / x.to_f64().max(1.0);
        x = fx.midpoint_point();
        if rel <= rel_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LogBoundsError::NonConvergence(200));
    }
    // Nudge upward until the bound property is certified. The map is
    // strongly contracting near its fixed point, so a couple of relative
    // bumps of 2^-20 suffice.
    let mut candidate = x;
    for _ in 0..64 {
        candidate = candidate.add(&candidate.div_u64(1 << 20)).midpoint_point();
        if map(&candidate)?.certainly_le(&candidate) {
            return Ok(candidate);
        }
    }
    Err(LogBoundsError::NonConvergence(64))
}

/// Recomputes the entire published chain of constants leading to the
/// absolute bound `n < 2.45e47`, comparing every printed intermediate value
/// along the way.
///
/// The chain follows the published argument step for step:
///
/// 1. A form in the three logarithms `23, delta, alpha` (degree 6 field)
///    bounds the dominant difference, giving a coefficient near `7.33e13`
///    for `(1 + log 2n)`.
/// 2. Collapsing whichever sequence has the smaller index gap produces two
///    cases whose `(1 + log 2n)^2` coefficients are near `2.57e27` and
///    `1.71e27`; published intermediates for the heights and the `A_1`
///    majorants are checked too.
/// 3. Collapsing both sequences yields a three-logarithm form whose height
///    majorant reuses the step 2 maximum, giving the cubic coefficient near
///    `1.8e41` and finally `n < 3 + C (1 + log 2n)^3`.
///
/// Additive height contributions that the published argument absorbs into
/// the leading coefficients are folded in by dividing them by the smallest
/// value `(1 + log 2n)` can take (the argument assumes `n >= 300`), which
/// only enlarges the recomputed coefficient and keeps it a true bound.
pub fn bound_chain(consts: &FieldConstants) -> Result<BoundChainReport, LogBoundsError> {
    bound_chain_with_tolerance(consts, 1e-9)
}

/// [`bound_chain`] with an explicit relative tolerance for the fixed point
/// iterations, used to confirm the reported bound is insensitive to the
/// stopping rule.
pub fn bound_chain_with_tolerance(
    consts: &FieldConstants,
    fp_rel_tol: f64,
) -> Result<BoundChainReport, LogBoundsError> {
    let w = consts.working_bits;
    let one = CertifiedReal::one(w);
    let ln2 = ln2_const(w);
    let ln23 = CertifiedReal::from_i64(23, w).ln()?;
    let ln23_third = ln23.div_u64(3);
    let ln_sqrt5 = CertifiedReal::from_i64(5, w).ln()?.div_u64(2);

    // Smallest value of (1 + log 2n) on the range n >= 300 where the chain
    // operates; used to fold additive height terms into multiplicative
    // coefficients without weakening them.
    let fold1 = one.add(&CertifiedReal::from_i64(600, w).ln()?).recip()?;
    let fold2 = fold1.powi(2);

    let base = bms_base_coefficient(3, 6, w)?;
    let a2 = consts.ln_delta.mul_i64(3);
    let a3 = consts.ln_alpha.mul_i64(2);
    let factor = base.mul(&a2).mul(&a3);
    let initial = factor.mul(&ln23.mul_i64(2));

    let extra_c1 = ln2.add(&ln23_third);
    let hg1_c1 = initial.div_u64(2).add(&extra_c1.mul(&fold1));
    let a1_c1 = hg1_c1.mul_i64(6);
    let case1 = factor.mul(&a1_c1);
    let case1_shifted = case1.add(
        &CertifiedReal::from_decimal_str("5.21", w)?
            .ln()?
            .mul(&fold2),
    );

    let h_alpha_c2 = initial.div_u64(3);
    let extra_c2 = ln2.add(&ln23_third).add(&ln_sqrt5);
    let hg1_c2 = h_alpha_c2.add(&extra_c2.mul(&fold1));
    let a1_c2 = hg1_c2.mul_i64(6);
    let case2 = factor.mul(&a1_c2);

    let max_cases = case1.max_interval(&case2);
    let extra_c3 = consts.ln_delta.mul_i64(2).add(&ln23_third).add(&ln2);
    let hg3 = max_cases.mul_i64(5).div_u64(6).add(&extra_c3.mul(&fold2));
    let a1_g3 = max_cases.mul_i64(6);
    let cubic = factor.mul(&a1_g3);

    let paper_map = |x: &CertifiedReal| -> Result<CertifiedReal, LogBoundsError> {
        Ok(cubic
            .mul(&one.add(&x.mul_i64(2).ln()?).powi(3))
            .add_i64(3))
    };
    let n_upper = solve_growth_bound(paper_map, fp_rel_tol, w)?;

    let ln_135 = CertifiedReal::from_ratio_i64(27, 2, w)?.ln()?;
    let sound_map = |x: &CertifiedReal| -> Result<CertifiedReal, LogBoundsError> {
        Ok(cubic
            .mul(&one.add(&x.mul_i64(2).ln()?).powi(3))
            .add(&ln_135)
            .div(&consts.ln_delta)?
            .add_i64(3))
    };
    let n_upper_sound = solve_growth_bound(sound_map, fp_rel_tol, w)?;

    let out = consts.precision_bits;
    let mut stages = Vec::new();
    let mut push = |id: &'static str,
                    published: &'static str,
                    tolerance_percent: u32,
                    value: &CertifiedReal|
     -> Result<(), LogBoundsError> {
        let recomputed = value.with_precision(out);
        let status = classify(value, published, tolerance_percent)?;
        stages.push(BoundStage { id, published, tolerance_percent, recomputed, status });
        Ok(())
    };
    push("chain_initial", "7.33e13", 1, &initial)?;
    push("chain_height_pair_case1", "3.66e13", 1, &hg1_c1)?;
    push("chain_majorant_case1", "2.2e14", 1, &a1_c1)?;
    push("chain_case1", "2.57e27", 1, &case1)?;
    push("chain_case1_shifted", "2.57e28", 1, &case1_shifted)?;
    push("chain_height_alpha_case2", "2.43e13", 1, &h_alpha_c2)?;
    push("chain_height_pair_case2", "2.44e13", 1, &hg1_c2)?;
    push("chain_majorant_case2", "1.47e14", 1, &a1_c2)?;
    push("chain_case2", "1.71e27", 1, &case2)?;
    push("chain_max_cases", "2.57e27", 1, &max_cases)?;
    push("chain_height_pair_final", "2.14e27", 1, &hg3)?;
    push("chain_majorant_final", "1.54e28", 1, &a1_g3)?;
    push("chain_cubic", "1.8e41", 1, &cubic)?;
    push("chain_n_upper", "2.45e47", 5, &n_upper)?;

    Ok(BoundChainReport {
        stages,
        max_single_coeff: max_cases.with_precision(out),
        cubic_coeff: cubic.with_precision(out),
        n_upper: n_upper.with_precision(out),
        n_upper_sound: n_upper_sound.with_precision(out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_constants;

    fn consts() -> FieldConstants {
        build_constants(192).unwrap()
    }

    fn rel_close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * x.abs().max(y.abs())
    }

    #[test]
    fn matveev_constant_matches_direct_evaluation() {
        // Independent f64 evaluation of the same formula.
        let direct = |n: f64, chi: f64| -> f64 {
            let smooth =
                (1.0 / chi) * (0.5 * std::f64::consts::E * n).powf(chi) * 30f64.powf(n + 3.0) * n.powf(3.5);
            smooth.min(2f64.powf(6.0 * n + 20.0))
        };
        let cases = [
            (3u32, true, 139007316922.0),
            (1u32, true, 1100904.14),
            (3u32, false, 274877906944.0),
        ];
        for (n, real, pinned) in cases {
            let got = matveev_c1(n, real, 128).unwrap().to_f64();
            let want = direct(f64::from(n), if real { 1.0 } else { 2.0 });
            assert!(rel_close(got, want, 1e-9), "n = {n}, real = {real}: {got} vs {want}");
            assert!(rel_close(got, pinned, 1e-6), "n = {n}, real = {real}: {got} vs pinned {pinned}");
        }
        assert!(matveev_c1(0, true, 128).is_err());
    }

    #[test]
    fn two_log_bound_matches_direct_evaluation() {
        let w = 128;
        let one = CertifiedReal::one(w);
        let flat = lmn_two_log_lower(&one, &one, &one, 1, w).unwrap().to_f64();
        assert!(rel_close(flat, 24.34 * 21.0f64.powi(2), 1e-9), "{flat}");
        assert!(rel_close(flat, 10733.94, 1e-6), "{flat}");

        let b_prime = crate::real::e_const(w).powi(10);
        let steep = lmn_two_log_lower(&one, &one, &b_prime, 6, w).unwrap().to_f64();
        assert!(rel_close(steep, 24.34 * 6f64.powi(4) * 10.14f64.powi(2), 1e-9), "{steep}");
        assert!(rel_close(steep, 3243407.267, 1e-6), "{steep}");
        assert!(lmn_two_log_lower(&one, &one, &one, 0, w).is_err());
    }

    #[test]
    fn general_bound_agrees_with_chain_entry() {
        // The three-logarithm form that opens the chain: terms 23, delta,
        // alpha over a degree 6 field with B = 600.
        let c = consts();
        let w = c.working_bits;
        let ln23 = CertifiedReal::from_i64(23, w).ln().unwrap();
        let spec = LinearFormSpec {
            num_terms: 3,
            degree: 6,
            height_majorants: vec![ln23.mul_i64(2), c.ln_delta.mul_i64(3), c.ln_alpha.mul_i64(2)],
            coefficient_bound: BigInt::from(600),
        };
        let full = bms_real_lower_exponent(&spec, w).unwrap();
        let report = bound_chain(&c).unwrap();
        let initial = report.stage("chain_initial").unwrap();
        let one_plus_ln600 = 1.0 + 600f64.ln();
        assert!(
            rel_close(full.to_f64(), initial.recomputed.to_f64() * one_plus_ln600, 1e-12),
            "{} vs {}",
            full.to_f64(),
            initial.recomputed.to_f64() * one_plus_ln600
        );

        let bad = LinearFormSpec { height_majorants: vec![ln23], ..spec.clone() };
        assert!(bms_real_lower_exponent(&bad, w).is_err());
    }

    #[test]
    fn envelope_inequalities_all_certified() {
        let c = consts();
        let checks = envelope_checks(&c).unwrap();
        assert_eq!(checks.len(), 10);
        for ch in &checks {
            assert!(ch.holds, "{} failed: {} vs {}", ch.id, ch.lhs.to_f64(), ch.rhs.to_f64());
        }
        // Spot-check two recomputed sides against independent decimals.
        let small = checks.iter().find(|c| c.id == "envelope_small_sum").unwrap();
        assert!((small.lhs.to_f64() - 1.7968).abs() < 1e-3, "{}", small.lhs.to_f64());
        let gap = checks.iter().find(|c| c.id == "envelope_gap_18").unwrap();
        assert!((gap.lhs.to_f64() - 17.19).abs() < 0.02, "{}", gap.lhs.to_f64());
    }

    #[test]
    fn index_window_brackets_actual_solutions() {
        let c = consts();
        // The largest multiply-represented value has representations at
        // (m, n) = (45, 25) and (41, 20); both must sit in their windows.
        for (m, n) in [(45u32, 25i64), (41, 20)] {
            let win = index_window(m, &c).unwrap();
            let n_real = CertifiedReal::from_i64(n, c.working_bits);
            assert!(win.n_lo.certainly_lt(&n_real), "m = {m}");
            assert!(n_real.certainly_lt(&win.n_hi), "m = {m}");
        }
        // The lower window edge clears m/2 exactly from m = 61 onward, so
        // m < 2n is certified there and not below.
        assert!(!index_window(60, &c).unwrap().m_lt_2n_certified);
        assert!(index_window(61, &c).unwrap().m_lt_2n_certified);
        assert!(index_window(189, &c).unwrap().m_lt_2n_certified);
        let win = index_window(100, &c).unwrap();
        assert!((win.n_lo.to_f64() - 53.345).abs() < 0.01, "{}", win.n_lo.to_f64());
        assert!((win.n_hi.to_f64() - 60.851).abs() < 0.01, "{}", win.n_hi.to_f64());
        assert!(matches!(index_window(7, &c), Err(LogBoundsError::IndexTooSmall(7))));
    }

    #[test]
    fn linear_forms_satisfy_exact_identity() {
        let c = consts();
        let forms = linear_forms(25, 45, 20, 41, &c).unwrap();
        // Gamma3 = Gamma1 + Gamma2 - Gamma holds exactly.
        let recombined = forms.gamma1.add(&forms.gamma2).sub(&forms.gamma);
        let diff = forms.gamma3.sub(&recombined);
        assert!(diff.contains_zero());
        assert!(diff.width_f64() < 1e-40, "width {}", diff.width_f64());

        // The double-collapse form for the largest represented value is
        // tiny, far below the explicit envelope 27 delta^4 / delta^25.
        let bound = c.delta.powi(4).mul_i64(27).div(&c.delta.powi(25)).unwrap();
        assert!(forms.gamma3.abs().certainly_lt(&bound));
        let g3 = forms.gamma3.to_f64();
        assert!((g3.abs() - 1.6497642e-9).abs() < 1e-13, "{g3}");

        assert!(linear_forms(20, 45, 25, 41, &c).is_err());
        assert!(linear_forms(25, 41, 20, 45, &c).is_err());
        assert!(linear_forms(25, 45, 20, 0, &c).is_err());
    }

    #[test]
    fn chain_matches_published_constants_except_shifted_case() {
        let c = consts();
        let report = bound_chain(&c).unwrap();
        for stage in &report.stages {
            let expect = if stage.id == "chain_case1_shifted" {
                StageStatus::Mismatch
            } else {
                StageStatus::Match
            };
            assert_eq!(
                stage.status, expect,
                "{}: recomputed {} vs published {}",
                stage.id,
                stage.recomputed.to_f64(),
                stage.published
            );
        }
        // The shifted constant differs from print by an order of magnitude
        // but agrees with the unshifted case to three digits, which pins the
        // print down as an exponent slip.
        let shifted = report.stage("chain_case1_shifted").unwrap();
        let case1 = report.stage("chain_case1").unwrap();
        assert!(rel_close(shifted.recomputed.to_f64(), case1.recomputed.to_f64(), 1e-3));

        // Absolute bound: certified at or below the published 2.45e47.
        let published = CertifiedReal::from_decimal_str("2.45e47", c.working_bits).unwrap();
        assert!(report.n_upper.certainly_le(&published));
        assert!((report.n_upper.to_f64() - 2.449e47).abs() < 1e44, "{}", report.n_upper.to_f64());

        // The self-contained variant exceeds the published bound by roughly
        // 1/log delta and still reduces later, so it is reported alongside.
        assert!(published.certainly_lt(&report.n_upper_sound));
        assert!(report.n_upper_sound.to_f64() < 5.2e47, "{}", report.n_upper_sound.to_f64());
        assert!(report.n_upper_sound.to_f64() > 4.9e47, "{}", report.n_upper_sound.to_f64());
    }

    #[test]
    fn fixed_point_insensitive_to_stopping_rule() {
        let c = consts();
        let tight = bound_chain_with_tolerance(&c, 1e-9).unwrap();
        let loose = bound_chain_with_tolerance(&c, 1e-6).unwrap();
        assert!(
            rel_close(tight.n_upper.to_f64(), loose.n_upper.to_f64(), 1e-8),
            "{} vs {}",
            tight.n_upper.to_f64(),
            loose.n_upper.to_f64()
        );
    }

    #[test]
    fn growth_bound_is_certified_upper_bound() {
        // For the solved fixed point x of x = 3 + C (1 + log 2x)^3, any n
        // satisfying the inequality n <= 3 + C (1 + log 2n)^3 must be <= x.
        // Verify the certificate property map(x_hat) <= x_hat directly on a
        // small synthetic instance.
        let w = 160;
        let coeff = CertifiedReal::from_i64(5, w);
        let one = CertifiedReal::one(w);
        let map = |x: &CertifiedReal| -> Result<CertifiedReal, LogBoundsError> {
            Ok(coeff.mul(&one.add(&x.mul_i64(2).ln()?).powi(3)).add_i64(3))
        };
        let solved = solve_growth_bound(map, 1e-9, w).unwrap();
        assert!(map(&solved).unwrap().certainly_le(&solved));
        // Exhaustive check below the bound on integers: the inequality
        // indeed fails for all integers above it.
        let above = solved.to_f64().ceil() as i64 + 1;
        for n in [above, 2 * above, 10 * above] {
            let x = CertifiedReal::from_i64(n, w);
            assert!(map(&x).unwrap().certainly_lt(&x), "n = {n}");
        }
    }
}
