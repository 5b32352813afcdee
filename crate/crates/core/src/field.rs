//! Certified enclosures for the algebraic constants attached to the two
//! recurrences, Binet-type closed forms, and absolute logarithmic heights.
//!
//! The Padovan growth constant `alpha` is the real root of `x^3 - x - 1`,
//! with Binet coefficient `a` the real root of `23x^3 - 23x^2 + 6x - 1`; the
//! complex conjugate pair has common modulus `|beta| = alpha^{-1/2}` and the
//! paired coefficient has modulus `|b| = sqrt(1/(23a))`. The Lucas side uses
//! the golden ratio `delta` (root of `x^2 - x - 1`) and `|eta| = 1/delta`.
//! Every constant is produced by exact-sign bisection plus interval Newton
//! refinement, then re-certified by a sign change of its defining polynomial
//! across the final enclosure.

use crate::real::{CertifiedReal, RealError};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("requested precision {0} is outside the supported range [8, 1048576]")]
    PrecisionOutOfRange(u32),
    #[error(transparent)]
    Real(#[from] RealError),
    #[error("no sign change over the initial bracket for {0}")]
    NoBracket(&'static str),
    #[error("failed to certify the root enclosure for {0}")]
    RootCertification(&'static str),
    #[error("constant enclosures wider than the contract allows at {0} bits")]
    PrecisionTooLow(u32),
    #[error("invalid height input: {0}")]
    InvalidHeightInput(String),
}

/// Sign of `f(num / 2^p)` for a polynomial with integer coefficients
/// (ascending order), evaluated exactly.
fn poly_sign_scaled(coeffs: &[BigInt], num: &BigInt, p: u32) -> i32 {
    let d = coeffs.len() - 1;
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        let shift = p as u64 * (d - i) as u64;
        acc = acc * num + (&coeffs[i] << shift);
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Exact scaled value `f(num / 2^p) * 2^{p d}`.
fn poly_value_scaled(coeffs: &[BigInt], num: &BigInt, p: u32) -> BigInt {
    let d = coeffs.len() - 1;
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        let shift = p as u64 * (d - i) as u64;
        acc = acc * num + (&coeffs[i] << shift);
    }
    acc
}

/// Interval Horner evaluation.
pub fn eval_poly_interval(coeffs: &[BigInt], x: &CertifiedReal) -> CertifiedReal {
    let p = x.precision_bits();
    let d = coeffs.len() - 1;
    let mut acc = CertifiedReal::from_bigint(&coeffs[d], p);
    for i in (0..d).rev() {
        acc = acc.mul(x).add(&CertifiedReal::from_bigint(&coeffs[i], p));
    }
    acc
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// True when the polynomial has opposite exact signs at the two endpoints of
/// the enclosure, which certifies that a real root lies inside.
pub fn certify_sign_change(coeffs: &[BigInt], x: &CertifiedReal) -> bool {
    let p = x.precision_bits();
    let s1 = poly_sign_scaled(coeffs, x.lo_scaled(), p);
    let s2 = poly_sign_scaled(coeffs, x.hi_scaled(), p);
    s1 != 0 && s2 != 0 && s1 != s2
}

/// Isolates the unique simple root of `coeffs` inside `(bracket_lo,
/// bracket_hi)` down to an enclosure of width at most `2^{1-prec}`.
///
/// Exact-sign bisection narrows the bracket far enough for the derivative to
/// have constant sign, then interval Newton contracts quadratically; a
/// bisection step is interleaved whenever Newton fails to make progress, so
/// termination never depends on the Newton geometry.
pub fn isolate_root(
    coeffs: &[BigInt],
    bracket_lo: i64,
    bracket_hi: i64,
    prec: u32,
    label: &'static str,
) -> Result<CertifiedReal, FieldError> {
    let lo = BigInt::from(bracket_lo) << prec;
    let hi = BigInt::from(bracket_hi) << prec;
    contract_bracket(coeffs, lo, hi, prec, label)
}

/// Sharpens an already certified enclosure to a higher precision without
/// repeating the global bisection. Endpoints are rescaled exactly (or
/// rounded outward), which preserves the sign change, and the same
/// Newton-plus-bisection contraction finishes the job.
pub fn refine_root(
    coeffs: &[BigInt],
    enclosure: &CertifiedReal,
    target_prec: u32,
    label: &'static str,
) -> Result<CertifiedReal, FieldError> {
    let up = enclosure.with_precision(target_prec);
    contract_bracket(
        coeffs,
        up.lo_scaled().clone(),
        up.hi_scaled().clone(),
        target_prec,
        label,
    )
}

fn contract_bracket(
    coeffs: &[BigInt],
    mut lo: BigInt,
    mut hi: BigInt,
    prec: u32,
    label: &'static str,
) -> Result<CertifiedReal, FieldError> {
    assert!(coeffs.len() >= 2, "constant polynomial has no roots");
    let s_lo = poly_sign_scaled(coeffs, &lo, prec);
    let s_hi = poly_sign_scaled(coeffs, &hi, prec);
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(FieldError::NoBracket(label));
    }
    let bisect = |lo: &mut BigInt, hi: &mut BigInt| {
        let mid = (&*lo + &*hi) >> 1;
        let s = poly_sign_scaled(coeffs, &mid, prec);
        if s == 0 {
            // A dyadic root: collapse to a two-ulp bracket around it.
            *lo = &mid - 1;
            *hi = mid + 1;
        } else if s == s_lo {
            *lo = mid;
        } else {
            *hi = mid;
        }
    };
    for _ in 0..80 {
        if &hi - &lo <= BigInt::from(2) {
            break;
        }
        bisect(&mut lo, &mut hi);
    }
    let deriv = derivative(coeffs);
    let d = coeffs.len() as u64 - 1;
    let mut iterations = 0usize;
    while &hi - &lo > BigInt::from(2) {
        iterations += 1;
        if iterations > 100_000 {
            return Err(FieldError::RootCertification(label));
        }
        let x = CertifiedReal::from_scaled_endpoints(lo.clone(), hi.clone(), prec);
        let df = eval_poly_interval(&deriv, &x);
        if df.contains_zero() {
            bisect(&mut lo, &mut hi);
            continue;
        }
        let m = (&lo + &hi) >> 1;
        let fm_scaled = poly_value_scaled(coeffs, &m, prec);
        let fm = CertifiedReal::from_scaled_endpoints(fm_scaled.clone(), fm_scaled, prec * d as u32)
            .with_precision(prec + 64);
        let m_point = CertifiedReal::from_scaled_endpoints(m.clone(), m, prec);
        let n_interval = m_point.sub(&fm.div(&df)?).with_precision(prec);
        let new_lo = lo.clone().max(n_interval.lo_scaled().clone());
        let new_hi = hi.clone().min(n_interval.hi_scaled().clone());
        let old_width = &hi - &lo;
        if new_lo > new_hi || (&new_hi - &new_lo) * 4u32 > old_width * 3u32 {
            bisect(&mut lo, &mut hi);
        } else {
            lo = new_lo;
            hi = new_hi;
        }
    }
    let result = CertifiedReal::from_scaled_endpoints(lo, hi, prec);
    if certify_sign_change(coeffs, &result) {
        Ok(result)
    } else {
        Err(FieldError::RootCertification(label))
    }
}

fn coeffs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn padovan_charpoly() -> Vec<BigInt> {
    coeffs(&[-1, -1, 0, 1])
}

pub fn lucas_charpoly() -> Vec<BigInt> {
    coeffs(&[-1, -1, 1])
}

pub fn binet_coefficient_poly() -> Vec<BigInt> {
    coeffs(&[-1, 6, -23, 23])
}

/// Minimal polynomial of `|beta| = alpha^{-1/2}`: `y^6 + y^4 - 1`.
pub fn beta_abs_poly() -> Vec<BigInt> {
    coeffs(&[-1, 0, 0, 0, 1, 0, 1])
}

/// Minimal polynomial of `|b| = sqrt(1/(23a))`:
/// `12167 z^6 - 3174 z^4 + 529 z^2 - 23`.
pub fn b_abs_poly() -> Vec<BigInt> {
    coeffs(&[-23, 0, 529, 0, -3174, 0, 12167])
}

/// Minimal polynomial of `|eta| = 1/delta`: `x^2 + x - 1`.
pub fn eta_abs_poly() -> Vec<BigInt> {
    coeffs(&[-1, 1, 1])
}

/// Certified enclosures of the six constants plus the logarithms that the
/// downstream bound computations consume.
#[derive(Debug, Clone)]
pub struct FieldConstants {
    pub precision_bits: u32,
    pub working_bits: u32,
    pub alpha: CertifiedReal,
    pub beta_abs: CertifiedReal,
    pub a: CertifiedReal,
    pub b_abs: CertifiedReal,
    pub delta: CertifiedReal,
    pub eta_abs: CertifiedReal,
    pub ln_alpha: CertifiedReal,
    pub ln_delta: CertifiedReal,
    pub ln_a: CertifiedReal,
}

impl FieldConstants {
    /// `ln delta / ln alpha`, the slope comparing the two growth rates.
    pub fn tau(&self) -> CertifiedReal {
        self.ln_delta
            .div(&self.ln_alpha)
            .expect("ln alpha is certainly positive")
    }

    /// `ln alpha / ln delta`.
    pub fn tau_inv(&self) -> CertifiedReal {
        self.ln_alpha
            .div(&self.ln_delta)
            .expect("ln delta is certainly positive")
    }
}

pub fn build_constants(precision_bits: u32) -> Result<FieldConstants, FieldError> {
    if !(8..=1 << 20).contains(&precision_bits) {
        return Err(FieldError::PrecisionOutOfRange(precision_bits));
    }
    let w = precision_bits + 64;
    let alpha = isolate_root(&padovan_charpoly(), 1, 2, w, "alpha")?;
    let delta = isolate_root(&lucas_charpoly(), 1, 2, w, "delta")?;
    let a = isolate_root(&binet_coefficient_poly(), 0, 1, w, "a")?;

    let beta_abs = alpha.recip()?.sqrt()?;
    if !certify_sign_change(&beta_abs_poly(), &beta_abs) {
        return Err(FieldError::RootCertification("beta_abs"));
    }
    let b_abs = a.mul_i64(23).recip()?.sqrt()?;
    if !certify_sign_change(&b_abs_poly(), &b_abs) {
        return Err(FieldError::RootCertification("b_abs"));
    }
    let eta_abs = delta.recip()?;
    if !certify_sign_change(&eta_abs_poly(), &eta_abs) {
        return Err(FieldError::RootCertification("eta_abs"));
    }

    let contract_radius = -((precision_bits / 2) as i64);
    for (c, name) in [
        (&alpha, "alpha"),
        (&beta_abs, "beta_abs"),
        (&a, "a"),
        (&b_abs, "b_abs"),
        (&delta, "delta"),
        (&eta_abs, "eta_abs"),
    ] {
        if !c.radius_le_pow2(contract_radius) {
            let _ = name;
            return Err(FieldError::PrecisionTooLow(precision_bits));
        }
    }

    let ln_alpha = alpha.ln()?;
    let ln_delta = delta.ln()?;
    let ln_a = a.ln()?;
    Ok(FieldConstants {
        precision_bits,
        working_bits: w,
        alpha,
        beta_abs,
        a,
        b_abs,
        delta,
        eta_abs,
        ln_alpha,
        ln_delta,
        ln_a,
    })
}

/// Enclosure of the Padovan number `P(k)` through the closed form
/// `P(k) = a alpha^k + e(k)`.
///
/// The conjugate-pair correction `e(k)` satisfies the same recurrence as the
/// sequence itself, `e(k+3) = e(k+1) + e(k)`, with starting values
/// `1 - a alpha^j` for `j = 0, 1, 2`, so it can be carried entirely in real
/// interval arithmetic. Interval widths grow like `alpha^k`, which the
/// internal guard bits absorb comfortably for k up to several thousand.
pub fn binet_padovan(k: u64, c: &FieldConstants) -> CertifiedReal {
    assert!(k <= 1 << 20, "index too large for certified powering");
    // Powering multiplies the absolute width by roughly alpha^k
    // (2^{0.406 k}), so sharpen the inputs by that many bits first to keep
    // the final width at the working scale.
    let boost = (k * 53 / 128) as u32 + 8;
    let w = c.working_bits + boost;
    let alpha = refine_root(&padovan_charpoly(), &c.alpha, w, "alpha").expect("refine alpha");
    let a = refine_root(&binet_coefficient_poly(), &c.a, w, "a").expect("refine a");
    let one = CertifiedReal::one(w);
    let e0 = one.sub(&a);
    let e1 = one.sub(&a.mul(&alpha));
    let e2 = one.sub(&a.mul(&alpha.powi(2)));
    let mut window = [e0, e1, e2];
    let e_k = if k < 3 {
        window[k as usize].clone()
    } else {
        for _ in 3..=k {
            let next = window[1].add(&window[0]);
            window.rotate_left(1);
            window[2] = next;
        }
        window[2].clone()
    };
    a.mul(&alpha.powi(k as u32)).add(&e_k).with_precision(c.working_bits)
}

/// Enclosure of the Lucas number `L(k) = delta^k + (-1)^k delta^{-k}`.
pub fn binet_lucas(k: u64, c: &FieldConstants) -> CertifiedReal {
    assert!(k <= 1 << 20, "index too large for certified powering");
    // delta^k amplifies width by 2^{0.694 k}.
    let boost = (k * 89 / 128) as u32 + 8;
    let w = c.working_bits + boost;
    let delta = refine_root(&lucas_charpoly(), &c.delta, w, "delta").expect("refine delta");
    let tail = delta.recip().expect("delta > 0").powi(k as u32);
    let main = delta.powi(k as u32);
    let full = if k % 2 == 0 {
        main.add(&tail)
    } else {
        main.sub(&tail)
    };
    full.with_precision(c.working_bits)
}

/// Data determining the absolute logarithmic height of an algebraic number:
/// the leading coefficient and all conjugate moduli of its minimal
/// polynomial.
#[derive(Debug, Clone)]
pub struct HeightInput {
    pub leading_coeff: BigInt,
    pub conjugate_moduli: Vec<CertifiedReal>,
    pub degree: u32,
}

/// `h = (1/d)(ln|a_d| + sum ln max(1, |x_i|))`.
pub fn abs_log_height(input: &HeightInput) -> Result<CertifiedReal, FieldError> {
    if input.degree == 0 {
        return Err(FieldError::InvalidHeightInput("degree must be positive".into()));
    }
    if input.conjugate_moduli.len() != input.degree as usize {
        return Err(FieldError::InvalidHeightInput(format!(
            "degree {} but {} conjugate moduli",
            input.degree,
            input.conjugate_moduli.len()
        )));
    }
    if input.leading_coeff.is_zero() {
        return Err(FieldError::InvalidHeightInput("zero leading coefficient".into()));
    }
    let prec = input
        .conjugate_moduli
        .iter()
        .map(|m| m.precision_bits())
        .max()
        .unwrap_or(64);
    let one = CertifiedReal::one(prec);
    let mut sum = CertifiedReal::from_bigint(&input.leading_coeff.abs(), prec).ln()?;
    for m in &input.conjugate_moduli {
        if m.certainly_negative() {
            return Err(FieldError::InvalidHeightInput(
                "conjugate modulus is certainly negative".into(),
            ));
        }
        let clamped = m.max_interval(&one);
        sum = sum.add(&clamped.ln()?);
    }
    Ok(sum.div_u64(input.degree as u64))
}

pub fn height_input_alpha(c: &FieldConstants) -> HeightInput {
    HeightInput {
        leading_coeff: BigInt::from(1),
        conjugate_moduli: vec![c.alpha.clone(), c.beta_abs.clone(), c.beta_abs.clone()],
        degree: 3,
    }
}

pub fn height_input_delta(c: &FieldConstants) -> HeightInput {
    HeightInput {
        leading_coeff: BigInt::from(1),
        conjugate_moduli: vec![c.delta.clone(), c.eta_abs.clone()],
        degree: 2,
    }
}

pub fn height_input_binet_coefficient(c: &FieldConstants) -> HeightInput {
    HeightInput {
        leading_coeff: BigInt::from(23),
        conjugate_moduli: vec![c.a.clone(), c.b_abs.clone(), c.b_abs.clone()],
        degree: 3,
    }
}

/// Upper bound for the height of `(delta^k - 1)/a`:
/// `(k/2) ln delta + ln 2 + (1/3) ln 23`, the additive constant being below
/// the published rounding 1.74.
pub fn height_bound_gamma1(k: u32, c: &FieldConstants) -> CertifiedReal {
    let w = c.working_bits;
    let ln2 = crate::real::ln2_const(w);
    let ln23 = CertifiedReal::from_i64(23, w).ln().expect("23 > 0");
    c.ln_delta
        .mul_i64(k as i64)
        .div_u64(2)
        .add(&ln2)
        .add(&ln23.div_u64(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::RecurrenceDef;
    use num_traits::One;

    fn consts() -> FieldConstants {
        build_constants(256).expect("default build")
    }

    fn assert_close_decimal(x: &CertifiedReal, s: &str, tol: &str) {
        let printed = CertifiedReal::from_decimal_str(s, x.precision_bits()).unwrap();
        let t = CertifiedReal::from_decimal_str(tol, x.precision_bits()).unwrap();
        assert!(
            x.sub(&printed).abs().certainly_lt(&t),
            "{s} not within {tol} of enclosure {x}"
        );
    }

    #[test]
    fn constants_match_reference_decimals() {
        let c = consts();
        assert_close_decimal(&c.alpha, "1.324717957244746", "1e-14");
        assert_close_decimal(&c.delta, "1.618033988749894848", "1e-17");
        assert_close_decimal(&c.a, "0.72212441830311284114", "1e-19");
        assert_close_decimal(&c.b_abs, "0.24537486102673", "1e-13");
        assert_close_decimal(&c.eta_abs, "0.618033988749894848", "1e-17");
        assert_close_decimal(&c.ln_alpha, "0.2811995743229618", "1e-15");
        assert_close_decimal(&c.ln_delta, "0.4812118250596034", "1e-15");
        assert_close_decimal(&c.tau(), "1.71128219599267454643", "1e-19");
    }

    #[test]
    fn defining_polynomials_vanish_on_enclosures() {
        let c = consts();
        for (poly, x) in [
            (padovan_charpoly(), &c.alpha),
            (lucas_charpoly(), &c.delta),
            (binet_coefficient_poly(), &c.a),
            (beta_abs_poly(), &c.beta_abs),
            (b_abs_poly(), &c.b_abs),
            (eta_abs_poly(), &c.eta_abs),
        ] {
            assert!(eval_poly_interval(&poly, x).contains_zero());
            assert!(certify_sign_change(&poly, x));
        }
    }

    #[test]
    fn algebraic_identities_hold() {
        let c = consts();
        let one = BigInt::one();
        // |beta|^2 * alpha = 1, |b|^2 * 23a = 1, |eta| * delta = 1.
        assert!(c.beta_abs.powi(2).mul(&c.alpha).contains_bigint(&one));
        assert!(c.b_abs.powi(2).mul(&c.a).mul_i64(23).contains_bigint(&one));
        assert!(c.eta_abs.mul(&c.delta).contains_bigint(&one));
        // alpha^3 = alpha + 1 and delta^2 = delta + 1.
        assert!(c.alpha.powi(3).sub(&c.alpha).contains_bigint(&one));
        assert!(c.delta.powi(2).sub(&c.delta).contains_bigint(&one));
    }

    #[test]
    fn delta_cross_checked_against_integer_newton() {
        // Independent construction: delta = (1 + sqrt 5)/2 via a plain
        // integer square root at a fixed scale.
        let c = consts();
        let w = c.working_bits;
        let five = BigInt::from(5) << (2 * w as u64);
        let s = five.sqrt();
        let num_lo = &s + (BigInt::one() << w);
        let num_hi = &num_lo + 2u32;
        let alt = CertifiedReal::from_scaled_endpoints(num_lo >> 1, num_hi >> 1, w);
        let diff = c.delta.sub(&alt).abs();
        assert!(diff.radius_le_pow2(-(w as i64) + 8));
        assert!(!diff.certainly_positive() || diff.hi_f64() < 1e-60);
    }

    #[test]
    fn precision_doubling_nests() {
        let lo = build_constants(128).unwrap();
        let hi = build_constants(256).unwrap();
        for (a, b) in [
            (&lo.alpha, &hi.alpha),
            (&lo.delta, &hi.delta),
            (&lo.a, &hi.a),
            (&lo.ln_alpha, &hi.ln_alpha),
        ] {
            // Independent runs both contain the same value, so the
            // enclosures must overlap, and doubling must shrink the width.
            assert!(
                !(a.certainly_lt(b) || b.certainly_lt(a)),
                "enclosures at different precisions are disjoint"
            );
            assert!(b.width_f64() < a.width_f64() / 1e10);
        }
    }

    #[test]
    fn rejects_out_of_range_precision() {
        assert!(matches!(
            build_constants(4),
            Err(FieldError::PrecisionOutOfRange(4))
        ));
    }

    #[test]
    fn binet_encloses_exact_terms_with_tiny_width() {
        let c = consts();
        let pad = RecurrenceDef::padovan().terms_through(500);
        let luc = RecurrenceDef::lucas().terms_through(500);
        for k in 0..=500u64 {
            let pb = binet_padovan(k, &c);
            assert!(
                pb.contains_bigint(&pad[k as usize]),
                "Padovan enclosure misses exact term at k = {k}"
            );
            assert!(pb.width_f64() < 1e-20, "Padovan width too large at k = {k}");
            let lb = binet_lucas(k, &c);
            assert!(
                lb.contains_bigint(&luc[k as usize]),
                "Lucas enclosure misses exact term at k = {k}"
            );
            assert!(lb.width_f64() < 1e-20, "Lucas width too large at k = {k}");
        }
    }

    #[test]
    fn growth_envelopes() {
        let c = consts();
        let pad = RecurrenceDef::padovan().terms_through(500);
        let luc = RecurrenceDef::lucas().terms_through(500);
        let w = c.working_bits;
        for k in 4..=500u32 {
            let term = CertifiedReal::from_bigint(&pad[k as usize], w);
            assert!(
                c.alpha.powi(k - 2).certainly_le(&term),
                "lower envelope fails at k = {k}"
            );
            assert!(
                term.certainly_le(&c.alpha.powi(k - 1)),
                "upper envelope fails at k = {k}"
            );
        }
        for k in 1..=500u32 {
            let term = CertifiedReal::from_bigint(&luc[k as usize], w);
            assert!(
                c.delta.powi(k - 1).certainly_le(&term),
                "lower Lucas envelope fails at k = {k}"
            );
            assert!(
                term.certainly_le(&c.delta.powi(k + 1)),
                "upper Lucas envelope fails at k = {k}"
            );
        }
    }

    #[test]
    fn conjugate_tail_decays_like_beta_power() {
        let c = consts();
        let pad = RecurrenceDef::padovan().terms_through(500);
        for k in (0..=500u64).step_by(25) {
            let tail = CertifiedReal::from_bigint(&pad[k as usize], c.working_bits)
                .sub(&c.a.mul(&c.alpha.powi(k as u32)));
            // |e(k)| <= 2 |b| |beta|^k, padded by a hair for interval width.
            let bound = c.b_abs.mul(&c.beta_abs.powi(k as u32)).mul_i64(2);
            let padded = bound.add(&bound.div_u64(1 << 20)).add(&CertifiedReal::from_ratio(
                &BigInt::one(),
                &(BigInt::one() << 200),
                c.working_bits,
            )
            .unwrap());
            assert!(
                tail.abs().certainly_le(&padded),
                "tail bound fails at k = {k}"
            );
        }
    }

    #[test]
    fn heights_of_core_constants() {
        let c = consts();
        let tol = CertifiedReal::from_decimal_str("1e-30", c.working_bits).unwrap();
        let h_alpha = abs_log_height(&height_input_alpha(&c)).unwrap();
        assert!(h_alpha.sub(&c.ln_alpha.div_u64(3)).abs().certainly_lt(&tol));
        let h_delta = abs_log_height(&height_input_delta(&c)).unwrap();
        assert!(h_delta.sub(&c.ln_delta.div_u64(2)).abs().certainly_lt(&tol));
        let h_a = abs_log_height(&height_input_binet_coefficient(&c)).unwrap();
        let ln23_over_3 = CertifiedReal::from_i64(23, c.working_bits)
            .ln()
            .unwrap()
            .div_u64(3);
        assert!(h_a.sub(&ln23_over_3).abs().certainly_lt(&tol));
        assert_close_decimal(&h_a, "1.045164738643050", "1e-14");
    }

    #[test]
    fn height_is_additive_on_golden_powers() {
        // delta^2 has minimal polynomial x^2 - 3x + 1 and delta^3 has
        // x^2 - 4x - 1; their heights are 2 h(delta) and 3 h(delta).
        let c = consts();
        let w = c.working_bits;
        let tol = CertifiedReal::from_decimal_str("1e-30", w).unwrap();
        let d2 = HeightInput {
            leading_coeff: BigInt::one(),
            conjugate_moduli: vec![c.delta.powi(2), c.eta_abs.powi(2)],
            degree: 2,
        };
        let d3 = HeightInput {
            leading_coeff: BigInt::one(),
            conjugate_moduli: vec![c.delta.powi(3), c.eta_abs.powi(3)],
            degree: 2,
        };
        let h = abs_log_height(&height_input_delta(&c)).unwrap();
        assert!(abs_log_height(&d2)
            .unwrap()
            .sub(&h.mul_i64(2))
            .abs()
            .certainly_lt(&tol));
        assert!(abs_log_height(&d3)
            .unwrap()
            .sub(&h.mul_i64(3))
            .abs()
            .certainly_lt(&tol));
        // Those quadratics really do vanish at delta^2 and delta^3.
        assert!(eval_poly_interval(&coeffs(&[1, -3, 1]), &c.delta.powi(2)).contains_zero());
        assert!(eval_poly_interval(&coeffs(&[-1, -4, 1]), &c.delta.powi(3)).contains_zero());
    }

    #[test]
    fn shifted_power_minimal_polynomial() {
        // The minimal polynomial of delta^k - 1 divides
        // x^2 + (2 - L(k)) x + ((-1)^k + 1 - L(k)).
        let c = consts();
        let luc = RecurrenceDef::lucas().terms_through(30);
        for k in 1..=30u32 {
            let lk = &luc[k as usize];
            let poly = vec![
                BigInt::from(if k % 2 == 0 { 2 } else { 0 }) - lk,
                BigInt::from(2) - lk,
                BigInt::one(),
            ];
            let x = c.delta.powi(k).add_i64(-1);
            assert!(
                eval_poly_interval(&poly, &x).contains_zero(),
                "quadratic fails at k = {k}"
            );
        }
    }

    #[test]
    fn gamma1_height_constant_below_printed_value() {
        let c = consts();
        let w = c.working_bits;
        // ln 2 + (1/3) ln 23 = 1.7383... < 1.74.
        let ln2 = crate::real::ln2_const(w);
        let ln23 = CertifiedReal::from_i64(23, w).ln().unwrap();
        let constant = ln2.add(&ln23.div_u64(3));
        let printed = CertifiedReal::from_decimal_str("1.74", w).unwrap();
        assert!(constant.certainly_lt(&printed));
        // And the packaged bound agrees with its definition at k = 10.
        let direct = c
            .ln_delta
            .mul_i64(10)
            .div_u64(2)
            .add(&constant);
        let tol = CertifiedReal::from_decimal_str("1e-40", w).unwrap();
        assert!(height_bound_gamma1(10, &c).sub(&direct).abs().certainly_lt(&tol));
    }

    #[test]
    fn height_input_validation() {
        let c = consts();
        let bad = HeightInput {
            leading_coeff: BigInt::zero(),
            conjugate_moduli: vec![c.alpha.clone()],
            degree: 1,
        };
        assert!(matches!(
            abs_log_height(&bad),
            Err(FieldError::InvalidHeightInput(_))
        ));
        let mismatched = HeightInput {
            leading_coeff: BigInt::one(),
            conjugate_moduli: vec![c.alpha.clone()],
            degree: 2,
        };
        assert!(abs_log_height(&mismatched).is_err());
    }

    #[test]
    fn isolate_root_finds_sqrt2() {
        let enc = isolate_root(&coeffs(&[-2, 0, 1]), 1, 2, 256, "sqrt2").unwrap();
        let direct = CertifiedReal::from_i64(2, 256).sqrt().unwrap();
        assert!(enc.sub(&direct).abs().radius_le_pow2(-250));
        assert!(enc.mul(&enc).contains_bigint(&BigInt::from(2)));
    }
}
