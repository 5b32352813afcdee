//! Certified real arithmetic on dyadic intervals.
//!
//! A [`CertifiedReal`] stores two scaled integers `lo`, `hi` and a scale
//! `prec`, and represents the statement "the exact value lies in
//! `[lo / 2^prec, hi / 2^prec]`". Every operation rounds outward, so the
//! containment statement is preserved through arbitrary compositions. All
//! comparisons offered here are *certain* comparisons: they return true only
//! when the relation holds for every pair of points in the operand intervals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("square root of a certainly negative interval")]
    NegativeSqrt,
    #[error("logarithm of an interval that is not certainly positive")]
    NonPositiveLn,
    #[error("zero denominator in exact rational")]
    ZeroDenominator,
    #[error("invalid numeric literal: {0}")]
    BadLiteral(String),
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// Floor division by 2^k. `BigInt`'s shift-right already rounds toward
/// negative infinity, which is exactly floor semantics.
fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    x >> k
}

fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> k)
}

fn div_ceil_big(a: &BigInt, b: &BigInt) -> BigInt {
    -(&(-a)).div_floor(b)
}

/// An interval enclosure of a real number in fixed-point scale `2^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl CertifiedReal {
    fn raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval endpoints");
        CertifiedReal { lo, hi, prec }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        let v = n << prec;
        CertifiedReal::raw(v.clone(), v, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    pub fn zero(prec: u32) -> Self {
        CertifiedReal::raw(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    /// Tightest dyadic enclosure of the exact rational `num/den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Result<Self, RealError> {
        if den.is_zero() {
            return Err(RealError::ZeroDenominator);
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let scaled = &num << prec;
        let lo = scaled.div_floor(&den);
        let hi = div_ceil_big(&scaled, &den);
        Ok(CertifiedReal::raw(lo, hi, prec))
    }

    /// Machine-integer convenience form of [`Self::from_ratio`].
    pub fn from_ratio_i64(num: i64, den: i64, prec: u32) -> Result<Self, RealError> {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    /// Parses a plain decimal literal (optional sign, fraction, exponent)
    /// into an exact rational and encloses it.
    pub fn from_decimal_str(s: &str, prec: u32) -> Result<Self, RealError> {
        let (num, den) = parse_decimal(s)?;
        Self::from_ratio(&num, &den, prec)
    }

    /// Builds an interval directly from scaled endpoints. Intended for
    /// module-internal constructions that already hold certified endpoints.
    pub fn from_scaled_endpoints(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        CertifiedReal::raw(lo, hi, prec)
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    /// Scaled lower endpoint; the represented bound is `lo / 2^prec`.
    pub fn lo_scaled(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_scaled(&self) -> &BigInt {
        &self.hi
    }

    /// Rounds the enclosure outward (or refines the scale exactly) to `p`.
    pub fn with_precision(&self, p: u32) -> Self {
        if p >= self.prec {
            let k = p - self.prec;
            CertifiedReal::raw(&self.lo << k, &self.hi << k, p)
        } else {
            let k = self.prec - p;
            CertifiedReal::raw(shr_floor(&self.lo, k), shr_ceil(&self.hi, k), p)
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let p = self.prec.max(other.prec);
        (self.with_precision(p), other.with_precision(p))
    }

    pub fn neg(&self) -> Self {
        CertifiedReal::raw(-&self.hi, -&self.lo, self.prec)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = (-&self.lo).max(self.hi.clone());
            CertifiedReal::raw(BigInt::zero(), m, self.prec)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        CertifiedReal::raw(a.lo + b.lo, a.hi + b.hi, a.prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_i64(&self, n: i64) -> Self {
        let v = BigInt::from(n) << self.prec;
        CertifiedReal::raw(&self.lo + &v, &self.hi + v, self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let p = a.prec;
        let c1 = &a.lo * &b.lo;
        let c2 = &a.lo * &b.hi;
        let c3 = &a.hi * &b.lo;
        let c4 = &a.hi * &b.hi;
        let mut lo = c1.clone();
        let mut hi = c1;
        for c in [c2, c3, c4] {
            if c < lo {
                lo = c.clone();
            }
            if c > hi {
                hi = c;
            }
        }
        CertifiedReal::raw(shr_floor(&lo, p), shr_ceil(&hi, p), p)
    }

    /// Exact multiplication by an integer (no rounding).
    pub fn mul_int(&self, n: &BigInt) -> Self {
        if n.is_negative() {
            CertifiedReal::raw(&self.hi * n, &self.lo * n, self.prec)
        } else {
            CertifiedReal::raw(&self.lo * n, &self.hi * n, self.prec)
        }
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        self.mul_int(&BigInt::from(n))
    }

    /// Division by a small positive integer, rounding outward.
    pub fn div_u64(&self, d: u64) -> Self {
        assert!(d > 0, "division by zero");
        let d = BigInt::from(d);
        CertifiedReal::raw(self.lo.div_floor(&d), div_ceil_big(&self.hi, &d), self.prec)
    }

    pub fn recip(&self) -> Result<Self, RealError> {
        if self.lo.is_positive() {
            let num = pow2(2 * self.prec);
            let lo = num.div_floor(&self.hi);
            let hi = div_ceil_big(&num, &self.lo);
            Ok(CertifiedReal::raw(lo, hi, self.prec))
        } else if self.hi.is_negative() {
            Ok(self.neg().recip()?.neg())
        } else {
            Err(RealError::DivisionByZero)
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, RealError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Enclosure of `sqrt(max(0, x))`. Errors only when the interval is
    /// certainly negative; callers are expected to know their operand is
    /// nonnegative, and a lower endpoint that dips below zero by rounding is
    /// clamped.
    pub fn sqrt(&self) -> Result<Self, RealError> {
        if self.hi.is_negative() {
            return Err(RealError::NegativeSqrt);
        }
        let p = self.prec;
        let lo_clamped = if self.lo.is_negative() {
            BigInt::zero()
        } else {
            self.lo.clone()
        };
        let lo_s = &lo_clamped << p;
        let hi_s = &self.hi << p;
        let lo = lo_s.sqrt();
        let hi_root = hi_s.sqrt();
        let hi = if &hi_root * &hi_root == hi_s {
            hi_root
        } else {
            hi_root + 1
        };
        Ok(CertifiedReal::raw(lo, hi, p))
    }

    pub fn powi(&self, mut k: u32) -> Self {
        let mut result = CertifiedReal::one(self.prec);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Interval hull of the pointwise maximum.
    pub fn max_interval(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        CertifiedReal::raw(a.lo.max(b.lo), a.hi.max(b.hi), a.prec)
    }

    pub fn min_interval(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        CertifiedReal::raw(a.lo.min(b.lo), a.hi.min(b.hi), a.prec)
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn certainly_lt(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.hi < b.lo
    }

    pub fn certainly_le(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.hi <= b.lo
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        other.certainly_lt(self)
    }

    pub fn certainly_ge(&self, other: &Self) -> bool {
        other.certainly_le(self)
    }

    pub fn contains_bigint(&self, n: &BigInt) -> bool {
        let v = n << self.prec;
        self.lo <= v && v <= self.hi
    }

    /// True when `other` is a sub-interval of `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.lo <= b.lo && b.hi <= a.hi
    }

    pub fn width_scaled(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Exact test `radius <= 2^e` (radius is half the interval width).
    pub fn radius_le_pow2(&self, e: i64) -> bool {
        let shift = e + self.prec as i64 + 1;
        if shift < 0 {
            self.width_scaled().is_zero()
        } else {
            self.width_scaled() <= (BigInt::one() << (shift as u64))
        }
    }

    /// `Some(floor(x))` when the floor is the same for every point of the
    /// interval, `None` when the enclosure straddles an integer boundary.
    pub fn floor_certified(&self) -> Option<BigInt> {
        let f_lo = shr_floor(&self.lo, self.prec);
        let f_hi = shr_floor(&self.hi, self.prec);
        if f_lo == f_hi {
            Some(f_lo)
        } else {
            None
        }
    }

    /// Enclosure of the distance to the nearest integer.
    ///
    /// For wide inputs (width at least one) the result degrades to the
    /// trivial `[0, 1/2]`, which is still a correct enclosure.
    pub fn nearest_int_distance(&self) -> Self {
        let p = self.prec;
        assert!(p >= 1, "scale too small for half-integer arithmetic");
        let one = pow2(p);
        let half = pow2(p - 1);
        let trivial = CertifiedReal::raw(BigInt::zero(), half.clone(), p);
        if self.width_scaled() >= one {
            return trivial;
        }
        let k0 = (&self.lo + &half).div_floor(&one);
        let k1 = (&self.hi + &half).div_floor(&one);
        if k0 == k1 {
            let c = &k0 * &one;
            let da = (&self.lo - &c).abs();
            let db = (&self.hi - &c).abs();
            let lo_d = if self.lo <= c && c <= self.hi {
                BigInt::zero()
            } else {
                da.clone().min(db.clone())
            };
            let hi_d = da.max(db).min(half);
            CertifiedReal::raw(lo_d, hi_d, p)
        } else if k1 == &k0 + 1 {
            // The half-integer between k0 and k1 lies inside the interval,
            // so the supremum of the distance is exactly 1/2.
            let c0 = &k0 * &one;
            let c1 = &k1 * &one;
            let da = (&self.lo - &c0).abs();
            let db = (&self.hi - &c1).abs();
            let lo_d = if self.lo <= c0 || self.hi >= c1 {
                BigInt::zero()
            } else {
                da.min(db)
            };
            CertifiedReal::raw(lo_d, half, p)
        } else {
            trivial
        }
    }

    /// Natural logarithm; requires a certainly positive interval.
    pub fn ln(&self) -> Result<Self, RealError> {
        if !self.certainly_positive() {
            return Err(RealError::NonPositiveLn);
        }
        let lo_enc = ln_point(&self.lo, self.prec, self.prec);
        let hi_enc = ln_point(&self.hi, self.prec, self.prec);
        Ok(CertifiedReal::raw(lo_enc.lo, hi_enc.hi, self.prec))
    }

    /// Cheap certified logarithm bounds derived from bit lengths alone:
    /// `ln x` lies in `[(bits(lo)-1-prec) ln 2, (bits(hi)-prec) ln 2]`.
    /// Useful for screening before spending a full series evaluation.
    pub fn ln_coarse(&self) -> Result<Self, RealError> {
        if !self.certainly_positive() {
            return Err(RealError::NonPositiveLn);
        }
        let bl = self.lo.bits() as i64 - 1 - self.prec as i64;
        let bh = self.hi.bits() as i64 - self.prec as i64;
        let l2 = ln2_const(64);
        let a = l2.mul_int(&BigInt::from(bl));
        let b = l2.mul_int(&BigInt::from(bh));
        let (a, b) = a.aligned(&b);
        Ok(CertifiedReal::raw(a.lo.min(b.lo), a.hi.max(b.hi), a.prec))
    }

    fn scaled_to_f64(x: &BigInt, scale: i64) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        let bits = x.bits() as i64;
        let drop = (bits - 80).max(0) as u32;
        let m = (x >> drop).to_f64().unwrap_or(0.0);
        m * 2f64.powi((drop as i64 - scale) as i32)
    }

    /// Collapses the enclosure to its midpoint. This discards the
    /// containment guarantee and is only appropriate for seeding iterations
    /// whose result is re-certified afterwards.
    pub fn midpoint_point(&self) -> Self {
        let mid = (&self.lo + &self.hi) >> 1u32;
        CertifiedReal::raw(mid.clone(), mid, self.prec)
    }

    /// Midpoint as `f64`, for display and screening only.
    pub fn to_f64(&self) -> f64 {
        Self::scaled_to_f64(&(&self.lo + &self.hi), self.prec as i64 + 1)
    }

    pub fn lo_f64(&self) -> f64 {
        Self::scaled_to_f64(&self.lo, self.prec as i64)
    }

    pub fn hi_f64(&self) -> f64 {
        Self::scaled_to_f64(&self.hi, self.prec as i64)
    }

    pub fn width_f64(&self) -> f64 {
        Self::scaled_to_f64(&self.width_scaled(), self.prec as i64)
    }
}

impl std::fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.12e} (width {:.3e})", self.to_f64(), self.width_f64())
    }
}

fn parse_decimal(s: &str) -> Result<(BigInt, BigInt), RealError> {
    let bad = || RealError::BadLiteral(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let (mant_str, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0i64),
    };
    let (sign, digits_part) = match mant_str.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, mant_str.strip_prefix('+').unwrap_or(mant_str)),
    };
    let (int_part, frac_part) = match digits_part.find('.') {
        Some(i) => (&digits_part[..i], &digits_part[i + 1..]),
        None => (digits_part, ""),
    };
    let all: String = format!("{int_part}{frac_part}");
    if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mant: BigInt = all.parse().map_err(|_| bad())?;
    let mant = mant * sign;
    let pow10 = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if pow10 >= 0 {
        let mut num = mant;
        for _ in 0..pow10 {
            num *= &ten;
        }
        Ok((num, BigInt::one()))
    } else {
        let mut den = BigInt::one();
        for _ in 0..(-pow10) {
            den *= &ten;
        }
        Ok((mant, den))
    }
}

/// Enclosure of `atanh(num/den)` at scale `2^w`, for `|num/den| <= 0.6`.
fn atanh_of_ratio(num: &BigInt, den: &BigInt, w: u32) -> CertifiedReal {
    debug_assert!(num.abs() * 5u32 <= den.abs() * 3u32, "argument too large");
    let t = CertifiedReal::from_ratio(num, den, w).expect("nonzero denominator");
    let t2 = t.mul(&t);
    let mut term = t.clone();
    let mut sum = t;
    let mut k: u64 = 1;
    loop {
        term = term.mul(&t2);
        let contrib = term.div_u64(2 * k + 1);
        sum = sum.add(&contrib);
        let contrib_mag = contrib.lo.abs().max(contrib.hi.abs());
        if contrib_mag <= BigInt::one() {
            // Tail of the series is below |contrib| * t^2/(1-t^2) <= |contrib|
            // for |t| <= 0.6; pad by that plus slack for the final rounding.
            let pad = contrib_mag + 2u32;
            return CertifiedReal::raw(sum.lo - &pad, sum.hi + pad, w);
        }
        k += 1;
        assert!(k < 1 << 40, "atanh series failed to converge");
    }
}

/// Enclosure of `ln 2` at scale `2^prec`, via `2 atanh(1/3)`.
pub fn ln2_const(prec: u32) -> CertifiedReal {
    let w = prec + 16;
    let at = atanh_of_ratio(&BigInt::one(), &BigInt::from(3), w);
    at.add(&at).with_precision(prec)
}

/// Enclosure of Euler's number at scale `2^prec`.
pub fn e_const(prec: u32) -> CertifiedReal {
    let w = prec + 32;
    let mut term_lo = pow2(w);
    let mut term_hi = term_lo.clone();
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        if k >= 2 && term_hi <= BigInt::one() {
            // Remaining tail is below the last term for k >= 1.
            sum_hi += &term_hi + 2u32;
            break;
        }
        k += 1;
        let d = BigInt::from(k);
        term_lo = term_lo.div_floor(&d);
        term_hi = div_ceil_big(&term_hi, &d);
    }
    CertifiedReal::raw(sum_lo, sum_hi, w).with_precision(prec)
}

/// Enclosure of `ln(n / 2^p)` for a single positive scaled integer.
fn ln_point(n: &BigInt, p: u32, out_prec: u32) -> CertifiedReal {
    debug_assert!(n.is_positive());
    let w = out_prec + 48;
    let bits = n.bits();
    // Pick s so that m = n / 2^s lies in [sqrt(2)/2, sqrt(2)), keeping the
    // series argument t = (m-1)/(m+1) within |t| < 0.18.
    let mut s = bits - 1;
    if (n * n).bits() >= 2 * bits {
        s = bits;
    }
    let two_s = BigInt::one() << s;
    let num_t = n - &two_s;
    let den_t = n + &two_s;
    let at = atanh_of_ratio(&num_t, &den_t, w);
    let ln_m = at.add(&at);
    let e_k = s as i64 - p as i64;
    let res = ln_m.add(&ln2_const(w).mul_int(&BigInt::from(e_k)));
    res.with_precision(out_prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(x: &CertifiedReal, expected: f64, tol: f64) {
        let mid = x.to_f64();
        assert!(
            (mid - expected).abs() <= tol,
            "expected {expected}, enclosure midpoint {mid}"
        );
    }

    #[test]
    fn ratio_roundtrip_and_width() {
        let x = CertifiedReal::from_ratio(&BigInt::from(1), &BigInt::from(3), 128).unwrap();
        approx(&x, 1.0 / 3.0, 1e-15);
        assert!(x.width_scaled() <= BigInt::from(2));
    }

    #[test]
    fn arithmetic_contains_exact_rationals() {
        let a = CertifiedReal::from_ratio(&BigInt::from(22), &BigInt::from(7), 96).unwrap();
        let b = CertifiedReal::from_ratio(&BigInt::from(-5), &BigInt::from(9), 96).unwrap();
        // 22/7 * (-5/9) = -110/63
        let prod = a.mul(&b);
        let exact = CertifiedReal::from_ratio(&BigInt::from(-110), &BigInt::from(63), 96).unwrap();
        assert!(prod.encloses(&exact) || exact.encloses(&prod) || prod.lo_scaled() <= exact.lo_scaled());
        assert!(prod.lo_scaled() <= exact.hi_scaled() && exact.lo_scaled() <= prod.hi_scaled());
        let sum = a.add(&b);
        let exact_sum =
            CertifiedReal::from_ratio(&BigInt::from(22 * 9 - 5 * 7), &BigInt::from(63), 96)
                .unwrap();
        assert!(sum.lo_scaled() <= exact_sum.lo_scaled() && exact_sum.hi_scaled() <= sum.hi_scaled());
    }

    #[test]
    fn reciprocal_and_division() {
        let x = CertifiedReal::from_i64(8, 64);
        let r = x.recip().unwrap();
        approx(&r, 0.125, 1e-18);
        let y = CertifiedReal::from_i64(-4, 64);
        approx(&y.recip().unwrap(), -0.25, 1e-18);
        assert_eq!(
            CertifiedReal::zero(64).recip().unwrap_err(),
            RealError::DivisionByZero
        );
    }

    #[test]
    fn sqrt_two_squares_back() {
        let two = CertifiedReal::from_i64(2, 192);
        let r = two.sqrt().unwrap();
        let sq = r.mul(&r);
        assert!(sq.contains_bigint(&BigInt::from(2)));
        approx(&r, std::f64::consts::SQRT_2, 1e-15);
    }

    #[test]
    fn ln_matches_known_values() {
        let x = CertifiedReal::from_i64(2, 160);
        approx(&x.ln().unwrap(), std::f64::consts::LN_2, 1e-15);
        let y = CertifiedReal::from_i64(23, 160);
        approx(&y.ln().unwrap(), 23f64.ln(), 1e-12);
        let half = CertifiedReal::from_ratio(&BigInt::from(1), &BigInt::from(2), 160).unwrap();
        approx(&half.ln().unwrap(), -std::f64::consts::LN_2, 1e-15);
        assert!(CertifiedReal::zero(64).ln().is_err());
    }

    #[test]
    fn ln_coarse_brackets_ln() {
        let x = CertifiedReal::from_decimal_str("0.000354", 128).unwrap();
        let coarse = x.ln_coarse().unwrap();
        let fine = x.ln().unwrap();
        assert!(coarse.lo_f64() <= fine.lo_f64() + 1e-9);
        assert!(coarse.hi_f64() >= fine.hi_f64() - 1e-9);
    }

    #[test]
    fn e_and_ln2_constants() {
        approx(&e_const(192), std::f64::consts::E, 1e-15);
        approx(&ln2_const(192), std::f64::consts::LN_2, 1e-15);
        // ln(e) should enclose 1.
        let one = e_const(192).ln().unwrap();
        assert!(one.contains_bigint(&BigInt::one()));
    }

    #[test]
    fn floor_and_distance() {
        let x = CertifiedReal::from_decimal_str("2.75", 64).unwrap();
        assert_eq!(x.floor_certified(), Some(BigInt::from(2)));
        approx(&x.nearest_int_distance(), 0.25, 1e-15);
        let y = CertifiedReal::from_decimal_str("-1.1", 64).unwrap();
        assert_eq!(y.floor_certified(), Some(BigInt::from(-2)));
        approx(&y.nearest_int_distance(), 0.1, 1e-12);
        // An enclosure straddling an integer has distance reaching zero.
        let z = CertifiedReal::from_scaled_endpoints(
            BigInt::from(-3),
            BigInt::from(5),
            8,
        );
        let d = z.nearest_int_distance();
        assert!(d.lo_scaled().is_zero());
        assert_eq!(z.floor_certified(), None);
    }

    #[test]
    fn distance_near_half_integer() {
        let x = CertifiedReal::from_decimal_str("3.499999", 96).unwrap();
        let d = x.nearest_int_distance();
        assert!(d.hi_f64() <= 0.5 + 1e-12);
        approx(&d, 0.499999, 1e-9);
        let y = CertifiedReal::from_decimal_str("3.5000001", 96).unwrap();
        approx(&y.nearest_int_distance(), 0.4999999, 1e-9);
    }

    #[test]
    fn decimal_parsing() {
        let x = CertifiedReal::from_decimal_str("2.45e47", 96).unwrap();
        let expected: BigInt = "245000000000000000000000000000000000000000000000".parse().unwrap();
        assert!(x.contains_bigint(&expected));
        assert!(CertifiedReal::from_decimal_str("abc", 64).is_err());
        let neg = CertifiedReal::from_decimal_str("-0.0867", 96).unwrap();
        approx(&neg, -0.0867, 1e-15);
    }

    #[test]
    fn powering_and_comparison() {
        let phi = CertifiedReal::from_i64(5, 256)
            .sqrt()
            .unwrap()
            .add_i64(1)
            .div_u64(2);
        let p9 = phi.powi(9);
        approx(&p9, 76.01315561749642, 1e-9);
        assert!(p9.certainly_gt(&CertifiedReal::from_i64(76, 256)));
        assert!(p9.certainly_lt(&CertifiedReal::from_i64(77, 256)));
    }

    #[test]
    fn precision_rounding_is_outward() {
        let x = CertifiedReal::from_ratio(&BigInt::from(1), &BigInt::from(3), 200).unwrap();
        let down = x.with_precision(40);
        assert!(down.lo_scaled() * pow2(160) <= x.lo_scaled() * BigInt::one());
        assert!(down.encloses(&x));
    }
}
