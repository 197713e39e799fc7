//! The midpoint–radius interval type and its certified operations.

use super::RAD_PREC;
use crate::{Error, Result};
use rug::float::{Round, Special};
use rug::ops::NegAssign;
use rug::{Float, Rational};
use std::cmp::Ordering;
use std::fmt;

/// A certified enclosure `mid ± rad` of a real number.
///
/// `mid` is an arbitrary-precision float at the ball's working precision;
/// `rad` is a low-precision non-negative float handled exclusively with
/// upward rounding. Every operation returns a ball that provably contains
/// the image of every point of its input balls.
#[derive(Clone)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

/// Upward-rounded radius addition.
fn radd(a: &Float, b: &Float) -> Float {
    Float::with_val_round(RAD_PREC, a + b, Round::Up).0
}

/// Upward-rounded radius multiplication.
fn rmul(a: &Float, b: &Float) -> Float {
    Float::with_val_round(RAD_PREC, a * b, Round::Up).0
}

fn rzero() -> Float {
    Float::with_val(RAD_PREC, 0)
}

fn rinf() -> Float {
    Float::with_val(RAD_PREC, Special::Infinity)
}

/// Upward-rounded `|x|` at radius precision.
fn rabs(x: &Float) -> Float {
    let mut a = Float::with_val_round(RAD_PREC, x.abs_ref(), Round::Up).0;
    if a.is_sign_negative() {
        a.neg_assign();
    }
    a
}

/// An upper bound for the rounding error of a nearest-rounded result `m`
/// at precision `prec`, given MPFR's inexactness flag.
fn round_err(m: &Float, ord: Ordering, prec: u32) -> Float {
    if ord == Ordering::Equal {
        return rzero();
    }
    match m.get_exp() {
        // |error| <= 1/2 ulp = 2^(exp - prec - 1); we use a full ulp.
        Some(e) => {
            let mut u = Float::with_val(RAD_PREC, 1);
            let shift = e as i64 - prec as i64;
            if shift >= 0 {
                u <<= shift as u32;
            } else {
                u >>= (-shift) as u32;
            }
            u
        }
        // Non-zero exact values always have an exponent; a zero or
        // non-finite inexact result gets an infinite error bound (sound).
        None => rinf(),
    }
}

impl Ball {
    // ------------------------------------------------------------------
    // construction
    // ------------------------------------------------------------------

    /// The exact ball `v ± 0` at precision `prec` (f64 values are dyadic,
    /// hence exactly representable).
    pub fn from_f64(prec: u32, v: f64) -> Self {
        Ball {
            mid: Float::with_val(prec, v),
            rad: rzero(),
        }
    }

    /// The exact ball `v ± 0`.
    pub fn from_i64(prec: u32, v: i64) -> Self {
        Ball {
            mid: Float::with_val(prec, v),
            rad: rzero(),
        }
    }

    /// Enclosure of the exact rational `num/den`.
    pub fn from_ratio(prec: u32, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let q = Rational::from((num, den));
        let (mid, ord) = Float::with_val_round(prec, &q, Round::Nearest);
        let rad = round_err(&mid, ord, prec);
        Ball { mid, rad }
    }

    /// Ball with the given midpoint, zero radius. The float is used as-is.
    pub fn from_float(mid: Float) -> Self {
        Ball { mid, rad: rzero() }
    }

    /// Ball with explicit midpoint and radius (radius interpreted upward).
    pub fn from_midrad(mid: Float, rad_f64: f64) -> Self {
        assert!(rad_f64 >= 0.0, "negative radius");
        Ball {
            mid,
            rad: Float::with_val_round(RAD_PREC, rad_f64, Round::Up).0,
        }
    }

    /// Enclosure of the interval `[lo, hi]`.
    ///
    /// The endpoints may be any finite floats with `lo <= hi`; the result
    /// midpoint is rounded at the larger of the two precisions.
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "from_endpoints: lo > hi");
        let p = lo.prec().max(hi.prec());
        if !lo.is_finite() || !hi.is_finite() {
            return Ball::whole_line(p);
        }
        let mut mid = Float::with_val_round(p, &lo + &hi, Round::Nearest).0;
        mid >>= 1u32;
        // rad >= max(mid - lo, hi - mid), each rounded upward.
        let d1 = Float::with_val_round(RAD_PREC, &mid - &lo, Round::Up).0;
        let d2 = Float::with_val_round(RAD_PREC, &hi - &mid, Round::Up).0;
        let rad = if d1 >= d2 { d1 } else { d2 };
        Ball { mid, rad }
    }

    /// The zero ball.
    pub fn zero(prec: u32) -> Self {
        Ball::from_i64(prec, 0)
    }

    /// The unit ball `1 ± 0`.
    pub fn one(prec: u32) -> Self {
        Ball::from_i64(prec, 1)
    }

    /// The whole real line (infinite radius): the sound "I know nothing"
    /// enclosure that total operations degrade to on overflow.
    pub fn whole_line(prec: u32) -> Self {
        Ball {
            mid: Float::with_val(prec, 0),
            rad: rinf(),
        }
    }

    // ------------------------------------------------------------------
    // accessors
    // ------------------------------------------------------------------

    /// Midpoint (working-precision float).
    pub fn mid(&self) -> &Float {
        &self.mid
    }

    /// Radius (low-precision float, `>= 0`, possibly `+inf`).
    pub fn rad(&self) -> &Float {
        &self.rad
    }

    /// Working precision of the midpoint, in bits.
    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// Midpoint as f64 (nearest).
    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Radius as f64, rounded up.
    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64_round(Round::Up)
    }

    /// Lower endpoint `mid - rad`, rounded down (a certified lower bound).
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid - &self.rad, Round::Down).0
    }

    /// Upper endpoint `mid + rad`, rounded up (a certified upper bound).
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid + &self.rad, Round::Up).0
    }

    /// Is the enclosure finite (finite midpoint and radius)?
    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// Error out unless the enclosure is finite.
    pub fn check_finite(&self, op: &'static str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite { op })
        }
    }

    /// Does the ball contain zero?
    pub fn contains_zero(&self) -> bool {
        !self.certainly_positive() && !self.certainly_negative()
    }

    /// Does the ball contain the given float?
    pub fn contains_float(&self, v: &Float) -> bool {
        !(self.lower() > *v) && !(self.upper() < *v)
    }

    /// Do the two balls overlap? (Certified intersection test: `false`
    /// means provably disjoint.)
    pub fn overlaps(&self, other: &Ball) -> bool {
        !self.certainly_lt(other) && !other.certainly_lt(self)
    }

    /// Re-round to a (usually lower) working precision.
    pub fn with_prec(&self, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let rad = radd(&self.rad, &round_err(&mid, ord, prec));
        Ball { mid, rad }
    }

    /// Enlarge the radius by `e >= 0`.
    pub fn widen(&self, e: f64) -> Ball {
        assert!(e >= 0.0);
        Ball {
            mid: self.mid.clone(),
            rad: radd(&self.rad, &Float::with_val_round(RAD_PREC, e, Round::Up).0),
        }
    }

    // ------------------------------------------------------------------
    // certified comparisons
    // ------------------------------------------------------------------

    /// Is every point of `self` strictly below every point of `other`?
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        self.is_finite() && other.is_finite() && self.upper() < other.lower()
    }

    /// Is every point of `self` strictly above every point of `other`?
    pub fn certainly_gt(&self, other: &Ball) -> bool {
        other.certainly_lt(self)
    }

    /// Is every point of `self` `<=` every point of `other`?
    pub fn certainly_le(&self, other: &Ball) -> bool {
        self.is_finite() && other.is_finite() && self.upper() <= other.lower()
    }

    /// Is the ball provably `> 0`?
    pub fn certainly_positive(&self) -> bool {
        self.is_finite() && self.lower().cmp0() == Some(Ordering::Greater)
    }

    /// Is the ball provably `< 0`?
    pub fn certainly_negative(&self) -> bool {
        self.is_finite() && self.upper().cmp0() == Some(Ordering::Less)
    }

    /// Is the ball provably `>= 0`?
    pub fn certainly_nonnegative(&self) -> bool {
        self.is_finite() && self.lower().cmp0() != Some(Ordering::Less)
    }

    // ------------------------------------------------------------------
    // ring operations (total)
    // ------------------------------------------------------------------

    fn out_prec(&self, other: &Ball) -> u32 {
        self.prec().max(other.prec())
    }

    /// Certified sum.
    pub fn add(&self, other: &Ball) -> Ball {
        let p = self.out_prec(other);
        let (mid, ord) = Float::with_val_round(p, &self.mid + &other.mid, Round::Nearest);
        if !mid.is_finite() {
            return Ball::whole_line(p);
        }
        let rad = radd(&radd(&self.rad, &other.rad), &round_err(&mid, ord, p));
        Ball { mid, rad }
    }

    /// Certified difference.
    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    /// Exact negation.
    pub fn neg(&self) -> Ball {
        let mut mid = self.mid.clone();
        mid.neg_assign();
        Ball {
            mid,
            rad: self.rad.clone(),
        }
    }

    /// Certified product.
    pub fn mul(&self, other: &Ball) -> Ball {
        let p = self.out_prec(other);
        let (mid, ord) = Float::with_val_round(p, &self.mid * &other.mid, Round::Nearest);
        if !mid.is_finite() {
            return Ball::whole_line(p);
        }
        // |xy - am*bm| <= |am| br + |bm| ar + ar br
        let am = rabs(&self.mid);
        let bm = rabs(&other.mid);
        let mut rad = rmul(&am, &other.rad);
        rad = radd(&rad, &rmul(&bm, &self.rad));
        rad = radd(&rad, &rmul(&self.rad, &other.rad));
        rad = radd(&rad, &round_err(&mid, ord, p));
        Ball { mid, rad }
    }

    /// Certified square (tighter than `self.mul(self)` for balls
    /// containing zero).
    pub fn sqr(&self) -> Ball {
        let a = self.abs();
        // abs() is a nonnegative interval, endpoint monotone.
        let p = self.prec();
        let mut lo = a.lower();
        if lo.cmp0() == Some(Ordering::Less) {
            lo = Float::with_val(p, 0);
        }
        let lo2 = Float::with_val_round(p, lo.square_ref(), Round::Down).0;
        let hi2 = Float::with_val_round(p, a.upper().square_ref(), Round::Up).0;
        Ball::from_endpoints(lo2, hi2)
    }

    /// Exact absolute value.
    pub fn abs(&self) -> Ball {
        if !self.is_finite() {
            return Ball::whole_line(self.prec());
        }
        if self.certainly_nonnegative() {
            return self.clone();
        }
        if self.certainly_negative() {
            return self.neg();
        }
        // Contains zero: [0, max(|lo|, |hi|)].
        let mut lo = self.lower();
        lo.abs_mut();
        let mut hi = self.upper();
        hi.abs_mut();
        let m = if lo > hi { lo } else { hi };
        Ball::from_endpoints(Float::with_val(self.prec(), 0), m)
    }

    /// Add a signed integer.
    pub fn add_i64(&self, v: i64) -> Ball {
        self.add(&Ball::from_i64(self.prec(), v))
    }

    /// Subtract a signed integer.
    pub fn sub_i64(&self, v: i64) -> Ball {
        self.add_i64(v.checked_neg().expect("i64 overflow"))
    }

    /// Multiply by a signed integer.
    pub fn mul_i64(&self, v: i64) -> Ball {
        self.mul(&Ball::from_i64(self.prec(), v))
    }

    /// Divide by a nonzero signed integer (always exact domain).
    pub fn div_i64(&self, v: i64) -> Ball {
        assert!(v != 0, "division by zero integer");
        self.div(&Ball::from_i64(self.prec(), v))
            .expect("nonzero integer divisor")
    }

    /// Exact scaling by `2^e`.
    pub fn mul_2exp(&self, e: i32) -> Ball {
        let mut mid = self.mid.clone();
        let mut rad = self.rad.clone();
        if e >= 0 {
            mid <<= e as u32;
            rad <<= e as u32;
        } else {
            mid >>= (-e) as u32;
            rad >>= (-e) as u32;
        }
        if !mid.is_finite() || !rad.is_finite() {
            return Ball::whole_line(self.prec());
        }
        Ball { mid, rad }
    }

    /// Certified integer power (binary exponentiation; even powers go
    /// through [`Ball::sqr`] to keep enclosures of sign-straddling balls
    /// one-sided). Negative exponents require a ball excluding zero.
    pub fn pow_i(&self, n: i64) -> Result<Ball> {
        if n < 0 {
            return Ball::one(self.prec()).div(&self.pow_i(-n)?);
        }
        let mut result = Ball::one(self.prec());
        let mut base = self.clone();
        let mut k = n as u64;
        loop {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.sqr();
        }
        Ok(result)
    }

    // ------------------------------------------------------------------
    // division (domain-restricted)
    // ------------------------------------------------------------------

    /// Certified quotient. Errors with [`Error::DomainStraddle`] if the
    /// divisor ball contains zero.
    pub fn div(&self, other: &Ball) -> Result<Ball> {
        let p = self.out_prec(other);
        if !self.is_finite() || !other.is_finite() {
            return Err(Error::NonFinite { op: "div" });
        }
        if other.contains_zero() {
            return Err(Error::DomainStraddle {
                op: "div",
                detail: format!("divisor {other} contains zero"),
            });
        }
        let (mid, ord) = Float::with_val_round(p, &self.mid / &other.mid, Round::Nearest);
        if !mid.is_finite() {
            return Ok(Ball::whole_line(p));
        }
        // |x/y - am/bm| <= (ar + |am/bm| br) / (|bm| - br)
        let q_abs = radd(&rabs(&mid), &round_err(&mid, ord, p));
        let bm_abs_lo = {
            // |bm| - br, rounded *down*: denominator lower bound.
            let mut t = Float::with_val_round(RAD_PREC, other.mid.abs_ref(), Round::Down).0;
            t = Float::with_val_round(RAD_PREC, &t - &other.rad, Round::Down).0;
            t
        };
        if bm_abs_lo.cmp0() != Some(Ordering::Greater) {
            return Err(Error::DomainStraddle {
                op: "div",
                detail: format!("divisor {other} too close to zero"),
            });
        }
        let num = radd(&self.rad, &rmul(&q_abs, &other.rad));
        let rad_prop = Float::with_val_round(RAD_PREC, &num / &bm_abs_lo, Round::Up).0;
        let rad = radd(&rad_prop, &round_err(&mid, ord, p));
        Ok(Ball { mid, rad })
    }

    /// Certified reciprocal.
    pub fn recip(&self) -> Result<Ball> {
        Ball::one(self.prec()).div(self)
    }

    // ------------------------------------------------------------------
    // monotone elementary functions (directed endpoint rounding)
    // ------------------------------------------------------------------

    fn monotone_incr(&self, f: impl Fn(&mut Float, Round) -> Ordering) -> Ball {
        let p = self.prec();
        let mut lo = self.lower();
        let mut hi = self.upper();
        f(&mut lo, Round::Down);
        f(&mut hi, Round::Up);
        if !lo.is_finite() || !hi.is_finite() {
            return Ball::whole_line(p);
        }
        Ball::from_endpoints(lo, hi)
    }

    /// Certified exponential.
    pub fn exp(&self) -> Ball {
        if !self.is_finite() {
            return Ball::whole_line(self.prec());
        }
        self.monotone_incr(|x, r| x.exp_round(r))
    }

    /// Certified natural logarithm. Errors if the ball touches `(-inf, 0]`.
    pub fn ln(&self) -> Result<Ball> {
        if !self.is_finite() {
            return Err(Error::NonFinite { op: "ln" });
        }
        if !self.certainly_positive() {
            return Err(Error::DomainStraddle {
                op: "ln",
                detail: format!("{self} not strictly positive"),
            });
        }
        Ok(self.monotone_incr(|x, r| x.ln_round(r)))
    }

    /// Intersect the enclosure with `[0, ∞)`.
    ///
    /// Sound only for enclosures of mathematically nonnegative
    /// quantities (sums of squares and the like), where a negative lower
    /// endpoint is pure rounding slack from the midpoint–radius
    /// representation.
    pub fn clamp_nonnegative(&self) -> Ball {
        let lo = self.lower();
        if !(lo < 0) {
            return self.clone();
        }
        let mut hi = self.upper();
        if hi < 0 {
            hi = Float::with_val(hi.prec(), 0);
        }
        Ball::from_endpoints(Float::with_val(lo.prec(), 0), hi)
    }

    /// Certified square root over the intersection with the domain
    /// `[0, ∞)`: a lower endpoint dipping below zero (almost always
    /// rounding slack of the midpoint–radius representation around a
    /// nonnegative quantity) is treated as zero. Errors only when the
    /// whole ball is certainly negative.
    pub fn sqrt(&self) -> Result<Ball> {
        if !self.is_finite() {
            return Err(Error::NonFinite { op: "sqrt" });
        }
        let mut hi = self.upper();
        if hi < 0 {
            return Err(Error::DomainStraddle {
                op: "sqrt",
                detail: format!("{self} is certainly negative"),
            });
        }
        if !(self.lower() < 0) {
            return Ok(self.monotone_incr(|x, r| x.sqrt_round(r)));
        }
        hi.sqrt_round(Round::Up);
        Ok(Ball::from_endpoints(Float::with_val(self.prec(), 0), hi))
    }

    /// Certified hyperbolic sine.
    pub fn sinh(&self) -> Ball {
        if !self.is_finite() {
            return Ball::whole_line(self.prec());
        }
        self.monotone_incr(|x, r| x.sinh_round(r))
    }

    /// Certified hyperbolic cosine.
    pub fn cosh(&self) -> Ball {
        if !self.is_finite() {
            return Ball::whole_line(self.prec());
        }
        // Even and increasing in |x|.
        let a = self.abs();
        a.monotone_incr(|x, r| x.cosh_round(r))
    }

    /// Certified hyperbolic tangent.
    pub fn tanh(&self) -> Ball {
        if !self.is_finite() {
            return Ball::whole_line(self.prec());
        }
        self.monotone_incr(|x, r| x.tanh_round(r))
    }

    /// Certified arctangent.
    pub fn atan(&self) -> Ball {
        if !self.is_finite() {
            return Ball::from_endpoints(
                Float::with_val_round(self.prec(), -2, Round::Down).0,
                Float::with_val(self.prec(), 2),
            );
        }
        self.monotone_incr(|x, r| x.atan_round(r))
    }

    // ------------------------------------------------------------------
    // trigonometric functions (critical-point analysis)
    // ------------------------------------------------------------------

    /// Certified cosine.
    pub fn cos(&self) -> Ball {
        self.trig(true)
    }

    /// Certified sine.
    pub fn sin(&self) -> Ball {
        self.trig(false)
    }

    fn trig(&self, is_cos: bool) -> Ball {
        let p = self.prec();
        let full = || {
            Ball::from_endpoints(
                Float::with_val(p, -1),
                Float::with_val(p, 1),
            )
        };
        if !self.is_finite() {
            return full();
        }
        let lo = self.lower();
        let hi = self.upper();
        // Give up (soundly) on very wide or very large arguments.
        let width = Float::with_val_round(RAD_PREC, &hi - &lo, Round::Up).0;
        if width > 7 || rabs(&lo) > 1e15 || rabs(&hi) > 1e15 {
            return full();
        }

        // Enclose cos/sin at an exact endpoint by two directed roundings.
        let point_env = |x: &Float| -> (Float, Float) {
            let mut a = x.clone();
            let mut b = x.clone();
            if is_cos {
                a.cos_round(Round::Down);
                b.cos_round(Round::Up);
            } else {
                a.sin_round(Round::Down);
                b.sin_round(Round::Up);
            }
            (a, b)
        };
        let (l1, l2) = point_env(&lo);
        let (h1, h2) = point_env(&hi);
        let mut min_v = if l1 < h1 { l1 } else { h1 };
        let mut max_v = if l2 > h2 { l2 } else { h2 };

        // Critical points: cos has extrema at k*pi, sin at (k + 1/2)*pi.
        // Solve lo <= c(k) <= hi conservatively.
        let pi_lo = Float::with_val_round(p, rug::float::Constant::Pi, Round::Down).0;
        let pi_hi = Float::with_val_round(p, rug::float::Constant::Pi, Round::Up).0;
        let approx = Float::with_val(53, &lo / &pi_lo).to_f64();
        let k0 = approx.floor() as i64 - 2;
        for k in k0..k0 + 8 {
            // Critical abscissa c = k*pi (cos) or (2k+1)*pi/2 (sin),
            // enclosed via directed pi.
            let m: i64 = if is_cos { 2 * k } else { 2 * k + 1 };
            // c = m * (pi/2): since pi is only known to an interval and m
            // may be negative, bracket all four directed products.
            let mf = Float::with_val(p, m);
            let p1 = Float::with_val_round(p, &pi_lo * &mf, Round::Down).0;
            let p2 = Float::with_val_round(p, &pi_hi * &mf, Round::Down).0;
            let p3 = Float::with_val_round(p, &pi_lo * &mf, Round::Up).0;
            let p4 = Float::with_val_round(p, &pi_hi * &mf, Round::Up).0;
            let mut c_lo = if p1 < p2 { p1 } else { p2 };
            let mut c_hi = if p3 > p4 { p3 } else { p4 };
            c_lo >>= 1u32;
            c_hi >>= 1u32;
            // Does [c_lo, c_hi] intersect [lo, hi]?
            if c_hi >= lo && c_lo <= hi {
                // cos(k*pi) = +1 iff k even; sin((2k+1)*pi/2) = (-1)^k.
                let at_max = k.rem_euclid(2) == 0;
                if at_max {
                    max_v = Float::with_val(p, 1);
                } else {
                    min_v = Float::with_val(p, -1);
                }
            }
        }
        // Clamp to [-1, 1] (cos/sin ranges) for tightness.
        if min_v < -1 {
            min_v = Float::with_val(p, -1);
        }
        if max_v > 1 {
            max_v = Float::with_val(p, 1);
        }
        // lower()/upper() already include the radius, so the endpoint and
        // critical-point analysis above covers the whole input interval.
        Ball::from_endpoints(min_v, max_v)
    }

    // ------------------------------------------------------------------
    // hull / min / max
    // ------------------------------------------------------------------

    /// Smallest ball containing both inputs.
    pub fn hull(&self, other: &Ball) -> Ball {
        if !self.is_finite() || !other.is_finite() {
            return Ball::whole_line(self.out_prec(other));
        }
        let lo_s = self.lower();
        let lo_o = other.lower();
        let hi_s = self.upper();
        let hi_o = other.upper();
        Ball::from_endpoints(
            if lo_s < lo_o { lo_s } else { lo_o },
            if hi_s > hi_o { hi_s } else { hi_o },
        )
    }

    /// Certified pointwise maximum `max(x, y)`.
    pub fn max(&self, other: &Ball) -> Ball {
        if !self.is_finite() || !other.is_finite() {
            return Ball::whole_line(self.out_prec(other));
        }
        let lo_s = self.lower();
        let lo_o = other.lower();
        let hi_s = self.upper();
        let hi_o = other.upper();
        Ball::from_endpoints(
            if lo_s > lo_o { lo_s } else { lo_o },
            if hi_s > hi_o { hi_s } else { hi_o },
        )
    }

    /// Certified pointwise minimum.
    pub fn min(&self, other: &Ball) -> Ball {
        self.neg().max(&other.neg()).neg()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ± {:.3e}]",
            self.mid.to_string_radix(10, Some(25)),
            self.rad_f64()
        )
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(p: u32, v: f64) -> Ball {
        Ball::from_f64(p, v)
    }

    #[test]
    fn endpoints_bracket_midpoint() {
        let x = Ball::from_ratio(64, 1, 3);
        assert!(x.lower() < x.upper());
        assert!(x.rad_f64() > 0.0 && x.rad_f64() < 1e-18);
        let third = Float::with_val(128, 1) / 3u32;
        assert!(x.contains_float(&third));
    }

    #[test]
    fn div_by_zero_straddle_errors() {
        let x = b(64, 1.0);
        let y = Ball::from_midrad(Float::with_val(64, 0.5), 1.0);
        assert!(matches!(
            x.div(&y),
            Err(Error::DomainStraddle { op: "div", .. })
        ));
    }

    #[test]
    fn ln_domain() {
        assert!(b(64, 0.0).ln().is_err());
        assert!(b(64, 2.0).ln().is_ok());
        let e = b(64, 1.0).exp();
        let back = e.ln().unwrap();
        assert!(back.contains_float(&Float::with_val(64, 1)));
    }

    #[test]
    fn sqr_of_straddling_ball_is_nonnegative() {
        let x = Ball::from_midrad(Float::with_val(64, 0.25), 1.0);
        let s = x.sqr();
        assert!(s.certainly_nonnegative());
        assert!(s.upper() <= 1.5626);
    }

    #[test]
    fn cos_interval_hits_extremum() {
        // [3, 3.3] contains pi, so cos must reach -1.
        let x = Ball::from_endpoints(Float::with_val(64, 3), Float::with_val(64, 3.3f64));
        let c = x.cos();
        assert!(c.lower() <= -1.0);
        assert!(c.upper() < -0.9);
        // [1.5, 1.6] contains pi/2: sin reaches +1.
        let y = Ball::from_endpoints(Float::with_val(64, 1.5), Float::with_val(64, 1.6f64));
        let s = y.sin();
        assert!(s.upper() >= 1.0);
        assert!(s.lower() > 0.99);
    }

    #[test]
    fn wide_trig_gives_unit_interval() {
        let x = Ball::from_midrad(Float::with_val(64, 0), 100.0);
        let c = x.cos();
        assert!(c.contains_float(&Float::with_val(64, 1)));
        assert!(c.contains_float(&Float::with_val(64, -1)));
    }

    #[test]
    fn pow_even_one_sided() {
        let x = Ball::from_midrad(Float::with_val(64, 0), 2.0);
        let p4 = x.pow_i(4).unwrap();
        assert!(p4.certainly_nonnegative());
        assert!(p4.upper() <= 16.01);
    }

    proptest! {
        /// Exact rational points propagate through +, -, *, /: the image
        /// of contained points stays contained.
        #[test]
        fn ring_ops_contain_exact_images(
            an in -1000i64..1000, ad in 1i64..60,
            bn in -1000i64..1000, bd in 1i64..60,
        ) {
            let p = 64u32;
            let xa = Ball::from_ratio(p, an, ad);
            let xb = Ball::from_ratio(p, bn, bd);
            let qa = Rational::from((an, ad));
            let qb = Rational::from((bn, bd));

            let checks: Vec<(Ball, Rational)> = vec![
                (xa.add(&xb), Rational::from(&qa + &qb)),
                (xa.sub(&xb), Rational::from(&qa - &qb)),
                (xa.mul(&xb), Rational::from(&qa * &qb)),
                (xa.sqr(), Rational::from(&qa * &qa)),
            ];
            for (ball, exact) in checks {
                let v = Float::with_val(128, &exact);
                prop_assert!(ball.contains_float(&v), "{exact} not in {ball}");
            }
            if bn != 0 {
                let q = xa.div(&xb).unwrap();
                let v = Float::with_val(128, Rational::from(&qa / &qb));
                prop_assert!(q.contains_float(&v));
            }
        }

        /// Monotone elementary functions contain the true image of the
        /// midpoint (checked against 4x-precision evaluation).
        #[test]
        fn elementary_contain_high_precision_image(v in -30.0f64..30.0) {
            let p = 64u32;
            let x = b(p, v);
            let hp = 256u32;
            let xe = Float::with_val(hp, v);

            let pairs: Vec<(Ball, Float)> = vec![
                (x.exp(), Float::with_val(hp, xe.exp_ref())),
                (x.sinh(), Float::with_val(hp, xe.sinh_ref())),
                (x.cosh(), Float::with_val(hp, xe.cosh_ref())),
                (x.tanh(), Float::with_val(hp, xe.tanh_ref())),
                (x.atan(), Float::with_val(hp, xe.atan_ref())),
                (x.cos(), Float::with_val(hp, xe.cos_ref())),
                (x.sin(), Float::with_val(hp, xe.sin_ref())),
            ];
            for (ball, exact) in pairs {
                prop_assert!(ball.contains_float(&exact), "{exact} not in {ball}");
            }
        }

        /// Interval evaluation contains the image of *every* sampled point,
        /// not just the midpoint.
        #[test]
        fn interval_image_containment(
            mid in -5.0f64..5.0, rad in 0.0f64..2.0, t in -1.0f64..1.0,
        ) {
            let p = 64u32;
            let x = Ball::from_midrad(Float::with_val(p, mid), rad);
            let pt = mid + t * rad;
            let xe = Float::with_val(256, pt);
            prop_assert!(x.exp().contains_float(&Float::with_val(256, xe.exp_ref())));
            prop_assert!(x.cos().contains_float(&Float::with_val(256, xe.cos_ref())));
            prop_assert!(x.sin().contains_float(&Float::with_val(256, xe.sin_ref())));
            prop_assert!(x.sqr().contains_float(&Float::with_val(256, xe.square_ref())));
        }
    }
}
