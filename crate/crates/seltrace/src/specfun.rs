//! Certified special functions.
//!
//! Everything here carries explicit, self-derived error bounds:
//!
//! * **digamma / trigamma** (real and complex): recurrence into the region
//!   `Re w >= sigma(prec)`, then the Euler–Maclaurin asymptotic series with
//!   the kernel bound `|periodized B_{2m}(t)| <= |B_{2m}|`, giving
//!   remainders `|B_40|/(40 sigma^40)` (digamma) and `|B_40|/sigma^41`
//!   (trigamma).
//! * **log-gamma split** `log Gamma(z) = A(z) + R(z)` with
//!   `A(z) = (z-1/2)log z - z + (1/2)log 2pi + 1/(12z)`, a certified
//!   evaluation of `log Gamma` by the same Euler–Maclaurin route, the
//!   classical remainder bound `|R(z)| <= 1/(360|z|^3) + 2/(315|z|^5)`,
//!   and the two vertical-line integrals of `R` in closed form, each
//!   cross-checkable against a certified numeric quadrature.
//! * **sine integral**: Taylor series with alternating-remainder control
//!   for moderate arguments, repeated integration by parts with the
//!   first-omitted-term bound for large ones.
//! * **small-argument series enclosures** for `sinh(t)/t` and
//!   `(cosh t - 1)/t^2` with geometric tail bounds, plus complex disk
//!   variants used by quadrature modulus bounds.
//! * thin certified wrappers over the correctly-rounded `erfc` and
//!   exponential-integral primitives.

use crate::rigor::cball::CBall;
use crate::rigor::{self, em, Ball};
use crate::{Error, Result};
use rug::float::Round;
use rug::Float;

/// Number of Bernoulli terms used by the asymptotic expansions (`B_2`
/// through `B_40`).
const EM_ORDER: usize = 20;

/// Threshold `sigma` such that pushing `Re z >= sigma` by recurrence makes
/// the order-[`EM_ORDER`] asymptotic remainder smaller than roughly
/// `2^-(prec+21)`.
fn em_sigma(prec: u32) -> f64 {
    (2f64).powf((prec as f64 + 70.0) / 40.0).max(8.0)
}

/// `Sum_{k=1..20} c_k u^k` coefficient tables (index 0 unused/zero).
fn psi_coeffs(p: u32) -> Vec<Ball> {
    let mut v = vec![Ball::zero(p)];
    for k in 1..=EM_ORDER {
        v.push(em::bernoulli(p, k).div_i64(2 * k as i64));
    }
    v
}

fn psi1_coeffs(p: u32) -> Vec<Ball> {
    let mut v = vec![Ball::zero(p)];
    for k in 1..=EM_ORDER {
        v.push(em::bernoulli(p, k));
    }
    v
}

fn lgamma_coeffs(p: u32) -> Vec<Ball> {
    // c_k = B_{2k} / ((2k)(2k-1)), laid out at powers u^0..u^19 (the
    // caller multiplies by 1/w once).
    (1..=EM_ORDER)
        .map(|k| {
            em::bernoulli(p, k)
                .div_i64(2 * k as i64)
                .div_i64(2 * k as i64 - 1)
        })
        .collect()
}

fn horner_ball(x: &Ball, coeffs: &[Ball]) -> Ball {
    let mut acc = Ball::zero(x.prec());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Steps needed to push the real part from `re_lo` up to `sigma`.
fn recurrence_steps(re_lo: &Float, sigma: f64, op: &'static str) -> Result<u32> {
    let lo = re_lo.to_f64_round(Round::Down);
    if !lo.is_finite() {
        return Err(Error::NonFinite { op });
    }
    if lo >= sigma {
        return Ok(0);
    }
    let k = (sigma - lo).ceil() + 1.0;
    if k > 1e6 {
        return Err(Error::OutOfDomain {
            op,
            detail: format!("argument real part {lo:.3e} too far left"),
        });
    }
    Ok(k as u32)
}

/// Upper bound (as f64, rounded up) of a nonnegative ball expression.
fn upper_f64(b: &Ball) -> f64 {
    b.upper().to_f64_round(Round::Up)
}

// ---------------------------------------------------------------------
// digamma / trigamma
// ---------------------------------------------------------------------

/// Certified complex digamma.
pub(crate) fn digamma_c(z: &CBall) -> Result<CBall> {
    let p = z.prec();
    let sigma = em_sigma(p);
    let k = recurrence_steps(&z.re.lower(), sigma, "digamma")?;

    // psi(z) = psi(z + k) - sum_{j=0}^{k-1} 1/(z+j)
    let mut acc = CBall::from_real(Ball::zero(p));
    let mut w = z.clone();
    for _ in 0..k {
        acc = acc.add(&w.recip()?);
        w.re = w.re.add_i64(1);
    }

    let r1 = w.recip()?;
    let u = r1.mul(&r1);
    let series = u.horner(&psi_coeffs(p));
    let val = w
        .ln()?
        .sub(&r1.scale(&Ball::from_ratio(p, 1, 2)))
        .sub(&series);

    // |remainder| <= |B_40| / (40 * (Re w)^40)
    let sig = Ball::from_float(w.re.lower());
    let rem = upper_f64(
        &em::bernoulli(p, EM_ORDER)
            .abs()
            .div(&sig.pow_i(2 * EM_ORDER as i64)?)?
            .div_i64(2 * EM_ORDER as i64),
    );
    let val = CBall::new(val.re.widen(rem), val.im.widen(rem));
    Ok(val.sub(&acc))
}

/// Certified complex trigamma.
pub(crate) fn trigamma_c(z: &CBall) -> Result<CBall> {
    let p = z.prec();
    let sigma = em_sigma(p);
    let k = recurrence_steps(&z.re.lower(), sigma, "trigamma")?;

    // psi'(z) = psi'(z + k) + sum_{j=0}^{k-1} 1/(z+j)^2
    let mut acc = CBall::from_real(Ball::zero(p));
    let mut w = z.clone();
    for _ in 0..k {
        let r = w.recip()?;
        acc = acc.add(&r.mul(&r));
        w.re = w.re.add_i64(1);
    }

    let r1 = w.recip()?;
    let u = r1.mul(&r1);
    // psi'(w) = 1/w + 1/(2 w^2) + (1/w) * sum_{k>=1} B_2k u^k
    let val = r1
        .add(&u.scale(&Ball::from_ratio(p, 1, 2)))
        .add(&r1.mul(&u.horner(&psi1_coeffs(p))));

    // |remainder| <= |B_40| / (Re w)^41
    let sig = Ball::from_float(w.re.lower());
    let rem = upper_f64(
        &em::bernoulli(p, EM_ORDER)
            .abs()
            .div(&sig.pow_i(2 * EM_ORDER as i64 + 1)?)?,
    );
    let val = CBall::new(val.re.widen(rem), val.im.widen(rem));
    Ok(val.add(&acc))
}

/// Certified trigamma for real arguments (faster than the complex path;
/// used inside quadrature integrands evaluated many thousands of times).
pub(crate) fn trigamma_real(x: &Ball) -> Result<Ball> {
    let p = x.prec();
    let sigma = em_sigma(p);
    let k = recurrence_steps(&x.lower(), sigma, "trigamma")?;

    let mut acc = Ball::zero(p);
    let mut w = x.clone();
    for _ in 0..k {
        acc = acc.add(&w.recip()?.sqr());
        w = w.add_i64(1);
    }

    let r1 = w.recip()?;
    let u = r1.sqr();
    let val = r1
        .add(&u.mul_2exp(-1))
        .add(&r1.mul(&horner_ball(&u, &psi1_coeffs(p))));
    let sig = Ball::from_float(w.lower());
    let rem = upper_f64(
        &em::bernoulli(p, EM_ORDER)
            .abs()
            .div(&sig.pow_i(2 * EM_ORDER as i64 + 1)?)?,
    );
    Ok(val.widen(rem).add(&acc))
}

/// Enclosure of the digamma function ψ(z) at `z = z_re + i z_im`,
/// returned as `(re, im)` balls at precision `prec`.
///
/// Arguments left of the asymptotic region are shifted by the recurrence
/// `ψ(z) = ψ(z+1) − 1/z`; an enclosure straddling one of the poles at the
/// non-positive integers fails with a domain error from the shift's
/// division.
pub fn digamma_enclosure(z_re: &Ball, z_im: &Ball, prec: u32) -> Result<(Ball, Ball)> {
    let v = digamma_c(&CBall::new(z_re.with_prec(prec), z_im.with_prec(prec)))?;
    Ok((v.re, v.im))
}

/// Enclosure of the trigamma function ψ′(z), as `(re, im)` balls.
pub fn trigamma_enclosure(z_re: &Ball, z_im: &Ball, prec: u32) -> Result<(Ball, Ball)> {
    let v = trigamma_c(&CBall::new(z_re.with_prec(prec), z_im.with_prec(prec)))?;
    Ok((v.re, v.im))
}

// ---------------------------------------------------------------------
// the trigamma defect -z psi'(1/2+z) + 1 - 1/(12 z^2)
// ---------------------------------------------------------------------

/// Enclosure of the trigamma defect `−zψ′(1/2+z) + 1 − 1/(12z²)`.
///
/// Three argument classes are supported, matching the three proved bounds
/// on this quantity:
///
/// * **real** `z ≥ 1/2` (exact zero imaginary part): returns the signed
///   defect, which lies in `[−7/(120z⁴), 0]`;
/// * **purely imaginary** `z = iy` (exact zero real part, `y` nonzero):
///   returns the **modulus** of the defect, `≤ (112+105π)/(3840y⁴)`;
/// * **complex** with `Re z > 0`: returns the **modulus**, bounded by
///   `7(σ+|t|)/(120σ⁵)` for `z = σ + it`.
///
/// The real case is restricted to `z ≥ 1/2`: for small real `z` the
/// stated interval can fail, and every use bounds arguments away from 0.
pub fn trigamma_bounds(z_re: &Ball, z_im: &Ball) -> Result<Ball> {
    let p = z_re.prec().max(z_im.prec());
    let exactly_zero = |b: &Ball| b.mid().is_zero() && b.rad().is_zero();
    if exactly_zero(z_im) {
        let half = Ball::from_ratio(p, 1, 2);
        if z_re.lower() < half.lower() {
            return Err(Error::OutOfDomain {
                op: "trigamma_bounds",
                detail: format!("real case requires z >= 1/2, got {z_re}"),
            });
        }
        let z = z_re.with_prec(p);
        let psi1 = trigamma_real(&z.add(&half))?;
        let corr = z.sqr().mul_i64(12).recip()?;
        return Ok(Ball::one(p).sub(&z.mul(&psi1)).sub(&corr));
    }
    let z = CBall::new(z_re.with_prec(p), z_im.with_prec(p));
    if !exactly_zero(z_re) && !z_re.certainly_positive() {
        return Err(Error::OutOfDomain {
            op: "trigamma_bounds",
            detail: format!("complex case requires re(z) > 0, got {z_re}"),
        });
    }
    let arg = CBall::new(z.re.add(&Ball::from_ratio(p, 1, 2)), z.im.clone());
    let psi1 = trigamma_c(&arg)?;
    let corr = z.mul(&z).scale(&Ball::from_i64(p, 12)).recip()?;
    let q = CBall::from_real(Ball::one(p))
        .sub(&z.mul(&psi1))
        .sub(&corr);
    Ok(q.abs())
}

/// The proved envelope for [`trigamma_bounds`]'s real case:
/// the interval `[−7/(120z⁴), 0]`.
pub(crate) fn trigamma_defect_envelope_real(z: &Ball) -> Result<Ball> {
    let p = z.prec();
    let m = Ball::from_i64(p, -7).div(&z.pow_i(4)?.mul_i64(120))?;
    Ok(m.hull(&Ball::zero(p)))
}

/// Envelope for the purely imaginary case: modulus at most
/// `(112 + 105π)/(3840 y⁴)`.
pub(crate) fn trigamma_defect_envelope_imag(y: &Ball) -> Result<Ball> {
    let p = y.prec();
    let num = rigor::pi(p).mul_i64(105).add_i64(112);
    num.div(&y.pow_i(4)?.mul_i64(3840))
}

/// Envelope for the complex case `z = σ + it`, `σ > 0`: modulus at most
/// `7(σ + |t|)/(120σ⁵)`.
pub(crate) fn trigamma_defect_envelope_complex(sigma: &Ball, t: &Ball) -> Result<Ball> {
    sigma
        .add(&t.abs())
        .mul_i64(7)
        .div(&sigma.pow_i(5)?.mul_i64(120))
}

// ---------------------------------------------------------------------
// log-gamma split
// ---------------------------------------------------------------------

/// `A(z) = (z − 1/2) log z − z + (1/2) log 2π + 1/(12z)`, the elementary
/// part of the log-gamma split.
pub(crate) fn stirling_a_c(z: &CBall) -> Result<CBall> {
    let p = z.prec();
    let half = Ball::from_ratio(p, 1, 2);
    let log_two_pi = rigor::pi(p).mul_2exp(1).ln()?;
    let shifted = CBall::new(z.re.sub(&half), z.im.clone());
    Ok(shifted
        .mul(&z.ln()?)
        .sub(z)
        .add(&CBall::from_real(log_two_pi.mul_2exp(-1)))
        .add(&z.recip()?.scale(&Ball::from_ratio(p, 1, 12))))
}

/// Certified `log Γ(z)` for `Re z > 0` (recurrence + Euler–Maclaurin
/// asymptotic series with remainder `|B_40|/(40·39·σ^39)`).
pub(crate) fn log_gamma_c(z: &CBall) -> Result<CBall> {
    let p = z.prec();
    let sigma = em_sigma(p);
    let k = recurrence_steps(&z.re.lower(), sigma, "log_gamma")?;

    // log Gamma(z) = log Gamma(z+k) - sum_{j=0}^{k-1} log(z+j)
    let mut acc = CBall::from_real(Ball::zero(p));
    let mut w = z.clone();
    for _ in 0..k {
        acc = acc.add(&w.ln()?);
        w.re = w.re.add_i64(1);
    }

    let half = Ball::from_ratio(p, 1, 2);
    let log_two_pi = rigor::pi(p).mul_2exp(1).ln()?;
    let r1 = w.recip()?;
    let u = r1.mul(&r1);
    let series = r1.mul(&u.horner(&lgamma_coeffs(p)));
    let shifted = CBall::new(w.re.sub(&half), w.im.clone());
    let val = shifted
        .mul(&w.ln()?)
        .sub(&w)
        .add(&CBall::from_real(log_two_pi.mul_2exp(-1)))
        .add(&series);

    // |remainder| <= |B_40| / (40 * 39 * (Re w)^39)
    let sig = Ball::from_float(w.re.lower());
    let rem = upper_f64(
        &em::bernoulli(p, EM_ORDER)
            .abs()
            .div(&sig.pow_i(2 * EM_ORDER as i64 - 1)?)?
            .div_i64(2 * EM_ORDER as i64)
            .div_i64(2 * EM_ORDER as i64 - 1),
    );
    let val = CBall::new(val.re.widen(rem), val.im.widen(rem));
    Ok(val.sub(&acc))
}

/// The split `log Γ(z) = A(z) + R(z)` with a certified bound on the
/// remainder `R`, fixed at one working precision.
pub struct StirlingSplit {
    prec: u32,
}

impl StirlingSplit {
    /// New split evaluator at the given precision.
    pub fn new(prec: u32) -> Self {
        StirlingSplit { prec }
    }

    /// The elementary part `A(z)` at `z = z_re + i z_im`, as `(re, im)`.
    pub fn a_value(&self, z_re: &Ball, z_im: &Ball) -> Result<(Ball, Ball)> {
        let v = stirling_a_c(&CBall::new(
            z_re.with_prec(self.prec),
            z_im.with_prec(self.prec),
        ))?;
        Ok((v.re, v.im))
    }

    /// Upper bound for `|R(z)| = |log Γ(z) − A(z)|` on the input ball.
    pub fn r_bound(&self, z_re: &Ball, z_im: &Ball) -> Result<Ball> {
        log_gamma_remainder_bound(z_re, z_im, self.prec)
    }
}

/// The classical remainder bound `|R(z)| ≤ 1/(360|z|³) + 2/(315|z|⁵)` for
/// the log-gamma split, valid on `Re z ≥ 1/2`.
pub fn log_gamma_remainder_bound(z_re: &Ball, z_im: &Ball, prec: u32) -> Result<Ball> {
    let p = prec;
    let re = z_re.with_prec(p);
    if re.lower() < Ball::from_ratio(p, 1, 2).lower() {
        return Err(Error::OutOfDomain {
            op: "log_gamma_remainder_bound",
            detail: format!("requires re(z) >= 1/2, got {z_re}"),
        });
    }
    let az = CBall::new(re, z_im.with_prec(p)).abs();
    let cube = az.pow_i(3)?.mul_i64(360).recip()?;
    let quint = Ball::from_i64(p, 2).div(&az.pow_i(5)?.mul_i64(315))?;
    Ok(cube.add(&quint))
}

/// Which vertical-line integral of the log-gamma remainder to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StirlingConstant {
    /// `Re ∫_{1/2}^{1/2+i∞} R(z) dz = ζ′(−1)/2 + log2/12 + 1/48`.
    CHalf,
    /// `Re ∫_{1}^{1+i∞} R(z) dz = −ζ′(−1) − 1/6`.
    COne,
}

/// Closed forms of the two vertical-line integrals of the log-gamma
/// remainder.
pub fn stirling_constants(which: StirlingConstant, prec: u32) -> Ball {
    let p = prec + 16;
    let zp = rigor::zeta_prime_m1(p);
    match which {
        StirlingConstant::CHalf => zp
            .mul_2exp(-1)
            .add(&rigor::log2(p).div_i64(12))
            .add(&Ball::from_ratio(p, 1, 48))
            .with_prec(prec),
        StirlingConstant::COne => zp.neg().sub(&Ball::from_ratio(p, 1, 6)).with_prec(prec),
    }
}

/// Integrand for the vertical-line cross-check: the real function
/// `t ↦ −Im[log Γ(σ+it) − A(σ+it) + 1/(360(σ+it)³)]`.
///
/// This is one real component of a complex analytic function of `t`;
/// `bound_modulus` bounds the *complex* modulus, which dominates the
/// component's quadrature defect.
struct StirlingTailIntegrand {
    sigma: Ball,
}

impl StirlingTailIntegrand {
    fn r3(&self, z: &CBall) -> Result<CBall> {
        let p = z.prec();
        let z3 = z.mul(z).mul(z).scale(&Ball::from_i64(p, 360));
        Ok(log_gamma_c(z)?.sub(&stirling_a_c(z)?).add(&z3.recip()?))
    }
}

impl crate::quad::Integrand for StirlingTailIntegrand {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        let z = CBall::new(self.sigma.with_prec(t.prec()), t.clone());
        Ok(self.r3(&z)?.im.neg())
    }
    fn bound_modulus(&self, c: &Ball, r: &Ball, theta: &Ball) -> Result<Ball> {
        let tau = crate::quad::circle_point(c, r, theta);
        // z = sigma + i*tau
        let z = CBall::new(self.sigma.with_prec(c.prec()).sub(&tau.im), tau.re);
        Ok(self.r3(&z)?.abs())
    }
    fn disk_analytic(&self, _c: &Ball, r: &Ball) -> Result<()> {
        // Singularities live on Re z <= 0, i.e. |Im tau| >= sigma.
        if r.certainly_lt(&self.sigma) {
            Ok(())
        } else {
            Err(Error::DomainStraddle {
                op: "stirling_tail",
                detail: "disk reaches the branch line re(z) <= 0".into(),
            })
        }
    }
}

/// Numeric evaluation of the vertical-line integral behind
/// [`stirling_constants`], via certified quadrature: the independent
/// route used to cross-check the closed forms.
///
/// Splits `R(z) = −1/(360z³) + R₃(z)`, integrates the first part in
/// closed form, the second numerically on `[0, H]`, and bounds the tail
/// with the self-derived estimate `|R₃(σ+it)| ≤ |B₆|/(5t⁵)`.
pub fn stirling_constant_via_integral(which: StirlingConstant, prec: u32) -> Result<Ball> {
    let p = prec;
    let (num, den) = match which {
        StirlingConstant::CHalf => (1i64, 2i64),
        StirlingConstant::COne => (1, 1),
    };
    let sigma = Ball::from_ratio(p, num, den);

    // Re int_sigma^{sigma+i inf} -dz/(360 z^3) = -1/(720 sigma^2)
    let closed = sigma.sqr().mul_i64(720).recip()?.neg();

    // width < sigma keeps every quadrature disk inside Re z > 0
    let width = 0.75 * num as f64 / den as f64;
    let h_max = 24.0;
    let quad = crate::quad::Quadrature::new(60, p);
    let f = StirlingTailIntegrand {
        sigma: sigma.clone(),
    };
    let mut total = closed;
    let mut t0 = 0.0;
    while t0 < h_max {
        let t1 = (t0 + width).min(h_max);
        let seg = quad.integrate(
            &f,
            &Ball::from_f64(p, t0),
            &Ball::from_f64(p, t1),
            64,
        )?;
        // C = ... - int Im R3 dt, and eval already returns -Im R3
        total = total.add(&seg);
        t0 = t1;
    }

    // tail: |int_H^inf Im R3 dt| <= |B_6|/(20 H^4)
    let tail = upper_f64(
        &em::bernoulli(p, 3)
            .abs()
            .div(&Ball::from_f64(p, h_max).pow_i(4)?.mul_i64(20))?,
    );
    Ok(total.widen(tail))
}

// ---------------------------------------------------------------------
// sine integral
// ---------------------------------------------------------------------

/// Enclosure of the sine integral `Si(x) = ∫₀ˣ sin(y)/y dy`.
///
/// Negative inputs are handled by oddness. The ball is reduced to its
/// midpoint and re-widened by its radius (|Si′| ≤ 1 everywhere), so wide
/// inputs stay cheap. Midpoints below `max(96, 3·prec/4)` use the Taylor
/// series with enough guard precision to absorb the alternating
/// cancellation; larger ones use repeated integration by parts with the
/// first-omitted-term remainder.
pub fn sine_integral(x: &Ball, prec: u32) -> Result<Ball> {
    if !x.is_finite() {
        return Err(Error::NonFinite { op: "sine_integral" });
    }
    let rad = x.rad_f64();
    let mid = x.mid().clone();
    let neg = mid.is_sign_negative();
    let m = mid.abs();
    let v = si_point(&m, prec)?;
    let v = if neg { v.neg() } else { v };
    // |Si'(t)| = |sinc t| <= 1
    Ok(v.widen(rad).with_prec(prec))
}

fn si_point(m: &Float, prec: u32) -> Result<Ball> {
    let xf = m.to_f64_round(Round::Up);
    let threshold = 96f64.max(0.75 * prec as f64);
    if xf < threshold {
        si_series(m, prec, xf)
    } else {
        si_byparts(m, prec)
    }
}

/// Taylor route: `Si(x) = Σ (−1)^k x^{2k+1} / ((2k+1)(2k+1)!)`.
fn si_series(m: &Float, prec: u32, xf: f64) -> Result<Ball> {
    // Alternating terms reach ~e^x before cancelling down to O(1).
    let guard = (1.45 * xf).ceil() as u32 + 48;
    let p = prec + guard;
    let x = Ball::from_float(Float::with_val(p, m));
    let x2 = x.sqr();
    let mut sum = x.clone();
    let mut term = x;
    let target = Float::with_val(32, Float::u_exp(1, -(prec as i32) - 24));
    for k in 1..100_000i64 {
        term = term
            .mul(&x2)
            .mul_i64(-(2 * k - 1))
            .div_i64(2 * k)
            .div_i64((2 * k + 1) * (2 * k + 1));
        sum = sum.add(&term);
        let t_abs = term.abs().upper();
        let decreasing = x2.upper() < Float::with_val(p, (2 * k + 2) * (2 * k + 3));
        if decreasing && t_abs < target {
            // alternating once decreasing: remainder <= first omitted term
            return Ok(sum.widen(t_abs.to_f64_round(Round::Up)).with_prec(prec));
        }
    }
    Err(Error::Inconclusive("sine integral series stalled".into()))
}

/// Integration-by-parts route:
/// `∫ₓ^∞ sin t/t^j = cos x/x^j − j ∫ₓ^∞ cos t/t^{j+1}` and
/// `∫ₓ^∞ cos t/t^j = −sin x/x^j + j ∫ₓ^∞ sin t/t^{j+1}`, with
/// `|∫ₓ^∞ {sin,cos}(t)/t^j dt| ≤ 1/((j−1) x^{j−1})`.
fn si_byparts(m: &Float, prec: u32) -> Result<Ball> {
    let p = prec + 64;
    let x = Ball::from_float(Float::with_val(p, m));
    let sinx = x.sin();
    let cosx = x.cos();
    let r1 = x.recip()?;

    let mut res = Ball::zero(p);
    let mut c = Ball::one(p);
    let mut pj = r1.clone(); // x^{-j} for the current j
    let mut j: i64 = 1;
    let mut is_sin = true;
    let target = Float::with_val(32, Float::u_exp(1, -(prec as i32) - 16));
    let mut prev_bound = Float::with_val(32, f64::INFINITY);
    loop {
        if j >= 2 {
            // remaining = c * int f/t^j, |remaining| <= |c|/((j-1) x^{j-1})
            let bound = c
                .abs()
                .mul(&pj.mul(&x)) // x^{-(j-1)}
                .div_i64(j - 1)
                .upper();
            if bound < target || bound > prev_bound {
                return Ok(crate::rigor::pi(p)
                    .mul_2exp(-1)
                    .sub(&res)
                    .widen(bound.to_f64_round(Round::Up))
                    .with_prec(prec));
            }
            prev_bound = bound;
        }
        if is_sin {
            res = res.add(&c.mul(&cosx).mul(&pj));
            c = c.neg().mul_i64(j);
        } else {
            res = res.sub(&c.mul(&sinx).mul(&pj));
            c = c.mul_i64(j);
        }
        pj = pj.mul(&r1);
        j += 1;
        is_sin = !is_sin;
        if j > 100_000 {
            return Err(Error::Inconclusive("sine integral asymptote stalled".into()));
        }
    }
}

// ---------------------------------------------------------------------
// series enclosures
// ---------------------------------------------------------------------

/// Which small-argument expansion [`series_enclosure`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sinh(t)/t = Σ t^{2n}/(2n+1)!` (value 1 at `t = 0`).
    SinhOverT,
    /// `(cosh t − 1)/t² = Σ t^{2n}/(2n+2)!` (value 1/2 at `t = 0`).
    CoshM1OverT2,
}

/// A truncation order for one of the two hyperbolic series.
#[derive(Clone, Copy, Debug)]
pub struct SeriesTail {
    /// Which series.
    pub kind: SeriesKind,
    /// Partial sum runs over `n = 0..=n`.
    pub n: u32,
}

/// Default truncation order: tail below `1e−20` on every `|t| ≤ 3.7`
/// argument the trace computations use.
pub const DEFAULT_SERIES_ORDER: u32 = 8;

impl SeriesTail {
    fn denominators(&self, p: u32) -> (Vec<Ball>, i64, i64) {
        // per-term denominators (2n+1)! resp. (2n+2)!, the first omitted
        // factorial, and the geometric-ratio denominator (2N+4)(2N+5)
        // resp. (2N+5)(2N+6).
        let n = self.n as i64;
        let mut dens = Vec::with_capacity(self.n as usize + 2);
        let mut f = match self.kind {
            SeriesKind::SinhOverT => Ball::one(p),
            SeriesKind::CoshM1OverT2 => Ball::from_i64(p, 2),
        };
        dens.push(f.clone());
        for k in 1..=(n + 1) {
            f = match self.kind {
                SeriesKind::SinhOverT => f.mul_i64(2 * k).mul_i64(2 * k + 1),
                SeriesKind::CoshM1OverT2 => f.mul_i64(2 * k + 1).mul_i64(2 * k + 2),
            };
            dens.push(f.clone());
        }
        let ratio_den = match self.kind {
            SeriesKind::SinhOverT => (2 * n + 4) * (2 * n + 5),
            SeriesKind::CoshM1OverT2 => (2 * n + 5) * (2 * n + 6),
        };
        (dens, ratio_den, n)
    }
}

/// Partial sum plus certified geometric tail for the two hyperbolic
/// series. Errors with `OutOfDomain` when `|t|²` is not certainly below
/// the geometric-ratio denominator.
pub fn series_enclosure(spec: &SeriesTail, t: &Ball, prec: u32) -> Result<Ball> {
    let p = prec;
    let t2 = t.with_prec(p).sqr();
    let (dens, ratio_den, _) = spec.denominators(p);
    if !t2.certainly_lt(&Ball::from_i64(p, ratio_den)) {
        return Err(Error::OutOfDomain {
            op: "series_enclosure",
            detail: format!("|t|^2 = {t2} not below {ratio_den}"),
        });
    }
    let mut head = Ball::zero(p);
    let mut pw = Ball::one(p);
    for den in dens.iter().take(spec.n as usize + 1) {
        head = head.add(&pw.div(den)?);
        pw = pw.mul(&t2);
    }
    // tail <= t^{2(N+1)}/first_omitted_factorial * 1/(1 - t^2/ratio_den)
    let rho = t2.div_i64(ratio_den);
    let geom = Ball::one(p).sub(&rho).recip()?;
    let tail = pw.div(dens.last().expect("built above"))?.mul(&geom);
    Ok(head.widen(upper_f64(&tail.abs())))
}

/// Disk variant of [`series_enclosure`]: same head evaluated on a complex
/// ball, tail majorized through `|z|` (all coefficients positive).
pub(crate) fn series_enclosure_disk(spec: &SeriesTail, z: &CBall) -> Result<CBall> {
    let p = z.prec();
    let az2 = z.abs_sq();
    let (dens, ratio_den, _) = spec.denominators(p);
    if !az2.certainly_lt(&Ball::from_i64(p, ratio_den)) {
        return Err(Error::OutOfDomain {
            op: "series_enclosure_disk",
            detail: format!("|z|^2 = {az2} not below {ratio_den}"),
        });
    }
    let z2 = z.mul(z);
    let coeffs: Vec<Ball> = dens
        .iter()
        .take(spec.n as usize + 1)
        .map(|d| Ball::one(p).div(d).expect("factorial > 0"))
        .collect();
    let head = z2.horner(&coeffs);
    let rho = az2.div_i64(ratio_den);
    let geom = Ball::one(p).sub(&rho).recip()?;
    let tail = upper_f64(
        &az2.pow_i(spec.n as i64 + 1)?
            .div(dens.last().expect("built above"))?
            .mul(&geom),
    );
    Ok(CBall::new(head.re.widen(tail), head.im.widen(tail)))
}

// ---------------------------------------------------------------------
// sinc
// ---------------------------------------------------------------------

/// `sinc(x) = sin(x)/x` with `sinc(0) = 1`, total on all real balls.
pub(crate) fn sinc_ball(x: &Ball) -> Ball {
    let p = x.prec();
    if !x.is_finite() {
        return Ball::from_endpoints(
            Float::with_val_round(p, -0.2173, Round::Down).0,
            Float::with_val(p, 1),
        );
    }
    if !x.contains_zero() {
        return x.sin().div(x).expect("nonzero by check");
    }
    let w = x.abs().upper();
    if w.is_zero() {
        return Ball::one(p);
    }
    if w <= 1 {
        // even, decreasing on [0, pi]: the range over [-w, w] is [sinc(w), 1]
        let wb = Ball::from_float(w);
        let lo = wb.sin().div(&wb).expect("w > 0").lower();
        return Ball::from_endpoints(lo, Float::with_val(p, 1));
    }
    // global range of sinc is within (-0.2173, 1]
    Ball::from_endpoints(
        Float::with_val_round(p, -0.2173, Round::Down).0,
        Float::with_val(p, 1),
    )
}

/// Complex `sinc(z) = sin(z)/z`, series-based when the enclosure reaches 0.
pub(crate) fn sinc_c(z: &CBall) -> Result<CBall> {
    let p = z.prec();
    if z.abs_sq().certainly_positive() {
        return z.sin().div(z);
    }
    // sin z / z = sum (-1)^k z^{2k} / (2k+1)!; majorize the tail by the
    // sinh series of |z|.
    const K: usize = 12;
    let mut coeffs = Vec::with_capacity(K + 1);
    let mut f = Ball::one(p);
    let mut sign = 1i64;
    coeffs.push(Ball::one(p));
    let mut fac_next = Ball::one(p);
    for k in 1..=K as i64 + 1 {
        f = f.mul_i64(2 * k).mul_i64(2 * k + 1);
        if k <= K as i64 {
            sign = -sign;
            coeffs.push(Ball::from_i64(p, sign).div(&f)?);
        } else {
            fac_next = f.clone();
        }
    }
    let az2 = z.abs_sq();
    let ratio_den = (2 * K as i64 + 2) * (2 * K as i64 + 3);
    if !az2.certainly_lt(&Ball::from_i64(p, ratio_den)) {
        return Err(Error::OutOfDomain {
            op: "sinc_c",
            detail: format!("|z|^2 = {az2} too large for the series"),
        });
    }
    let geom = Ball::one(p).sub(&az2.div_i64(ratio_den)).recip()?;
    let tail = upper_f64(&az2.pow_i(K as i64 + 1)?.div(&fac_next)?.mul(&geom));
    let head = z.mul(z).horner(&coeffs);
    Ok(CBall::new(head.re.widen(tail), head.im.widen(tail)))
}

// ---------------------------------------------------------------------
// erfc / exponential integral
// ---------------------------------------------------------------------

/// Certified complementary error function (monotone decreasing, directed
/// endpoint rounding over the correctly-rounded primitive).
pub(crate) fn erfc_ball(x: &Ball) -> Ball {
    let p = x.prec();
    if !x.is_finite() {
        return Ball::from_endpoints(Float::with_val(p, 0), Float::with_val(p, 2));
    }
    let mut lo = x.upper();
    lo.erfc_round(Round::Down);
    let mut hi = x.lower();
    hi.erfc_round(Round::Up);
    Ball::from_endpoints(lo, hi)
}

/// Certified exponential integral `E₁(x) = ∫ₓ^∞ e^{−t}/t dt`, for
/// certainly-positive `x` (monotone decreasing).
pub(crate) fn e1_ball(x: &Ball) -> Result<Ball> {
    let p = x.prec();
    if !x.is_finite() {
        return Err(Error::NonFinite { op: "e1" });
    }
    if !x.certainly_positive() {
        return Err(Error::DomainStraddle {
            op: "e1",
            detail: format!("{x} not strictly positive"),
        });
    }
    // E1(x) = -Ei(-x); Ei at the negated, directed endpoints.
    let mut lo = Float::with_val(p, -x.upper());
    lo.eint_round(Round::Up); // Ei(-x_hi) rounded up -> -E1 lower bound up
    let mut hi = Float::with_val(p, -x.lower());
    hi.eint_round(Round::Down);
    let e1_lo = -lo;
    let e1_hi = -hi;
    let b = Ball::from_endpoints(e1_lo, e1_hi);
    b.check_finite("e1")?;
    Ok(b)
}
