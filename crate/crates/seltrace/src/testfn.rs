//! The even test-function families driving the spectral computations.
//!
//! Two families live here:
//!
//! * the compactly supported window pair [`beta_hat`]/[`beta_eval`] and the
//!   counting-kernel pair [`h2_hat`]/[`h2_eval`] built from it, used by the
//!   trace-formula evaluation; and
//! * the band-limited majorant machinery: the mollified transform
//!   [`varphi_hat`], the majorant-gap kernel [`f_eval`] and its one-sided
//!   primitive [`v_eval`], the smooth spectral weight [`k_eval`], and the
//!   closed-form tail bounds [`large_t_bound_terms`] used by the
//!   large-height certification.
//!
//! All evaluators return certified balls. Piecewise definitions evaluate
//! every piece a ball overlaps and return the hull, so containment never
//! depends on branch guessing. Functions with removable singularities
//! (the counting kernel at 0, the majorant bracket at 0) carry dedicated
//! series routes with explicit, documented remainder bounds.

use crate::quad::{self, Integrand, Quadrature};
use crate::rigor::cball::CBall;
use crate::rigor::{self, Ball};
use crate::specfun;
use crate::{Error, Result};
use rug::float::Round;
use rug::Float;

/// Upper endpoint of a ball as an `f64`, rounded up.
fn upper_f64(b: &Ball) -> f64 {
    b.upper().to_f64_round(Round::Up)
}

/// Lower endpoint of a ball as an `f64`, rounded down.
fn lower_f64(b: &Ball) -> f64 {
    b.lower().to_f64_round(Round::Down)
}

/// Hull-accumulate piecewise-branch values.
fn hull_in(acc: Option<Ball>, v: Ball) -> Option<Ball> {
    Some(match acc {
        Some(a) => a.hull(&v),
        None => v,
    })
}

/// Evaluate a polynomial with ball coefficients (ascending powers) at `t`.
fn horner_real(coeffs: &[Ball], t: &Ball) -> Ball {
    let p = t.prec();
    let mut acc = Ball::zero(p);
    for c in coeffs.iter().rev() {
        acc = acc.mul(t).add(c);
    }
    acc
}

/// n! as an exact ball (exact while the integer fits the precision).
fn factorial_ball(p: u32, n: i64) -> Ball {
    let mut f = Ball::one(p);
    for i in 2..=n {
        f = f.mul_i64(i);
    }
    f
}

// ---------------------------------------------------------------------------
// The compactly supported window family β̂ / β and its counting kernel h₂.
// ---------------------------------------------------------------------------

/// Parameters of the compactly supported window family.
///
/// The transform is `beta_hat(r) = c·sinc(πar)⁸·(b² − r²)`; its inverse
/// transform β is an even piecewise polynomial supported in `[−4a, 4a]`,
/// and `c` normalizes it so that `β(0) = 1`.
#[derive(Debug, Clone)]
pub struct BetaParams {
    a: Ball,
    b: Ball,
    c: Ball,
    /// `1/(4832π²a⁷b² − 1680a⁵)`, the common scale of the β polynomials.
    kcoef: Ball,
}

/// Sign of the β polynomial on piece `i` (the piece on `[2a, 3a]` enters
/// negated).
const BETA_SIGN: [i64; 4] = [1, 1, -1, 1];

/// Integer coefficient tables of the four β piece polynomials, ascending
/// powers of `t`. Coefficient `j` of piece `i` is
/// `sign_i·kcoef·(π²b²·BETA_P[i][j]·a^{7−j} + BETA_Q[i][j]·a^{5−j})`
/// (`BETA_Q` is zero-padded to degree 7).
const BETA_P: [[i64; 8]; 4] = [
    [4832, 0, -3360, 0, 1120, 0, -280, 70],
    [4944, -784, -1008, -3920, 5040, -2352, 504, -42],
    [2224, -24304, 38640, -27440, 10640, -2352, 280, -14],
    [32768, -57344, 43008, -17920, 4480, -672, 56, -2],
];

/// Companion table to [`BETA_P`]; see there.
const BETA_Q: [[i64; 6]; 4] = [
    [-1680, 0, 3360, 0, -2100, 735],
    [-504, -5880, 15120, -11760, 3780, -441],
    [19320, -41160, 31920, -11760, 2100, -147],
    [21504, -26880, 13440, -3360, 420, -21],
];

/// Coefficient tables of the polynomial to which `(1 − β(t))/(2π²t²)`
/// simplifies on `[0, a]` (finite at `t = 0`): coefficient `j` is
/// `kcoef·(π²b²·H2HAT0_P[j]·a^{5−j} + H2HAT0_Q[j]·a^{3−j})/(2π²)`
/// (`H2HAT0_Q` zero-padded to degree 5).
const H2HAT0_P: [i64; 6] = [3360, 0, -1120, 0, 280, -70];

/// Companion table to [`H2HAT0_P`]; see there.
const H2HAT0_Q: [i64; 4] = [-3360, 0, 2100, -735];

impl BetaParams {
    /// Build the parameter set, computing the normalization `c` from the
    /// requirement `β(0) = 1`.
    ///
    /// Errors with [`Error::OutOfDomain`] unless `a > 0`, `b > 0` and the
    /// normalizing denominator `4832π²a⁷b² − 1680a⁵` is certainly
    /// positive (otherwise `β(0) = 1` is unachievable for this window
    /// shape).
    pub fn new(a: &Ball, b: &Ball) -> Result<Self> {
        let p = a.prec().max(b.prec());
        let a = a.with_prec(p);
        let b = b.with_prec(p);
        if !a.certainly_positive() || !b.certainly_positive() {
            return Err(Error::OutOfDomain {
                op: "BetaParams::new",
                detail: format!("requires a > 0 and b > 0, got a = {a}, b = {b}"),
            });
        }
        let pi2 = rigor::pi(p).sqr();
        let den = pi2
            .mul(&a.pow_i(7)?)
            .mul(&b.sqr())
            .mul_i64(4832)
            .sub(&a.pow_i(5)?.mul_i64(1680));
        if !den.certainly_positive() {
            return Err(Error::OutOfDomain {
                op: "BetaParams::new",
                detail: format!(
                    "normalizing denominator 4832π²a⁷b² − 1680a⁵ not certainly \
                     positive at a = {a}, b = {b}"
                ),
            });
        }
        let kcoef = den.recip()?;
        let c = pi2.mul(&a.pow_i(8)?).mul_i64(10080).mul(&kcoef);
        Ok(BetaParams { a, b, c, kcoef })
    }

    /// Support parameter: β vanishes outside `[−4a, 4a]`.
    pub fn a(&self) -> &Ball {
        &self.a
    }

    /// Spectral parameter `b` of the transform factor `b² − r²`.
    pub fn b(&self) -> &Ball {
        &self.b
    }

    /// The computed normalization constant with `β(0) = 1`.
    pub fn c(&self) -> &Ball {
        &self.c
    }

    fn prec(&self) -> u32 {
        self.a.prec()
    }

    /// Merged ascending-power ball coefficients of the β polynomial on
    /// piece `i` (valid for `t ∈ [i·a, (i+1)·a]`).
    pub(crate) fn beta_coeffs(&self, piece: usize) -> Result<Vec<Ball>> {
        let p = self.prec();
        let pi2b2 = rigor::pi(p).sqr().mul(&self.b.sqr());
        let mut out = Vec::with_capacity(8);
        for j in 0..8 {
            let mut cj = pi2b2
                .mul(&self.a.pow_i(7 - j as i64)?)
                .mul_i64(BETA_P[piece][j]);
            if j < 6 {
                cj = cj.add(&self.a.pow_i(5 - j as i64)?.mul_i64(BETA_Q[piece][j]));
            }
            out.push(cj.mul(&self.kcoef).mul_i64(BETA_SIGN[piece]));
        }
        Ok(out)
    }

    /// Merged ascending-power ball coefficients of the counting kernel on
    /// `[0, a]` (the polynomial form of `(1 − β)/(2π²t²)`, finite at 0).
    pub(crate) fn h2hat0_coeffs(&self) -> Result<Vec<Ball>> {
        let p = self.prec();
        let pi2 = rigor::pi(p).sqr();
        let pi2b2 = pi2.mul(&self.b.sqr());
        let scale = self.kcoef.div(&pi2.mul_2exp(1))?;
        let mut out = Vec::with_capacity(6);
        for j in 0..6 {
            let mut cj = pi2b2
                .mul(&self.a.pow_i(5 - j as i64)?)
                .mul_i64(H2HAT0_P[j]);
            if j < 4 {
                cj = cj.add(&self.a.pow_i(3 - j as i64)?.mul_i64(H2HAT0_Q[j]));
            }
            out.push(cj.mul(&scale));
        }
        Ok(out)
    }
}

/// The window transform `beta_hat(r) = c·sinc(πar)⁸·(b² − r²)`.
pub fn beta_hat(r: &Ball, bp: &BetaParams) -> Result<Ball> {
    let p = r.prec().max(bp.prec());
    r.check_finite("beta_hat")?;
    let x = rigor::pi(p).mul(&bp.a).mul(r);
    let s8 = specfun::sinc_ball(&x).sqr().sqr().sqr();
    Ok(bp.c.mul(&s8).mul(&bp.b.sqr().sub(&r.sqr())))
}

/// The window itself: four degree-7 polynomials on `[0, a]`, `[a, 2a]`,
/// `[2a, 3a]`, `[3a, 4a]` (even continuation for `t < 0`), exactly zero
/// beyond `4a`. Input balls straddling a breakpoint get the hull of every
/// overlapped piece.
pub fn beta_eval(t: &Ball, bp: &BetaParams) -> Result<Ball> {
    let p = t.prec().max(bp.prec());
    let m = t.abs().with_prec(p);
    m.check_finite("beta_eval")?;
    let a = bp.a.with_prec(p);
    let four_a = a.mul_i64(4);
    if four_a.certainly_le(&m) {
        return Ok(Ball::zero(p));
    }
    let mut out: Option<Ball> = None;
    for piece in 0..4 {
        let lo = a.mul_i64(piece as i64);
        let hi = a.mul_i64(piece as i64 + 1);
        if m.certainly_gt(&hi) || m.certainly_lt(&lo) {
            continue;
        }
        let mc = m.max(&lo).min(&hi);
        out = hull_in(out, horner_real(&bp.beta_coeffs(piece)?, &mc));
    }
    let mut val = out.ok_or_else(|| {
        Error::Invariant(format!("beta_eval: no piece overlaps |t| = {m}"))
    })?;
    if !m.certainly_lt(&four_a) {
        val = val.hull(&Ball::zero(p));
    }
    Ok(val)
}

/// The counting-kernel transform `(1 − β(t))/(2π²t²)`, with the finite
/// polynomial form on `[0, a]` (the quotient vanishes to second order at
/// 0) and `1/(2π²t²)` beyond the support of β.
pub fn h2_hat(t: &Ball, bp: &BetaParams) -> Result<Ball> {
    let p = t.prec().max(bp.prec());
    let m = t.abs().with_prec(p);
    m.check_finite("h2_hat")?;
    let a = bp.a.with_prec(p);
    let four_a = a.mul_i64(4);
    let two_pi2 = rigor::pi(p).sqr().mul_2exp(1);
    if four_a.certainly_le(&m) {
        return two_pi2.recip()?.div(&m)?.div(&m);
    }
    let mut out: Option<Ball> = None;
    for piece in 0..4 {
        let lo = a.mul_i64(piece as i64);
        let hi = a.mul_i64(piece as i64 + 1);
        if m.certainly_gt(&hi) || m.certainly_lt(&lo) {
            continue;
        }
        let mc = m.max(&lo).min(&hi);
        let v = if piece == 0 {
            horner_real(&bp.h2hat0_coeffs()?, &mc)
        } else {
            // On pieces ≥ 1 the clipped ball is certainly positive;
            // sequential division as the clip can be relatively wide.
            Ball::one(p)
                .sub(&horner_real(&bp.beta_coeffs(piece)?, &mc))
                .div(&two_pi2)?
                .div(&mc)?
                .div(&mc)?
        };
        out = hull_in(out, v);
    }
    let mut val = out.ok_or_else(|| {
        Error::Invariant(format!("h2_hat: no piece overlaps |t| = {m}"))
    })?;
    if !m.certainly_lt(&four_a) {
        let mc = m.max(&four_a);
        val = val.hull(&two_pi2.recip()?.div(&mc)?.div(&mc)?);
    }
    Ok(val)
}

/// One β piece of the counting-kernel transform times `cos(2πrt)`, with
/// polynomial complex continuation for the quadrature error bound.
struct H2HatCosPiece {
    /// Merged ascending-power coefficients of the piece polynomial.
    coeffs: Vec<Ball>,
    /// Piece index 0..4; piece 0 is the finite-at-zero polynomial form.
    piece: usize,
    two_pi2: Ball,
    two_pi_r: Ball,
}

impl H2HatCosPiece {
    fn value_c(&self, z: &CBall) -> Result<CBall> {
        let val = z.horner(&self.coeffs);
        if self.piece == 0 {
            Ok(val)
        } else {
            let one = CBall::from_real(Ball::one(z.prec()));
            one.sub(&val).div(&z.mul(z).scale(&self.two_pi2))
        }
    }
}

impl Integrand for H2HatCosPiece {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        let h = if self.piece == 0 {
            horner_real(&self.coeffs, t)
        } else {
            Ball::one(t.prec())
                .sub(&horner_real(&self.coeffs, t))
                .div(&self.two_pi2.mul(&t.sqr()))?
        };
        Ok(h.mul(&self.two_pi_r.mul(t).cos()))
    }

    fn bound_modulus(&self, center: &Ball, radius: &Ball, theta: &Ball) -> Result<Ball> {
        let z = quad::circle_point(center, radius, theta);
        let h = self.value_c(&z)?;
        let c = z.scale(&self.two_pi_r).cos();
        Ok(h.abs().mul(&c.abs()))
    }

    fn disk_analytic(&self, center: &Ball, radius: &Ball) -> Result<()> {
        if self.piece == 0 {
            return Ok(()); // polynomial times cosine: entire
        }
        // The only finite-plane singularity of this piece is z = 0.
        if center.abs().sub(radius).certainly_positive() {
            Ok(())
        } else {
            Err(Error::DomainStraddle {
                op: "h2_eval",
                detail: format!(
                    "quadrature disk about {center} with radius {radius} reaches \
                     the origin"
                ),
            })
        }
    }
}

/// Human-auditable error budget attached to a composite enclosure.
#[derive(Debug, Clone)]
pub struct TestFnAudit {
    /// Which top-level quantity this budget belongs to.
    pub term: &'static str,
    /// The final enclosure the budget explains.
    pub enclosure: Ball,
    /// `(source label, upper estimate of that source's radius share)`.
    pub entries: Vec<(&'static str, f64)>,
}

impl TestFnAudit {
    /// The budget explains the enclosure: the final radius never exceeds
    /// the sum of the recorded contributions by more than accumulated
    /// midpoint-rounding slack.
    pub fn consistent(&self) -> bool {
        let total: f64 = self.entries.iter().map(|e| e.1).sum();
        self.enclosure.rad_f64()
            <= total * (1.0 + 1e-9) + self.enclosure.mid_f64().abs() * 1e-14 + 1e-300
    }
}

/// The counting kernel on the spectral side:
/// `h₂(r) = 2∫₀^{4a} ĥ₂(t)·cos(2πrt) dt` over the four β pieces plus the
/// closed tail `(2r/π)(Si(8πar) − π/2) + cos(8πar)/(4π²a)`.
///
/// Requires `r > 0` certainly; `n` is the node count per quadrature
/// segment.
pub fn h2_eval(r: &Ball, bp: &BetaParams, n: u32) -> Result<Ball> {
    Ok(h2_eval_audited(r, bp, n)?.0)
}

/// [`h2_eval`] with its error budget.
pub fn h2_eval_audited(r: &Ball, bp: &BetaParams, n: u32) -> Result<(Ball, TestFnAudit)> {
    if !r.certainly_positive() {
        return Err(Error::OutOfDomain {
            op: "h2_eval",
            detail: format!("requires r > 0, got {r}"),
        });
    }
    let p = r.prec().max(bp.prec()).max(64);
    let r = r.with_prec(p);
    let pi = rigor::pi(p);
    let quadr = Quadrature::new(n, p);
    let a = bp.a.with_prec(p);
    let a_up = upper_f64(&a);
    let r_up = upper_f64(&r);
    // Segment length: keep the quadrature disk (radius = segment width)
    // clear of the pole at 0 on pieces ≥ 1, and keep |cos(2πrz)| on the
    // disk below e^{4π}.
    let seg_target = (a_up / 2.0).min(1.0 / r_up.max(1.0));
    let segs_per_piece = (a_up / seg_target).ceil().max(1.0) as i64;
    let two_pi2 = pi.sqr().mul_2exp(1);
    let two_pi_r = pi.mul(&r).mul_2exp(1);
    let mut total = Ball::zero(p);
    for piece in 0..4usize {
        let coeffs = if piece == 0 {
            bp.h2hat0_coeffs()?
        } else {
            bp.beta_coeffs(piece)?
        };
        let f = H2HatCosPiece {
            coeffs,
            piece,
            two_pi2: two_pi2.clone(),
            two_pi_r: two_pi_r.clone(),
        };
        for k in 0..segs_per_piece {
            let lo = a.mul(&Ball::from_ratio(
                p,
                piece as i64 * segs_per_piece + k,
                segs_per_piece,
            ));
            let hi = a.mul(&Ball::from_ratio(
                p,
                piece as i64 * segs_per_piece + k + 1,
                segs_per_piece,
            ));
            total = total.add(&quadr.integrate(&f, &lo, &hi, 12)?);
        }
    }
    total = total.mul_2exp(1);
    let quad_share = total.rad_f64();
    // Closed tail: ∫_{4a}^∞ cos(2πrt)/(2π²t²)·dt, doubled.
    let x = pi.mul(&a).mul(&r).mul_2exp(3);
    let si = specfun::sine_integral(&x, p)?;
    let tail = r
        .mul_2exp(1)
        .div(&pi)?
        .mul(&si.sub(&pi.mul_2exp(-1)))
        .add(&x.cos().div(&pi.sqr().mul(&a).mul_2exp(2))?);
    let tail_share = tail.rad_f64();
    let out = total.add(&tail);
    let audit = TestFnAudit {
        term: "h2_eval",
        enclosure: out.clone(),
        entries: vec![("quadrature", quad_share), ("closed-form tail", tail_share)],
    };
    Ok((out, audit))
}

// ---------------------------------------------------------------------------
// The band-limited majorant family: φ̂₀, η̂₀, φ̂, V, F, k.
// ---------------------------------------------------------------------------

/// Parameters of the mollified majorant family: the band limit `X` and
/// the mollifier width `delta`.
#[derive(Debug, Clone)]
pub struct PhiParams {
    x: Ball,
    delta: Ball,
}

impl PhiParams {
    /// Requires `X > 0`, `δ > 0` and the shape condition
    /// `X ≥ δ·√(0.35·(1 + 4/π²))` under which the majorant construction
    /// is valid.
    pub fn new(x: &Ball, delta: &Ball) -> Result<Self> {
        let p = x.prec().max(delta.prec());
        let x = x.with_prec(p);
        let delta = delta.with_prec(p);
        if !x.certainly_positive() || !delta.certainly_positive() {
            return Err(Error::OutOfDomain {
                op: "PhiParams::new",
                detail: format!("requires X > 0 and δ > 0, got X = {x}, δ = {delta}"),
            });
        }
        let pi2 = rigor::pi(p).sqr();
        let shape = Ball::from_ratio(p, 7, 20)
            .mul(&Ball::one(p).add(&Ball::from_i64(p, 4).div(&pi2)?))
            .sqrt()?
            .mul(&delta);
        if !shape.certainly_le(&x) {
            return Err(Error::OutOfDomain {
                op: "PhiParams::new",
                detail: format!(
                    "band limit X = {x} below the shape threshold \
                     δ·√(0.35(1+4/π²)) = {shape}"
                ),
            });
        }
        Ok(PhiParams { x, delta })
    }

    /// Band limit `X`.
    pub fn x(&self) -> &Ball {
        &self.x
    }

    /// Mollifier width `δ`.
    pub fn delta(&self) -> &Ball {
        &self.delta
    }

    pub(crate) fn prec(&self) -> u32 {
        self.x.prec()
    }

    /// The fixed parameter pair `(X, δ) = (2.55, 0.1)` used by the
    /// desk-height bound.
    pub fn medium(prec: u32) -> PhiParams {
        PhiParams::new(
            &Ball::from_ratio(prec, 51, 20),
            &Ball::from_ratio(prec, 1, 10),
        )
        .expect("fixed parameters satisfy the shape condition")
    }

    /// The height-dependent pair `X = (1/π)·log(t/5)`, `δ = 0.842` used by
    /// the large-height bound. Errors if the resulting `X` violates the
    /// shape condition (i.e. if `t` is too small).
    pub fn large_height(t: &Ball, prec: u32) -> Result<PhiParams> {
        let p = prec.max(t.prec());
        let x = t.div_i64(5).ln()?.div(&rigor::pi(p))?;
        PhiParams::new(&x, &Ball::from_ratio(p, 421, 500))
    }
}

/// η₀ switches from the closed `v⁻²` form to its Taylor form below this.
const ETA0_TAYLOR_CUT: f64 = 0.001953125; // 2⁻⁹

/// The mollifier transform η̂₀: supported in `[−1, 1]`, where it equals
/// `A·[(2π²/3)(1−|u|)³ + 4(1−|u|)(1−cos πu) − (8/π)sin(π|u|)]` with
/// `A = π²/(π²+4)`. Near the support edge the displayed form cancels, so
/// `|u| ∈ [3/4, 1]` is evaluated by the edge series (whose `s³` term
/// cancels identically).
pub(crate) fn eta0_hat(u: &Ball) -> Result<Ball> {
    let p = u.prec();
    let w = u.abs();
    w.check_finite("eta0_hat")?;
    let one = Ball::one(p);
    if one.certainly_le(&w) {
        return Ok(Ball::zero(p));
    }
    let thresh = Ball::from_ratio(p, 3, 4);
    let pi = rigor::pi(p);
    let pi2 = pi.sqr();
    let mut out: Option<Ball> = None;
    if lower_f64(&w) < 0.75 {
        let wc = w.min(&thresh);
        let afac = pi2.div(&pi2.add_i64(4))?;
        let omw = one.sub(&wc);
        let t1 = pi2.mul_2exp(1).div_i64(3).mul(&omw.pow_i(3)?);
        let t2 = omw.mul(&one.sub(&pi.mul(&wc).cos())).mul_2exp(2);
        let t3 = pi.recip()?.mul_2exp(3).mul(&pi.mul(&wc).sin());
        out = hull_in(out, afac.mul(&t1.add(&t2).sub(&t3)));
    }
    if upper_f64(&w) > 0.75 {
        let wc = w.max(&thresh).min(&one);
        let s = one.sub(&wc).clamp_nonnegative();
        out = hull_in(out, eta0_hat_edge(&s)?);
    }
    Ok(out.expect("regions cover [0, 1)"))
}

/// `η̂₀(1 − s)` for `s ∈ [0, 1/4]`: `A·s⁵·h(s²)` with `h` from
/// [`eta0_hat_edge_factor`].
fn eta0_hat_edge(s: &Ball) -> Result<Ball> {
    let p = s.prec();
    let pi2 = rigor::pi(p).sqr();
    let afac = pi2.div(&pi2.add_i64(4))?;
    Ok(afac.mul(&s.pow_i(5)?).mul(&eta0_hat_edge_factor(s)?))
}

/// The positive edge-series factor `h(y)` with
/// `η̂₀(1 − s) = A·s⁵·h(s²)`:
/// `h(y) = Σ_{j≥0} (−1)^j·4π^{2j+4}(2j+3)/(2j+5)!·y^j`, `h(0) = π⁴/10`.
///
/// The series alternates with decreasing terms for `y ≤ 1/16` (term ratio
/// `π²y(2j+5)/((2j+3)(2j+6)(2j+7)) < 0.025`), so the truncation error is
/// within the first omitted term. Requires `s ⊂ [0, 1/4]`.
fn eta0_hat_edge_factor(s: &Ball) -> Result<Ball> {
    let p = s.prec();
    if upper_f64(&s.abs()) > 0.2501 {
        return Err(Error::Invariant(format!(
            "eta0_hat edge series called with s = {s} outside [0, 1/4]"
        )));
    }
    let pi = rigor::pi(p);
    let y = s.sqr();
    const J: i64 = 7;
    let mut coeffs = Vec::new();
    for j in 0..=J {
        let c = pi
            .pow_i(2 * j + 4)?
            .mul_i64(4 * (2 * j + 3))
            .div(&factorial_ball(p, 2 * j + 5))?;
        coeffs.push(if j % 2 == 0 { c } else { c.neg() });
    }
    let val = horner_real(&coeffs, &y);
    let tail = pi
        .pow_i(2 * (J + 1) + 4)?
        .mul_i64(4 * (2 * (J + 1) + 3))
        .div(&factorial_ball(p, 2 * (J + 1) + 5))?
        .mul(&Ball::from_f64(p, upper_f64(&y)).pow_i(J + 1)?);
    Ok(val.widen(upper_f64(&tail)))
}

/// The base majorant transform on the unit scale: supported in `[−1, 1]`,
/// where it equals `|u|/sinc(πu) + (1−|u|)cos(πu)/sinc²(πu)`. Near the
/// support edge (`|u| ∈ [7/8, 1]`) the displayed form cancels and the
/// factorized edge series `u²·s·g(s²)/sinc²(πs)` with `s = 1 − |u|` is
/// used instead.
pub(crate) fn varphi_hat0(u: &Ball) -> Result<Ball> {
    let p = u.prec();
    let w = u.abs();
    w.check_finite("varphi_hat0")?;
    let one = Ball::one(p);
    if one.certainly_le(&w) {
        return Ok(Ball::zero(p));
    }
    let thresh = Ball::from_ratio(p, 7, 8);
    let pi = rigor::pi(p);
    let mut out: Option<Ball> = None;
    if lower_f64(&w) < 0.875 {
        let wc = w.min(&thresh);
        let pw = pi.mul(&wc);
        // sinc(πw) ≥ sinc(7π/8) > 0.13 on this range.
        let sc = specfun::sinc_ball(&pw);
        let v = wc
            .div(&sc)?
            .add(&one.sub(&wc).mul(&pw.cos()).div(&sc.sqr())?);
        out = hull_in(out, v);
    }
    if upper_f64(&w) > 0.875 {
        let wc = w.max(&thresh).min(&one);
        let s = one.sub(&wc).clamp_nonnegative();
        let g = varphi_hat0_edge_factor(&s)?;
        // sinc(πs) ≥ sinc(π/8) > 0.97 for s ≤ 1/8.
        let ssc = specfun::sinc_ball(&pi.mul(&s));
        out = hull_in(out, wc.sqr().mul(&s).mul(&g).div(&ssc.sqr())?);
    }
    Ok(out.expect("regions cover [0, 1)"))
}

/// The positive edge-series factor `g(y)` with
/// `φ̂₀(1 − s) = (1−s)²·s·g(s²)/sinc²(πs)`:
/// `g(y) = Σ_{j≥0} (−1)^j·π^{2j+2}(2j+2)/(2j+3)!·y^j`, `g(0) = π²/3`.
///
/// Alternating with decreasing terms for `y ≤ 1/64` (term ratio
/// `π²y/((2j+2)(2j+5)) < 0.016`); truncation error within the first
/// omitted term. Requires `s ⊂ [0, 1/8]`.
fn varphi_hat0_edge_factor(s: &Ball) -> Result<Ball> {
    let p = s.prec();
    if upper_f64(&s.abs()) > 0.1251 {
        return Err(Error::Invariant(format!(
            "varphi_hat0 edge series called with s = {s} outside [0, 1/8]"
        )));
    }
    let pi = rigor::pi(p);
    let y = s.sqr();
    const J: i64 = 7;
    let mut coeffs = Vec::new();
    for j in 0..=J {
        let c = pi
            .pow_i(2 * j + 2)?
            .mul_i64(2 * j + 2)
            .div(&factorial_ball(p, 2 * j + 3))?;
        coeffs.push(if j % 2 == 0 { c } else { c.neg() });
    }
    let val = horner_real(&coeffs, &y);
    let tail = pi
        .pow_i(2 * (J + 1) + 2)?
        .mul_i64(2 * (J + 1) + 2)
        .div(&factorial_ball(p, 2 * (J + 1) + 3))?
        .mul(&Ball::from_f64(p, upper_f64(&y)).pow_i(J + 1)?);
    Ok(val.widen(upper_f64(&tail)))
}

/// The mollified majorant transform
/// `φ̂(t) = φ̂₀(t/X) + (δt²/12X³)·[2η̂₀(t/δ) + η̂₀((t+X)/δ) + η̂₀((t−X)/δ)]`,
/// supported in `[−(X+δ), X+δ]` (exactly zero outside).
pub fn varphi_hat(t: &Ball, pp: &PhiParams) -> Result<Ball> {
    let p = t.prec().max(pp.prec());
    let m = t.abs().with_prec(p);
    m.check_finite("varphi_hat")?;
    let x = pp.x.with_prec(p);
    let d = pp.delta.with_prec(p);
    let edge = x.add(&d);
    if edge.certainly_le(&m) {
        return Ok(Ball::zero(p));
    }
    let base = varphi_hat0(&m.div(&x)?)?;
    let e0 = eta0_hat(&m.div(&d)?)?;
    let ep = eta0_hat(&m.add(&x).div(&d)?)?;
    let em = eta0_hat(&m.sub(&x).div(&d)?)?;
    let corr = d
        .mul(&m.sqr())
        .div(&x.pow_i(3)?.mul_i64(12))?
        .mul(&e0.mul_2exp(1).add(&ep).add(&em));
    Ok(base.add(&corr))
}

/// `S3(y) = 2sinc²(πy) + sinc²(πy + π/2) + sinc²(πy − π/2)`; the squared
/// sinc-triple whose inverse transform underlies the mollifier η₀.
pub(crate) fn s3_ball(y: &Ball) -> Ball {
    let p = y.prec();
    let pi = rigor::pi(p);
    let py = pi.mul(y);
    let hp = pi.mul_2exp(-1);
    let s0 = specfun::sinc_ball(&py).sqr().mul_2exp(1);
    let sp = specfun::sinc_ball(&py.add(&hp)).sqr();
    let sm = specfun::sinc_ball(&py.sub(&hp)).sqr();
    s0.add(&sp).add(&sm)
}

/// Even moments of η̂₀ driving the η₀ Taylor route:
/// `M₀ = A(π²/6 + 2 − 24/π²)`, `M₂ = A(π²/90 + 1/3 − 12/π² + 80/π⁴)`.
fn eta0_moments(p: u32) -> Result<(Ball, Ball)> {
    let pi2 = rigor::pi(p).sqr();
    let afac = pi2.div(&pi2.add_i64(4))?;
    let m0 = afac.mul(
        &pi2.div_i64(6)
            .add_i64(2)
            .sub(&Ball::from_i64(p, 24).div(&pi2)?),
    );
    let m2 = afac.mul(
        &pi2.div_i64(90)
            .add(&Ball::from_ratio(p, 1, 3))
            .sub(&Ball::from_i64(p, 12).div(&pi2)?)
            .add(&Ball::from_i64(p, 80).div(&pi2.sqr())?),
    );
    Ok((m0, m2))
}

/// Taylor route for η₀ near 0: `η₀(v) = 2M₀ − (2πv)²·M₂ + R` with
/// `|R| ≤ 0.21·(2πv)⁴` for `|2πv| ≤ 0.1`.
///
/// Remainder: `η₀(v) = 2Σ_k (−1)^k (2πv)^{2k} M_{2k}/(2k)!`·(2k)!-free
/// moments `M_{2k} = ∫₀¹ t^{2k} η̂₀(t) dt` satisfy `|M_{2k}| ≤ 12.19/5`
/// for `k ≥ 2` (pointwise `|η̂₀| ≤ A(2π²/3 + 8 + 8/π) < 12.19`), so the
/// `k ≥ 2` tail is at most `2·(12.19/5)·(2πv)⁴/4!·1.001 < 0.21·(2πv)⁴`.
/// The same bound holds verbatim for complex `v` with `|v|` in place of
/// `v` (both real and imaginary part of the remainder).
fn eta0_taylor(m: &Ball) -> Result<Ball> {
    let p = m.prec();
    let (m0, m2) = eta0_moments(p)?;
    let tpv = rigor::pi(p).mul_2exp(1).mul(m);
    let val = m0.mul_2exp(1).sub(&tpv.sqr().mul(&m2));
    let rem = 0.21 * upper_f64(&tpv.abs()).powi(4);
    Ok(val.widen(rem))
}

/// Closed form of η₀ away from 0:
/// `η₀(v) = [1 − S3(v)·π²/(2(π²+4))]/v²`. Requires `v` certainly nonzero.
fn eta0_closed(m: &Ball) -> Result<Ball> {
    let p = m.prec();
    let pi2 = rigor::pi(p).sqr();
    let num = Ball::one(p).sub(&s3_ball(m).mul(&pi2).div(&pi2.add_i64(4).mul_2exp(1))?);
    // Sequential division keeps the route total on wide positive balls.
    num.div(m)?.div(m)
}

/// The entire mollifier η₀ on real arguments (even; total).
fn eta0_ball(v: &Ball) -> Result<Ball> {
    let p = v.prec();
    let m = v.abs();
    m.check_finite("eta0")?;
    let cut = Ball::from_f64(p, ETA0_TAYLOR_CUT);
    let mut out: Option<Ball> = None;
    if lower_f64(&m) <= ETA0_TAYLOR_CUT {
        out = hull_in(out, eta0_taylor(&m.min(&cut))?);
    }
    if upper_f64(&m) > ETA0_TAYLOR_CUT {
        out = hull_in(out, eta0_closed(&m.max(&cut.mul_2exp(-1)))?);
    }
    Ok(out.expect("regions cover [0, ∞)"))
}

/// η₀ on complex balls (entire function). The Taylor route is accepted on
/// its full validity range `|2πv| ≤ 0.1` so that quadrature arcs passing
/// near the origin stay on the series side; beyond it the closed form's
/// `1/v²` is safe.
fn eta0_c(v: &CBall) -> Result<CBall> {
    let p = v.prec();
    let modulus = v.abs();
    if upper_f64(&modulus) <= 0.0159 {
        let (m0, m2) = eta0_moments(p)?;
        let tpv = v.scale(&rigor::pi(p).mul_2exp(1));
        let val = CBall::from_real(m0.mul_2exp(1)).sub(&tpv.mul(&tpv).scale(&m2));
        let rem = 0.21 * upper_f64(&tpv.abs()).powi(4);
        Ok(CBall::new(val.re.widen(rem), val.im.widen(rem)))
    } else {
        let pi = rigor::pi(p);
        let pi2 = pi.sqr();
        let hp = pi.mul_2exp(-1);
        let pv = v.scale(&pi);
        let s0 = {
            let s = specfun::sinc_c(&pv)?;
            s.mul(&s).scale(&Ball::from_i64(p, 2))
        };
        let sp = {
            let s = specfun::sinc_c(&CBall::new(pv.re.add(&hp), pv.im.clone()))?;
            s.mul(&s)
        };
        let sm = {
            let s = specfun::sinc_c(&CBall::new(pv.re.sub(&hp), pv.im.clone()))?;
            s.mul(&s)
        };
        let s3 = s0.add(&sp).add(&sm);
        let coef = pi2.div(&pi2.add_i64(4).mul_2exp(1))?;
        let num = CBall::from_real(Ball::one(p)).sub(&s3.scale(&coef));
        num.div(v)?.div(v)
    }
}

/// The square-bracket factor of the majorant at a nonpositive real
/// argument `−m` (`m ≥ 0`):
/// `b(m) = 1 − Xm·ψ′(1/2 + Xm) − δ²·η₀(δm)/(12X²)`.
///
/// For `Xm ≥ 1/2` this is rewritten as
/// `defect(Xm) + S3(δm)·π²/(24(π²+4)X²m²)` where
/// `defect(z) = 1 − zψ′(z+1/2) − 1/(12z²) ∈ [−7/(120z⁴), 0]` — the exact
/// cancellation of the `1/(12X²m²)` parts of the two summands, which
/// keeps the enclosure tight for wide input balls. Below that threshold
/// the direct form is used; its only internal cancellation (inside η₀)
/// is handled by the η₀ Taylor route.
fn bracket_nonneg_arg(m: &Ball, pp: &PhiParams) -> Result<Ball> {
    let p = m.prec().max(pp.prec()).max(64);
    let m = m.with_prec(p);
    let x = pp.x.with_prec(p);
    let d = pp.delta.with_prec(p);
    let z = x.mul(&m);
    let half = Ball::from_ratio(p, 1, 2);
    if half.certainly_le(&z) {
        // Exact-cancellation display. Both defect routes enclose the same
        // quantity; take whichever is narrower (the numeric route wins on
        // narrow balls, the envelope on wide ones).
        let d_env = specfun::trigamma_defect_envelope_real(&z)?;
        let defect = match specfun::trigamma_bounds(&z, &Ball::zero(p)) {
            Ok(d_num) if d_num.rad_f64() < d_env.rad_f64() => d_num,
            _ => d_env,
        };
        let pi2 = rigor::pi(p).sqr();
        // The narrow scale first, then sequential division by the possibly
        // wide m.
        let scale = pi2.div(&pi2.add_i64(4).mul(&x.sqr()).mul_i64(24))?;
        Ok(defect.add(&s3_ball(&d.mul(&m)).mul(&scale).div(&m)?.div(&m)?))
    } else {
        // Direct form; finite at 0.
        let psi1 = specfun::trigamma_real(&z.add(&half))?;
        let p1 = Ball::one(p).sub(&z.mul(&psi1));
        let e = eta0_ball(&d.mul(&m))?;
        let corr = d.sqr().mul(&e).div(&x.sqr().mul_i64(12))?;
        Ok(p1.sub(&corr))
    }
}

/// `V(−m) = cos²(πXm)·b(m)/(π²X)` for `m ≥ 0`; also equals `F(±m)`.
fn v_at_nonpositive(m: &Ball, pp: &PhiParams) -> Result<Ball> {
    let p = m.prec().max(pp.prec()).max(64);
    let m = m.with_prec(p);
    let br = bracket_nonneg_arg(&m, pp)?;
    let c = rigor::pi(p).mul(&pp.x).mul(&m).cos();
    c.sqr().mul(&br).div(&rigor::pi(p).sqr().mul(&pp.x))
}

/// The majorant-gap kernel `F(r) = V(−|r|)` (even, nonnegative for valid
/// parameters). Total on finite real balls; the removable singularity of
/// the closed form at 0 is handled internally.
pub fn f_eval(r: &Ball, pp: &PhiParams) -> Result<Ball> {
    r.check_finite("f_eval")?;
    v_at_nonpositive(&r.abs(), pp)
}

/// The closed form of the majorant `V` continued off the nonpositive real
/// axis; valid left of the first pole of `ψ′(1/2 − Xz)` at `Re z = 1/(2X)`
/// (the pole chain continues at `(2k+1)/(2X)`, `k ≥ 0`).
fn v_c_direct(z: &CBall, pp: &PhiParams) -> Result<CBall> {
    let p = z.prec().max(pp.prec());
    let x = pp.x.with_prec(p);
    let d = pp.delta.with_prec(p);
    let pi = rigor::pi(p);
    let xz = z.scale(&x);
    let half = Ball::from_ratio(p, 1, 2);
    let arg = CBall::new(half.sub(&xz.re), xz.im.neg());
    let psi1 = specfun::trigamma_c(&arg)?;
    let p1 = xz.mul(&psi1).add(&CBall::from_real(Ball::one(p)));
    let e = eta0_c(&z.scale(&d))?;
    let coef = d.sqr().div(&x.sqr().mul_i64(12))?;
    let bracket = p1.sub(&e.scale(&coef));
    let c = z.scale(&pi.mul(&x)).cos();
    Ok(c.mul(&c).mul(&bracket).scale(&pi.sqr().mul(&x).recip()?))
}

/// Complex continuation of `F` off the positive real axis:
/// `F(z) = V(−z)`, analytic for `Re z > −1/(2X)`.
pub(crate) fn f_c(z: &CBall, pp: &PhiParams) -> Result<CBall> {
    v_c_direct(&z.neg(), pp)
}

/// The majorant `V` at real or complex arguments, as `(re, im)` balls.
///
/// * Exact-real input (`z_im` identically zero): requires the ball to not
///   contain 0 ([`Error::DomainStraddle`] otherwise — use [`f_eval`] for
///   the even combination, which is finite there); `V(r) = V(−r) + r` for
///   `r > 0`.
/// * Complex input: the real part of `z` must be certainly of one sign
///   (or exactly zero); the continuation with `Re z ≤ 0` is evaluated
///   directly, `Re z ≥ 0` through the reflection identity.
pub fn v_eval(z_re: &Ball, z_im: &Ball, pp: &PhiParams) -> Result<(Ball, Ball)> {
    let p = z_re.prec().max(z_im.prec()).max(pp.prec());
    z_re.check_finite("v_eval")?;
    z_im.check_finite("v_eval")?;
    let exact_real = z_im.mid().is_zero() && z_im.rad().is_zero();
    if exact_real {
        let r = z_re.with_prec(p);
        if r.contains_zero() {
            return Err(Error::DomainStraddle {
                op: "v_eval",
                detail: format!(
                    "real argument ball {r} contains 0; use f_eval for the even \
                     combination"
                ),
            });
        }
        let m = r.abs();
        let vn = v_at_nonpositive(&m, pp)?;
        let val = if r.certainly_negative() {
            vn
        } else {
            vn.add(&m)
        };
        return Ok((val, Ball::zero(p)));
    }
    let z = CBall::new(z_re.with_prec(p), z_im.with_prec(p));
    let zero = Ball::zero(p);
    let v = if z_re.certainly_le(&zero) {
        v_c_direct(&z, pp)?
    } else if zero.certainly_le(&z.re) {
        v_c_direct(&z.neg(), pp)?.add(&z)
    } else {
        return Err(Error::DomainStraddle {
            op: "v_eval",
            detail: format!(
                "complex argument with real part {z_re} straddling 0"
            ),
        });
    };
    Ok((v.re, v.im))
}

/// The smooth spectral weight
/// `k(r) = r·tanh(πr)/12 + (1/8 + cosh(πr/3)/(3√3))/cosh(πr)
///        + (log 2π − 2·Re ψ(1 + 2ir))/(2π)` (even, total on real balls).
pub fn k_eval(r: &Ball) -> Result<Ball> {
    let p = r.prec().max(64);
    let r = r.with_prec(p);
    r.check_finite("k_eval")?;
    let pi = rigor::pi(p);
    let pr = pi.mul(&r);
    let t1 = r.mul(&pr.tanh()).div_i64(12);
    let s3 = Ball::from_i64(p, 3).sqrt()?.mul_i64(3);
    let t2 = Ball::from_ratio(p, 1, 8)
        .add(&pr.div_i64(3).cosh().div(&s3)?)
        .div(&pr.cosh())?;
    let (dre, _) = specfun::digamma_enclosure(&Ball::one(p), &r.mul_2exp(1), p)?;
    let t3 = pi
        .mul_2exp(1)
        .ln()?
        .sub(&dre.mul_2exp(1))
        .div(&pi.mul_2exp(1))?;
    Ok(t1.add(&t2).add(&t3))
}

/// Complex continuation of the spectral weight, analytic on the strip
/// `|Im z| < 1/2`:
/// `k(z) = z·tanh(πz)/12 + (1/8 + cosh(πz/3)/(3√3))/cosh(πz)
///        + (log 2π − ψ(1+2iz) − ψ(1−2iz))/(2π)`.
pub(crate) fn k_c(z: &CBall) -> Result<CBall> {
    let p = z.prec().max(64);
    let pi = rigor::pi(p);
    let pz = z.scale(&pi);
    let ch = pz.cosh();
    let t1 = z.mul(&pz.sinh().div(&ch)?).scale(&Ball::from_ratio(p, 1, 12));
    let s3 = Ball::from_i64(p, 3).sqrt()?.mul_i64(3);
    let num = CBall::from_real(Ball::from_ratio(p, 1, 8))
        .add(&pz.scale(&Ball::from_ratio(p, 1, 3)).cosh().scale(&s3.recip()?));
    let t2 = num.div(&ch)?;
    // 2iz and −2iz.
    let tw = CBall::new(z.im.mul_i64(-2), z.re.mul_2exp(1));
    let one_c = CBall::from_real(Ball::one(p));
    let pa = specfun::digamma_c(&one_c.add(&tw))?;
    let pb = specfun::digamma_c(&one_c.sub(&tw))?;
    let t3 = CBall::from_real(pi.mul_2exp(1).ln()?)
        .sub(&pa)
        .sub(&pb)
        .scale(&pi.mul_2exp(1).recip()?);
    Ok(t1.add(&t2).add(&t3))
}

/// `F(r)` times an optional symmetric spectral-weight factor, as a
/// quadrature integrand with certified complex continuation. With
/// `shift = Some(T)` the weight is `k(T+r) + k(T−r)`, plus `2k(r)` when
/// `with_zero_weight` is set; with `shift = None` the integrand is plain
/// `F`.
pub(crate) struct WeightedFIntegrand {
    pub(crate) pp: PhiParams,
    pub(crate) shift: Option<Ball>,
    pub(crate) with_zero_weight: bool,
}

impl Integrand for WeightedFIntegrand {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        let f = v_at_nonpositive(&t.abs(), &self.pp)?;
        match &self.shift {
            None => Ok(f),
            Some(big_t) => {
                let mut w = k_eval(&big_t.add(t))?.add(&k_eval(&big_t.sub(t))?);
                if self.with_zero_weight {
                    w = w.add(&k_eval(t)?.mul_2exp(1));
                }
                Ok(w.mul(&f))
            }
        }
    }

    fn bound_modulus(&self, center: &Ball, radius: &Ball, theta: &Ball) -> Result<Ball> {
        let z = quad::circle_point(center, radius, theta);
        let f = f_c(&z, &self.pp)?;
        match &self.shift {
            None => Ok(f.abs()),
            Some(big_t) => {
                let tc = CBall::from_real(big_t.clone());
                let mut w = k_c(&tc.add(&z))?.add(&k_c(&tc.sub(&z))?);
                if self.with_zero_weight {
                    w = w.add(&k_c(&z)?.scale(&Ball::from_i64(z.prec(), 2)));
                }
                Ok(w.abs().mul(&f.abs()))
            }
        }
    }

    fn disk_analytic(&self, center: &Ball, radius: &Ball) -> Result<()> {
        let p = center.prec();
        // F's pole chain starts at −1/(2X): the disk must stay right of it.
        let reach = center.sub(radius);
        let lim = self.pp.x.mul_2exp(1).recip()?.neg();
        if !lim.certainly_lt(&reach) {
            return Err(Error::DomainStraddle {
                op: "weighted F quadrature",
                detail: format!(
                    "disk about {center} with radius {radius} reaches the pole \
                     chain of F starting at {lim}"
                ),
            });
        }
        // The weight's continuation needs |Im z| < 1/2 (cosh zeros and the
        // digamma pole chain sit on |Im| ≥ 1/2 for real-centered disks).
        if self.shift.is_some() && !radius.certainly_lt(&Ball::from_ratio(p, 1, 2)) {
            return Err(Error::DomainStraddle {
                op: "weighted F quadrature",
                detail: format!(
                    "disk radius {radius} not certainly below the weight's \
                     analyticity half-width 1/2"
                ),
            });
        }
        Ok(())
    }
}

/// `F̂(0) = (3(π²+4)X − 2π²δ) / (72X³(π²+4))`, the exact mass of the
/// majorant gap.
pub fn f_hat_zero(pp: &PhiParams) -> Result<Ball> {
    let p = pp.prec();
    let pi2 = rigor::pi(p).sqr();
    let pi2p4 = pi2.add_i64(4);
    let num = pi2p4
        .mul(&pp.x)
        .mul_i64(3)
        .sub(&pi2.mul(&pp.delta).mul_2exp(1));
    num.div(&pp.x.pow_i(3)?.mul(&pi2p4).mul_i64(72))
}

/// Quartic-decay envelope of the majorant gap: returns `(C, r_min)` with
/// `F(r) ≤ C/(X³r⁴)` for all `|r| ≥ r_min = 1/δ`.
///
/// Chain: for `|r| ≥ 1/δ` the shape condition puts `X|r| ≥ X/δ > 1/2`, so
/// the bracket is at most its `S3` part, and `S3(y) ≤ 5/(π²y²)` for
/// `y ≥ 1` (from `π²y²S3(y) = 2sin²(πy) + cos²(πy)·y²[(y−½)⁻² + (y+½)⁻²]`
/// with `y²/(y−½)² ≤ 4` and `y²/(y+½)² ≤ 1`), giving
/// `F ≤ 5/(24π²(π²+4)δ²)·X⁻³r⁻⁴`.
pub(crate) fn f_envelope(pp: &PhiParams) -> Result<(Ball, Ball)> {
    let p = pp.prec();
    let pi2 = rigor::pi(p).sqr();
    let c = Ball::from_i64(p, 5)
        .div(&pi2.mul(&pi2.add_i64(4)).mul(&pp.delta.sqr()).mul_i64(24))?;
    Ok((c, pp.delta.recip()?))
}

/// The four closed-form ingredients of the large-height remainder bound,
/// for `T ≥ 10` and the fixed mollifier width `δ = 0.842` they are proved
/// at:
///
/// * `kTr`: bound for `∫₀^∞ k(T±r)F(r)dr`-type terms,
///   `T/(144X²) − π²δT/(216X³(π²+4))
///    + (5T⁴+15T³+258T²+20T+264)/(18000X³(T−2)³(T+2)³)`;
/// * `krFr`: bound for `2∫₀^∞ k(r)F(r)dr`, `1/(15X²)`;
/// * `Vi2`: bound for `−2·Re V(i/2)`, `cosh²(πX/2)(0.09752X⁻³ + 0.3731X⁻⁵)`;
/// * `Vi2T`: bound for `|2·Re V(i/2 − T)|`,
///   `cosh²(πX/2)(0.07914 + 0.01183/T)/(X⁵T⁴)`.
pub fn large_t_bound_terms(t: &Ball, pp: &PhiParams) -> Result<(Ball, Ball, Ball, Ball)> {
    let p = t.prec().max(pp.prec());
    let t = t.with_prec(p);
    if !Ball::from_i64(p, 10).certainly_le(&t) {
        return Err(Error::OutOfDomain {
            op: "large_t_bound_terms",
            detail: format!("requires T ≥ 10, got {t}"),
        });
    }
    let d842 = Ball::from_ratio(p, 421, 500);
    if !pp.delta.sub(&d842).contains_zero() || pp.delta.rad_f64() > 1e-6 {
        return Err(Error::OutOfDomain {
            op: "large_t_bound_terms",
            detail: format!("closed forms proved only for δ = 0.842, got δ = {}", pp.delta),
        });
    }
    let x = pp.x.with_prec(p);
    let pi2 = rigor::pi(p).sqr();
    let pi2p4 = pi2.add_i64(4);
    let x2 = x.sqr();
    let x3 = x.pow_i(3)?;
    let lead = t.div(&x2.mul_i64(144))?;
    let mid = pi2
        .mul(&pp.delta)
        .mul(&t)
        .div(&x3.mul(&pi2p4).mul_i64(216))?;
    let poly = horner_real(
        &[
            Ball::from_i64(p, 264),
            Ball::from_i64(p, 20),
            Ball::from_i64(p, 258),
            Ball::from_i64(p, 15),
            Ball::from_i64(p, 5),
        ],
        &t,
    );
    let den = x3
        .mul(&t.sub_i64(2).pow_i(3)?)
        .mul(&t.add_i64(2).pow_i(3)?)
        .mul_i64(18000);
    let ktr = lead.sub(&mid).add(&poly.div(&den)?);
    let krfr = x2.mul_i64(15).recip()?;
    let ch2 = rigor::pi(p).mul(&x).mul_2exp(-1).cosh().sqr();
    let vi2 = ch2.mul(
        &Ball::from_ratio(p, 9752, 100000)
            .div(&x3)?
            .add(&Ball::from_ratio(p, 3731, 10000).div(&x.pow_i(5)?)?),
    );
    let vi2t = ch2
        .mul(&Ball::from_ratio(p, 7914, 100000).add(&Ball::from_ratio(p, 1183, 100000).div(&t)?))
        .div(&x.pow_i(5)?.mul(&t.pow_i(4)?))?;
    Ok((ktr, krfr, vi2, vi2t))
}

// ---------------------------------------------------------------------------
// Certifications (adaptive interval sweeps).
// ---------------------------------------------------------------------------

/// Adaptive positivity sweep: bisect `[lo, hi]` until `check` certifies
/// every subinterval, returning the number of certified pieces.
fn sweep_certified(
    p: u32,
    lo: f64,
    hi: f64,
    min_width: f64,
    check: &dyn Fn(&Ball) -> Result<bool>,
) -> Result<u64> {
    let mut stack = vec![(lo, hi)];
    let mut count = 0u64;
    while let Some((a, b)) = stack.pop() {
        let seg = Ball::from_endpoints(Float::with_val(p, a), Float::with_val(p, b));
        // An evaluation error on a wide segment (a divisor enclosure
        // touching zero, say) is treated like a failed certification:
        // bisect until the enclosures tighten up.
        let verdict = check(&seg);
        if matches!(verdict, Ok(true)) {
            count += 1;
            continue;
        }
        if b - a < min_width {
            return Err(Error::Inconclusive(match verdict {
                Err(e) => format!("interval sweep stalled on [{a}, {b}]: {e}"),
                _ => format!("interval sweep stalled on [{a}, {b}]"),
            }));
        }
        let mid = 0.5 * (a + b);
        stack.push((a, mid));
        stack.push((mid, b));
    }
    Ok(count)
}

/// Certify `F ≥ 0` on all of ℝ for the given parameters; returns the
/// number of certified subintervals.
///
/// `F = cos²(πXr)·b(r)/(π²X)` with the first factor nonnegative and the
/// last positive, so it suffices that the bracket `b` is nonnegative:
/// certified on `[0, rmax]` by adaptive sweep, and for
/// `r ≥ r₀ = 1/(δ√12)` (which must be ≤ `rmax`) by the algebraic tail
/// criterion: `π²y²S3(y) − 2 = cos²(πy)(3y²/2 − 1/8)/(y²−1/4)² ≥ 0` for
/// `y² ≥ 1/12`, so `b(r) ≥ [1/(12(π²+4)δ²) − 7/(120X²)]/(X²r⁴)` there,
/// whose leading coefficient is certified positive. Evenness covers
/// `r < 0`.
pub fn f_nonneg_certify(pp: &PhiParams, rmax: f64) -> Result<u64> {
    let p = pp.prec().max(64);
    let pi2 = rigor::pi(p).sqr();
    let r0 = pp.delta.mul(&Ball::from_i64(p, 12).sqrt()?).recip()?;
    let coeff = pi2
        .add_i64(4)
        .mul(&pp.delta.sqr())
        .mul_i64(12)
        .recip()?
        .sub(&Ball::from_ratio(p, 7, 120).div(&pp.x.sqr())?);
    if !coeff.certainly_positive() {
        return Err(Error::Inconclusive(format!(
            "tail coefficient 1/(12(π²+4)δ²) − 7/(120X²) not certainly positive: {coeff}"
        )));
    }
    if !Ball::from_ratio(p, 1, 2).certainly_le(&pp.x.mul(&r0)) {
        return Err(Error::Inconclusive(format!(
            "tail threshold r₀ = {r0} below the defect-envelope domain 1/(2X)"
        )));
    }
    if rmax < upper_f64(&r0) {
        return Err(Error::OutOfDomain {
            op: "f_nonneg_certify",
            detail: format!("rmax = {rmax} below the analytic tail threshold r₀ = {r0}"),
        });
    }
    sweep_certified(p, 0.0, rmax, 1e-9, &|seg| {
        Ok(bracket_nonneg_arg(seg, pp)?.certainly_nonnegative())
    })
}

/// Certify `φ̂ ≥ 0` on ℝ; returns the number of certified subintervals.
///
/// Structural decomposition: `φ̂(t) = φ̂₀(t/X) + (δt²/12X³)·[three η̂₀
/// values]` with a nonnegative prefactor, so it suffices that `φ̂₀ ≥ 0`
/// and `η̂₀ ≥ 0` on `[0, 1]` (both vanish beyond, and both are even).
/// Away from the support edge the value enclosures are certified
/// directly; near the edge the factorized series forms are used, whose
/// non-trivial factors are certified positive (the remaining factors are
/// squares or clamped nonnegative). This holds for every valid parameter
/// pair; `pp` only supplies the working precision.
pub fn varphi_nonneg_certify(pp: &PhiParams) -> Result<u64> {
    let p = pp.prec().max(64);
    let one = Ball::one(p);
    // Near the support edges the value enclosures are products of balls
    // touching zero, whose lower bounds can dip below 0 by rounding slop;
    // there the non-trivial series factor is certified positive instead
    // (the remaining factors are squares, clamped, or a positive scalar).
    let eta_count = sweep_certified(p, 0.0, 1.0, 1e-7, &|seg| {
        let body_ok = if lower_f64(seg) < 0.75 {
            eta0_hat(&seg.min(&Ball::from_ratio(p, 3, 4)))?.certainly_nonnegative()
        } else {
            true
        };
        let edge_ok = if upper_f64(seg) > 0.75 {
            let wc = seg.max(&Ball::from_ratio(p, 3, 4)).min(&one);
            let s = one.sub(&wc).clamp_nonnegative();
            eta0_hat_edge_factor(&s)?.certainly_positive()
        } else {
            true
        };
        Ok(body_ok && edge_ok)
    })?;
    let phi_count = sweep_certified(p, 0.0, 1.0, 1e-7, &|seg| {
        let body_ok = if lower_f64(seg) < 0.875 {
            varphi_hat0(&seg.min(&Ball::from_ratio(p, 7, 8)))?.certainly_nonnegative()
        } else {
            true
        };
        let edge_ok = if upper_f64(seg) > 0.875 {
            let wc = seg.max(&Ball::from_ratio(p, 7, 8)).min(&one);
            let s = one.sub(&wc).clamp_nonnegative();
            varphi_hat0_edge_factor(&s)?.certainly_positive()
        } else {
            true
        };
        Ok(body_ok && edge_ok)
    })?;
    Ok(eta_count + phi_count)
}

/// Certify `sup_{y ≥ 0} S3(y)·y² ≤ limit`: adaptive sweep on `[0, 3]`
/// plus the monotone tail bound
/// `π²y²S3(y) ≤ 2 + (y/(y−½))² + (y/(y+½))² ≤ 2 + (6/5)² + 1` for
/// `y ≥ 3`. Returns the number of certified subintervals.
pub fn s3_y2_upper_certify(limit: &Ball, prec: u32) -> Result<u64> {
    let p = prec.max(64);
    let pi2 = rigor::pi(p).sqr();
    let tail = Ball::from_i64(p, 3)
        .add(&Ball::from_ratio(p, 36, 25))
        .div(&pi2)?;
    if !tail.certainly_le(limit) {
        return Err(Error::Inconclusive(format!(
            "tail bound {tail} for y ≥ 3 not certainly within {limit}"
        )));
    }
    sweep_certified(p, 0.0, 3.0, 1e-7, &|seg| {
        Ok(s3_ball(seg).mul(&seg.sqr()).certainly_le(limit))
    })
}

/// Certify the spectral-weight bound: `k(r) ≤ 4/5` on `|r| ≤ 2` (adaptive
/// sweep; k is even), and `k(r) ≤ |r|/12` for `|r| ≥ 2`. Returns the
/// number of certified subintervals.
///
/// Tail argument: `rest(r) = k(r) − r·tanh(πr)/12` is decreasing on
/// `r > 0` — `Re ψ(1+2ir)` is increasing (its r-derivative is
/// `8r·Σ(n+1)/|n+1+2ir|⁴ > 0`), and both cosh-quotient parts decrease
/// (`tanh(πr) > tanh(πr/3)/3`) — so `rest(r) ≤ rest(2)`, certified
/// negative here, and `k(r) ≤ r·tanh(πr)/12 ≤ r/12` for `r ≥ 2`.
pub fn k_upper_certify(prec: u32) -> Result<u64> {
    let p = prec.max(64);
    let lim = Ball::from_ratio(p, 4, 5);
    let count = sweep_certified(p, 0.0, 2.0, 1e-7, &|seg| {
        Ok(k_eval(seg)?.certainly_le(&lim))
    })?;
    let two = Ball::from_i64(p, 2);
    let rest = k_eval(&two)?.sub(&two.mul(&rigor::pi(p).mul(&two).tanh()).div_i64(12));
    if !rest.certainly_negative() {
        return Err(Error::Inconclusive(format!(
            "k(2) − 2·tanh(2π)/12 not certainly negative: {rest}"
        )));
    }
    Ok(count)
}

/// `sinc′(x) = (x·cos x − sin x)/x²` (odd), with the alternating series
/// `Σ_{k≥1}(−1)^k·2k·x^{2k−1}/(2k+1)!` below `3/8` (term ratio
/// `x²/((2k)(2k+3)) < 0.015` there, so the truncation error is within the
/// first omitted term).
fn sinc_d1(x: &Ball) -> Result<Ball> {
    let p = x.prec();
    let m = x.abs();
    m.check_finite("sinc_d1")?;
    let mut out: Option<Ball> = None;
    if lower_f64(&m) < 0.375 {
        let mc = m.min(&Ball::from_ratio(p, 3, 8));
        const K: i64 = 9;
        let mut coeffs = vec![Ball::zero(p)]; // x⁰ term absent
        for k in 1..=K {
            let c = factorial_ball(p, 2 * k + 1).recip()?.mul_i64(2 * k);
            coeffs.push(if k % 2 == 1 { c.neg() } else { c });
            coeffs.push(Ball::zero(p));
        }
        coeffs.pop();
        let val = horner_real(&coeffs, &mc);
        let tail = factorial_ball(p, 2 * (K + 1) + 1)
            .recip()?
            .mul_i64(2 * (K + 1))
            .mul(&Ball::from_f64(p, upper_f64(&mc)).pow_i(2 * (K + 1) - 1)?);
        out = hull_in(out, val.widen(upper_f64(&tail)));
    }
    if upper_f64(&m) >= 0.375 {
        let mc = m.max(&Ball::from_ratio(p, 1, 4));
        // Sequential division: x² of a wide positive ball can straddle 0
        // in midpoint–radius form even though x itself cannot.
        let v = mc.mul(&mc.cos()).sub(&mc.sin()).div(&mc)?.div(&mc)?;
        out = hull_in(out, v);
    }
    let v = out.expect("regions cover [0, ∞)");
    if x.certainly_nonnegative() {
        Ok(v)
    } else if x.certainly_negative() {
        Ok(v.neg())
    } else {
        Ok(v.hull(&v.neg()))
    }
}

/// `sinc″(x) = ((2−x²)sin x − 2x·cos x)/x³` (even), with the alternating
/// series `Σ_{k≥1}(−1)^k·2k(2k−1)·x^{2k−2}/(2k+1)!` below `3/8`.
fn sinc_d2(x: &Ball) -> Result<Ball> {
    let p = x.prec();
    let m = x.abs();
    m.check_finite("sinc_d2")?;
    let mut out: Option<Ball> = None;
    if lower_f64(&m) < 0.375 {
        let mc = m.min(&Ball::from_ratio(p, 3, 8));
        const K: i64 = 9;
        let y = mc.sqr();
        let mut coeffs = Vec::new();
        for k in 1..=K {
            let c = factorial_ball(p, 2 * k + 1)
                .recip()?
                .mul_i64(2 * k * (2 * k - 1));
            coeffs.push(if k % 2 == 1 { c.neg() } else { c });
        }
        let val = horner_real(&coeffs, &y);
        let tail = factorial_ball(p, 2 * (K + 1) + 1)
            .recip()?
            .mul_i64(2 * (K + 1) * (2 * (K + 1) - 1))
            .mul(&Ball::from_f64(p, upper_f64(&y)).pow_i(K)?);
        out = hull_in(out, val.widen(upper_f64(&tail)));
    }
    if upper_f64(&m) >= 0.375 {
        let mc = m.max(&Ball::from_ratio(p, 1, 4));
        let two = Ball::from_i64(p, 2);
        // Sequential division, as in `sinc_d1`.
        let v = two
            .sub(&mc.sqr())
            .mul(&mc.sin())
            .sub(&mc.mul(&mc.cos()).mul_2exp(1))
            .div(&mc)?
            .div(&mc)?
            .div(&mc)?;
        out = hull_in(out, v);
    }
    Ok(out.expect("regions cover [0, ∞)"))
}

/// `(1/2)·f″(t)` for `f(t) = 2sinc²(πt) + sinc²(πt+π/2) + sinc²(πt−π/2)`:
/// `π²[2Φ(πt) + Φ(πt+π/2) + Φ(πt−π/2)]` with `Φ = (sinc′)² + sinc·sinc″`.
pub fn half_curvature(t: &Ball) -> Result<Ball> {
    let p = t.prec().max(64);
    let pi = rigor::pi(p);
    let x0 = pi.mul(&t.with_prec(p));
    let hp = pi.mul_2exp(-1);
    let phi = |x: &Ball| -> Result<Ball> {
        Ok(sinc_d1(x)?.sqr().add(&specfun::sinc_ball(x).mul(&sinc_d2(x)?)))
    };
    Ok(pi.sqr().mul(
        &phi(&x0)?
            .mul_2exp(1)
            .add(&phi(&x0.add(&hp))?)
            .add(&phi(&x0.sub(&hp))?),
    ))
}

/// Re-verify the curvature floor used by the majorant construction:
/// `(1/2)f″(t) > −5` on `[0, 1/√12]` with `f` as in [`half_curvature`].
/// Returns the number of certified subintervals.
pub fn curvature_floor_certify(prec: u32) -> Result<u64> {
    let p = prec.max(64);
    let floor = Ball::from_i64(p, -5);
    // 0.2887 > 1/√12, so the sweep covers the whole target interval.
    sweep_certified(p, 0.0, 0.2887, 1e-7, &|seg| {
        Ok(half_curvature(seg)?.certainly_gt(&floor))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Parse a decimal literal into a two-sided enclosure at precision `p`.
    fn oracle(p: u32, s: &str) -> Ball {
        let lo = Float::with_val_round(p, Float::parse(s).unwrap(), Round::Down).0;
        let hi = Float::with_val_round(p, Float::parse(s).unwrap(), Round::Up).0;
        Ball::from_endpoints(lo, hi)
    }

    fn bp_test(p: u32) -> BetaParams {
        BetaParams::new(&Ball::from_ratio(p, 1, 2), &Ball::from_i64(p, 2)).unwrap()
    }

    fn pp_desk(p: u32) -> PhiParams {
        PhiParams::medium(p)
    }

    fn pp_large_1e6(p: u32) -> PhiParams {
        PhiParams::large_height(&Ball::from_i64(p, 1_000_000), p).unwrap()
    }

    // -------------------------------------------------------------------
    // Window family.
    // -------------------------------------------------------------------

    #[test]
    fn beta_params_normalization() {
        let p = 128;
        let bp = bp_test(p);
        assert!(bp.c().overlaps(&oracle(
            p,
            "0.27028300108192898013289306378011541454533132499875"
        )));
        assert!(bp.c().rad_f64() < 1e-30);
        // β(0) = 1 by construction.
        let b0 = beta_eval(&Ball::zero(p), &bp).unwrap();
        assert!(b0.contains_float(&Float::with_val(p, 1)));
        assert!(b0.rad_f64() < 1e-30);
        // Too-small b kills the normalizing denominator.
        assert!(matches!(
            BetaParams::new(&Ball::from_ratio(p, 1, 2), &Ball::from_ratio(p, 1, 10)),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            BetaParams::new(&Ball::zero(p), &Ball::one(p)),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn beta_eval_frozen_values() {
        let p = 128;
        let bp = bp_test(p);
        let cases = [
            ("0.15", "0.94327922588351333584825123566885354223116712377602"),
            ("0.45", "0.58771934499764666925362816524548945440724508099727"),
            ("0.75", "0.22054974593550674969228118097988259760988436593262"),
            ("1.05", "0.04585273246787483542441058547192247390517391726237"),
            ("1.3", "0.0069341970631455916331775890161574170695506151609437"),
            ("1.75", "0.000017614949550830230409057231751215990719510855684992"),
            ("1.9", "0.00000015154689661842913484123745966257276741628925418744"),
        ];
        for (t, want) in cases {
            let v = beta_eval(&oracle(p, t), &bp).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "β({t}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-25, "β({t}) too wide: {v}");
            // Evenness.
            let vm = beta_eval(&oracle(p, t).neg(), &bp).unwrap();
            assert!(vm.overlaps(&w));
        }
        // Exactly zero beyond the support.
        let far = beta_eval(&Ball::from_i64(p, 3), &bp).unwrap();
        assert_eq!(far.mid_f64(), 0.0);
        assert_eq!(far.rad_f64(), 0.0);
        // A ball straddling the support edge contains 0.
        let straddle = beta_eval(
            &Ball::from_endpoints(Float::with_val(p, 1.99), Float::with_val(p, 2.01)),
            &bp,
        )
        .unwrap();
        assert!(straddle.contains_zero());
        // Piece-boundary continuity: the hull at t = a stays narrow.
        let at_a = beta_eval(&Ball::from_ratio(p, 1, 2), &bp).unwrap();
        assert!(at_a.rad_f64() < 1e-25);
    }

    /// Inverse transform of `beta_hat` as a quadrature integrand.
    struct BetaHatCos {
        bp: BetaParams,
        two_pi_t: Ball,
    }

    impl BetaHatCos {
        fn value_c(&self, z: &CBall) -> Result<CBall> {
            let p = z.prec();
            let x = z.scale(&rigor::pi(p).mul(self.bp.a()));
            let s = specfun::sinc_c(&x)?;
            let s2 = s.mul(&s);
            let s8 = {
                let s4 = s2.mul(&s2);
                s4.mul(&s4)
            };
            let b2 = CBall::from_real(self.bp.b().sqr());
            Ok(s8
                .mul(&b2.sub(&z.mul(z)))
                .scale(self.bp.c())
                .mul(&z.scale(&self.two_pi_t).cos()))
        }
    }

    impl Integrand for BetaHatCos {
        fn eval(&self, t: &Ball) -> Result<Ball> {
            Ok(beta_hat(t, &self.bp)?.mul(&self.two_pi_t.mul(t).cos()))
        }
        fn bound_modulus(&self, center: &Ball, radius: &Ball, theta: &Ball) -> Result<Ball> {
            let z = quad::circle_point(center, radius, theta);
            Ok(self.value_c(&z)?.abs())
        }
    }

    /// The module's master correctness oracle: β agrees with the numeric
    /// inverse transform of β̂ at sample points in every piece.
    #[test]
    fn beta_route_equality_master_oracle() {
        let p = 96;
        let bp = bp_test(p);
        let quadr = Quadrature::new(40, p);
        let big_r = 40i64;
        for t in [
            "0.15", "0.25", "0.45", "0.6", "0.75", "1.05", "1.35", "1.6", "1.75", "1.95",
        ] {
            let tb = oracle(p, t);
            let f = BetaHatCos {
                bp: bp.clone(),
                two_pi_t: rigor::pi(p).mul(&tb).mul_2exp(1),
            };
            // 2·∫₀^40 β̂(r)cos(2πrt)dr over unit-ish segments, plus the
            // sinc-envelope tail ∫_R^∞ c·r²/(πar)⁸ dr = c/((πa)⁸·5R⁵).
            let mut total = Ball::zero(p);
            for k in 0..(2 * big_r) {
                let lo = Ball::from_ratio(p, k, 2);
                let hi = Ball::from_ratio(p, k + 1, 2);
                total = total.add(&quadr.integrate(&f, &lo, &hi, 12).unwrap());
            }
            total = total.mul_2exp(1);
            let tail = bp
                .c()
                .div(&rigor::pi(p).mul(bp.a()).pow_i(8).unwrap())
                .unwrap()
                .div(&Ball::from_i64(p, 5 * big_r.pow(5)))
                .unwrap();
            let rhs = total.widen(upper_f64(&tail));
            let lhs = beta_eval(&tb, &bp).unwrap();
            assert!(
                lhs.overlaps(&rhs),
                "route mismatch at t = {t}: pieces {lhs} vs transform {rhs}"
            );
            assert!(rhs.rad_f64() < 1e-9, "transform enclosure too wide at t = {t}: {rhs}");
        }
    }

    #[test]
    fn beta_hat_special_points() {
        let p = 96;
        let bp = bp_test(p);
        // Zero of the b²−r² factor.
        assert!(beta_hat(&Ball::from_i64(p, 2), &bp).unwrap().contains_zero());
        // Zero of sinc(πar) at r = 2/a (r = 1/a coincides with b here).
        assert!(beta_hat(&Ball::from_i64(p, 4), &bp).unwrap().contains_zero());
        // β̂(0) = c·b².
        let at0 = beta_hat(&Ball::zero(p), &bp).unwrap();
        assert!(at0.overlaps(&bp.c().mul(&bp.b().sqr())));
    }

    #[test]
    fn h2_hat_frozen_values() {
        let p = 128;
        let bp = bp_test(p);
        let cases = [
            ("0", "0.1312569231742634393833352682721083313586574844302"),
            ("0.3", "0.11770149517521926886121149510034964221758605820139"),
            ("0.7", "0.075502727212756906299641140105262810187929576916927"),
            ("1.0", "0.04749751499992992234016220887169459290095064258155"),
            ("1.9", "0.014033402809892912568094747411532953533294092404625"),
            ("2.5", "0.0081056946913870217155103570567782111123487019737797"),
        ];
        for (t, want) in cases {
            let v = h2_hat(&oracle(p, t), &bp).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "ĥ₂({t}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-25);
        }
        // Beyond the β support: exactly the free form.
        let t = Ball::from_i64(p, 3);
        let free = rigor::pi(p).sqr().mul(&t.sqr()).mul_2exp(1).recip().unwrap();
        assert!(h2_hat(&t, &bp).unwrap().overlaps(&free));
        // Cross-route at t = 2a: (1 − β(2a))/(8π²a²).
        let ta = Ball::one(p);
        let via_beta = Ball::one(p)
            .sub(&beta_eval(&ta, &bp).unwrap())
            .div(&rigor::pi(p).sqr().mul_2exp(3).mul(&bp.a().sqr()))
            .unwrap();
        assert!(h2_hat(&ta, &bp).unwrap().overlaps(&via_beta));
        // A wide straddling ball stays finite and sane.
        let wide = Ball::from_endpoints(Float::with_val(p, 0.4), Float::with_val(p, 2.3));
        assert!(h2_hat(&wide, &bp).unwrap().is_finite());
    }

    #[test]
    fn h2_eval_frozen_and_audited() {
        let p = 96;
        let bp = bp_test(p);
        let cases = [
            ("2.25", "-0.0000060167427567167405766297684387198562702696938872217"),
            (
                "9.533695261354",
                "-0.000000023516375273679086477810402666234098930952973336195",
            ),
        ];
        for (r, want) in cases {
            let (v, audit) = h2_eval_audited(&oracle(p, r), &bp, 40).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "h₂({r}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-12, "h₂({r}) too wide: {v}");
            assert!(audit.consistent(), "audit budget inconsistent: {audit:?}");
            assert_eq!(audit.entries.len(), 2);
        }
        // Domain: r must be certainly positive.
        assert!(matches!(
            h2_eval(&Ball::zero(p), &bp, 20),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn h2_eval_decays_at_large_argument() {
        let p = 64;
        let bp = bp_test(p);
        let v = h2_eval(&Ball::from_i64(p, 1000), &bp, 40).unwrap();
        assert!(
            v.abs().certainly_lt(&Ball::from_ratio(p, 1, 1000)),
            "|h₂(1000)| = {v} not certified below 10⁻³"
        );
    }

    // -------------------------------------------------------------------
    // Mollifier transforms.
    // -------------------------------------------------------------------

    #[test]
    fn eta0_hat_frozen_values() {
        let p = 128;
        let cases = [
            ("0", "4.6821374384382415923723013542111825023053635610287"),
            ("0.5", "0.19639289971961748731278878126125544492369219380116"),
            (
                "0.97",
                "0.00000016837916541267891023216007390927127530089332400334",
            ),
        ];
        for (u, want) in cases {
            let v = eta0_hat(&oracle(p, u)).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "η̂₀({u}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-25);
        }
        // Exactly zero beyond the support.
        let far = eta0_hat(&Ball::from_ratio(p, 3, 2)).unwrap();
        assert_eq!(far.mid_f64(), 0.0);
        assert_eq!(far.rad_f64(), 0.0);
        // Straddling the edge: contains 0, stays tiny.
        let v = eta0_hat(&Ball::from_endpoints(
            Float::with_val(p, 0.99),
            Float::with_val(p, 1.01),
        ))
        .unwrap();
        assert!(v.contains_zero());
        assert!(upper_f64(&v) < 1e-6);
    }

    /// Cross-route: the edge series agrees with the displayed closed form
    /// where both apply.
    #[test]
    fn eta0_hat_edge_series_matches_direct_form() {
        let p = 160;
        for u in ["0.97", "0.8", "0.76"] {
            let w = oracle(p, u);
            let one = Ball::one(p);
            let pi = rigor::pi(p);
            let pi2 = pi.sqr();
            let afac = pi2.div(&pi2.add_i64(4)).unwrap();
            let omw = one.sub(&w);
            let direct = afac.mul(
                &pi2.mul_2exp(1)
                    .div_i64(3)
                    .mul(&omw.pow_i(3).unwrap())
                    .add(&omw.mul(&one.sub(&pi.mul(&w).cos())).mul_2exp(2))
                    .sub(&pi.recip().unwrap().mul_2exp(3).mul(&pi.mul(&w).sin())),
            );
            let series = eta0_hat_edge(&one.sub(&w)).unwrap();
            assert!(
                direct.overlaps(&series),
                "η̂₀ route mismatch at u = {u}: direct {direct} vs series {series}"
            );
        }
    }

    #[test]
    fn varphi_hat0_frozen_values() {
        let p = 128;
        // φ̂₀(1/2) = π/4 exactly.
        let at_half = varphi_hat0(&Ball::from_ratio(p, 1, 2)).unwrap();
        assert!(at_half.overlaps(&rigor::pi(p).mul_2exp(-2)));
        let cases = [
            ("0.5", "0.78539816339744830961566084581987572104929234984378"),
            ("0.93", "0.20144337164018446423691178933127889523981734097778"),
            ("0.999", "0.0032832992484266836199030731481577497866706506261798"),
        ];
        for (u, want) in cases {
            let v = varphi_hat0(&oracle(p, u)).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "φ̂₀({u}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-25);
        }
        // Unit value at 0, zero beyond the support.
        assert!(varphi_hat0(&Ball::zero(p))
            .unwrap()
            .contains_float(&Float::with_val(p, 1)));
        let far = varphi_hat0(&Ball::from_i64(p, 2)).unwrap();
        assert_eq!(far.rad_f64(), 0.0);
        assert_eq!(far.mid_f64(), 0.0);
    }

    #[test]
    fn varphi_hat_frozen_values() {
        let p = 128;
        let pp = pp_desk(p);
        // Unit mass at 0.
        let at0 = varphi_hat(&Ball::zero(p), &pp).unwrap();
        assert!(at0.contains_float(&Float::with_val(p, 1)));
        assert!(at0.rad_f64() < 1e-25);
        let cases = [
            ("0.5", "0.95490207222955184492018036001217932021554904366656"),
            ("1.3", "0.77812880237226122261294276662531256892054324440457"),
            ("2.45", "0.11951685964854254139489123296803800803375678271743"),
            ("2.59", "0.0015779218773504404750870728935979666219795466988401"),
            ("2.6", "0.00066722251225879147247763035399963654385525890248116"),
        ];
        for (t, want) in cases {
            let v = varphi_hat(&oracle(p, t), &pp).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "φ̂({t}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-22, "φ̂({t}) too wide: {v}");
            // Evenness.
            assert!(varphi_hat(&oracle(p, t).neg(), &pp).unwrap().overlaps(&w));
        }
        // Exactly zero outside the support [−(X+δ), X+δ] = [−2.65, 2.65].
        let far = varphi_hat(&Ball::from_ratio(p, 27, 10), &pp).unwrap();
        assert_eq!(far.mid_f64(), 0.0);
        assert_eq!(far.rad_f64(), 0.0);
        // Straddling the support edge: contains 0.
        let v = varphi_hat(
            &Ball::from_endpoints(Float::with_val(p, 2.64), Float::with_val(p, 2.66)),
            &pp,
        )
        .unwrap();
        assert!(v.contains_zero());
    }

    #[test]
    fn phi_params_shape_condition() {
        let p = 96;
        assert!(matches!(
            PhiParams::new(&Ball::from_f64(p, 0.05), &Ball::from_ratio(p, 1, 10)),
            Err(Error::OutOfDomain { .. })
        ));
        // X = (1/π)log(t/5) at t = 30 is below the δ = 0.842 threshold.
        assert!(PhiParams::large_height(&Ball::from_i64(p, 30), p).is_err());
        assert!(PhiParams::large_height(&Ball::from_i64(p, 40), p).is_ok());
        let pp = pp_large_1e6(p);
        assert!(pp.x().overlaps(&oracle(
            p,
            "3.8853135945497902977603935708142710737401551090461"
        )));
    }

    // -------------------------------------------------------------------
    // The majorant V / F.
    // -------------------------------------------------------------------

    #[test]
    fn f_eval_frozen_values() {
        let p = 128;
        let pp = pp_desk(p);
        let cases = [
            ("0", "0.039725005141545978899267218693591165822979003732794"),
            ("0.00001", "0.039720005321406379387531927773990809872337283061271"),
            ("0.19", "0.00001735666583623222055719851783559040185069033060966"),
            ("0.5", "0.00072308747261665129783568611767001186162961498426972"),
            ("1.0", "0.000011645002769151322914107414896513474454602079117111"),
            ("2.0", "0.00010593510117875469380960173552341103977998263957617"),
            ("3.7", "0.0000011986846894728680844050918328798742507881560387882"),
        ];
        for (r, want) in cases {
            let v = f_eval(&oracle(p, r), &pp).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "F({r}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-20, "F({r}) too wide: {v}");
            // Evenness.
            assert!(f_eval(&oracle(p, r).neg(), &pp).unwrap().overlaps(&w));
        }
        // A ball straddling the η₀ Taylor boundary stays finite and no
        // wider than the input width times the slope of F warrants.
        let v = f_eval(
            &Ball::from_endpoints(Float::with_val(p, 0.009), Float::with_val(p, 0.011)),
            &pp,
        )
        .unwrap();
        assert!(v.is_finite());
        assert!(v.rad_f64() < 1e-3);
    }

    #[test]
    fn v_functional_equation_on_reals() {
        let p = 96;
        let pp = pp_desk(p);
        let zero_im = Ball::zero(p);
        for r in ["0.3", "1.0", "2.7"] {
            let rb = oracle(p, r);
            let (vp, ip) = v_eval(&rb, &zero_im, &pp).unwrap();
            let (vm, im) = v_eval(&rb.neg(), &zero_im, &pp).unwrap();
            assert_eq!(ip.rad_f64(), 0.0);
            assert_eq!(im.rad_f64(), 0.0);
            assert!(
                vp.sub(&vm).overlaps(&rb),
                "V({r}) − V(−{r}) = {} should be {r}",
                vp.sub(&vm)
            );
            // V(−r) = F(r) is nonnegative for these parameters.
            assert!(upper_f64(&vm) >= 0.0);
        }
    }

    #[test]
    fn v_eval_domain_errors() {
        let p = 96;
        let pp = pp_desk(p);
        let zero = Ball::zero(p);
        // Real ball containing 0.
        assert!(matches!(
            v_eval(
                &Ball::from_endpoints(Float::with_val(p, -0.1), Float::with_val(p, 0.1)),
                &zero,
                &pp
            ),
            Err(Error::DomainStraddle { .. })
        ));
        // Exactly-zero real argument.
        assert!(matches!(
            v_eval(&zero, &zero, &pp),
            Err(Error::DomainStraddle { .. })
        ));
        // Complex argument with real part straddling 0.
        assert!(matches!(
            v_eval(
                &Ball::from_endpoints(Float::with_val(p, -0.1), Float::with_val(p, 0.1)),
                &Ball::from_ratio(p, 1, 2),
                &pp
            ),
            Err(Error::DomainStraddle { .. })
        ));
    }

    #[test]
    fn v_eval_complex_frozen_values() {
        let p = 128;
        let pp = pp_desk(p);
        // V(0.25 − 0.15i), reached through the reflection identity.
        let (re, im) = v_eval(
            &Ball::from_ratio(p, 1, 4),
            &Ball::from_ratio(p, -3, 20),
            &pp,
        )
        .unwrap();
        assert!(re.overlaps(&oracle(
            p,
            "0.25265504391172455314383211266300542194499682563698"
        )));
        assert!(im.overlaps(&oracle(
            p,
            "-0.16061855388206291387483554528455167438820565323074"
        )));
        assert!(re.rad_f64() < 1e-20 && im.rad_f64() < 1e-20);
        // −2·Re V(i/2) at the desk parameters.
        let (re, _) = v_eval(&Ball::zero(p), &Ball::from_ratio(p, 1, 2), &pp).unwrap();
        let want = oracle(p, "4.0898937461101603856429296669531399797320680363004");
        assert!(re.mul_i64(-2).overlaps(&want), "−2ReV(i/2) = {}", re.mul_i64(-2));
    }

    /// The algebraic identity behind the wide-ball bracket display:
    /// `δ²η₀(δr)/(12X²) = 1/(12X²r²) − S3(δr)·π²/(24(π²+4)X²r²)`.
    #[test]
    fn eta0_identity_matches_display_rearrangement() {
        let p = 128;
        let pp = pp_desk(p);
        let pi2 = rigor::pi(p).sqr();
        for r in ["0.37", "3.21"] {
            let rb = oracle(p, r);
            let lhs = pp
                .delta()
                .sqr()
                .mul(&eta0_ball(&pp.delta().mul(&rb)).unwrap())
                .div(&pp.x().sqr().mul_i64(12))
                .unwrap();
            let inv = pp.x().sqr().mul(&rb.sqr()).mul_i64(12).recip().unwrap();
            let s3t = s3_ball(&pp.delta().mul(&rb))
                .mul(&pi2)
                .div(&pi2.add_i64(4).mul(&pp.x().sqr()).mul(&rb.sqr()).mul_i64(24))
                .unwrap();
            let rhs = inv.sub(&s3t);
            assert!(lhs.overlaps(&rhs), "identity fails at r = {r}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn f_hat_zero_closed_form_and_transform_cross_check() {
        let p = 128;
        let pp = pp_desk(p);
        let closed = f_hat_zero(&pp).unwrap();
        assert!(closed.overlaps(&oracle(
            p,
            "0.0062885818910176161410067671739895843067792907677667"
        )));
        // Numeric route: F̂(0) = 2∫₀^∞ F, with the quartic envelope tail.
        let f = WeightedFIntegrand {
            pp: pp.clone(),
            shift: None,
            with_zero_weight: false,
        };
        let quadr = Quadrature::new(60, p);
        // Segment widths stay below ~1.6 so the cos²(πXz) growth on the
        // doubled quadrature disks stays within the node-count budget.
        let cuts = [
            "0", "0.35", "1.05", "2.55", "4.05", "5.55", "7.05", "8.55", "10.05", "11.55",
            "12",
        ];
        let mut total = Ball::zero(p);
        for w in cuts.windows(2) {
            total = total.add(
                &quadr
                    .integrate(&f, &oracle(p, w[0]), &oracle(p, w[1]), 32)
                    .unwrap(),
            );
        }
        total = total.mul_2exp(1);
        let (c, _) = f_envelope(&pp).unwrap();
        // 2∫_R^∞ C/(X³r⁴) dr = 2C/(3X³R³).
        let tail = c
            .mul_2exp(1)
            .div(&pp.x().pow_i(3).unwrap().mul(&Ball::from_i64(p, 3 * 12 * 12 * 12)))
            .unwrap();
        let numeric = total.add(&tail.clamp_nonnegative().hull(&Ball::zero(p)));
        assert!(
            numeric.overlaps(&closed),
            "F̂(0) cross-route mismatch: numeric {numeric} vs closed {closed}"
        );
    }

    #[test]
    fn f_quadratic_decay_bound_at_selected_points() {
        let p = 128;
        // The quartic-decay comparison is proved for δ = 0.842.
        let pp = pp_large_1e6(p);
        let cases = [
            (
                "1",
                "0.000032119403557082020055060582801729613155680954491088",
                "0.000042624743211284419522934635390820467504967664181837",
            ),
            (
                "1.176",
                "0.00000072495436703626513375341127620454257640077464449347",
                "0.000022286018601825250406995757889956327359643027259217",
            ),
            (
                "2",
                "0.00000044798265114546457499535933252215382262628336648241",
                "0.0000026640464507052762201834147119262792190604790113648",
            ),
            (
                "5",
                "0.00000000097919263058545881604750175907218502720800880950982",
                "0.00000006819958913805507123669541662531274800794826269094",
            ),
            (
                "17",
                "0.00000000013216916296224993350130937132538886553862711839005",
                "0.00000000051034761570484572170992487387388162863193285738721",
            ),
        ];
        for (r, f_want, bound_want) in cases {
            let rb = oracle(p, r);
            let v = f_eval(&rb, &pp).unwrap();
            assert!(v.overlaps(&oracle(p, f_want)), "F({r}) = {v}");
            let bound = pp
                .x()
                .pow_i(3)
                .unwrap()
                .mul(&rb.sqr().sqr())
                .mul_i64(400)
                .recip()
                .unwrap();
            assert!(bound.overlaps(&oracle(p, bound_want)));
            assert!(
                v.certainly_le(&bound),
                "F({r}) = {v} not certified ≤ {bound}"
            );
        }
        // Certified grid over [1, 30]: the pointwise margin of the bound
        // is a few percent, so point balls are checked densely rather
        // than interval hulls (which lose a factor (hi/lo)⁴).
        for i in 0i64..=(29 * 8) {
            let r = Ball::from_ratio(p, 8 + i, 8);
            let v = f_eval(&r, &pp).unwrap();
            let bound = pp
                .x()
                .pow_i(3)
                .unwrap()
                .mul(&r.sqr().sqr())
                .mul_i64(400)
                .recip()
                .unwrap();
            assert!(
                v.certainly_le(&bound),
                "decay bound not certified at r = {}: {v} vs {bound}",
                r.mid_f64()
            );
        }
        // Scoping: the same comparison fails at the desk parameters, as the
        // proof requires the large-height mollifier width.
        let desk = pp_desk(p);
        let rb = oracle(p, "1.176");
        let v = f_eval(&rb, &desk).unwrap();
        let bound = desk
            .x()
            .pow_i(3)
            .unwrap()
            .mul(&rb.sqr().sqr())
            .mul_i64(400)
            .recip()
            .unwrap();
        assert!(
            bound.certainly_lt(&v),
            "expected the δ = 0.1 parameters to violate the bound at r = 1.176"
        );
    }

    // -------------------------------------------------------------------
    // Spectral weight k.
    // -------------------------------------------------------------------

    #[test]
    fn k_eval_frozen_values() {
        let p = 128;
        let cases = [
            ("0", "0.79369076224246216081868947619482205381365753879212"),
            ("2", "0.019662504803958541553685192254887643096833614087674"),
            ("5", "-0.024021749236627108724148174121364979967627825630354"),
            ("12", "0.28085520711336779821721785775019670509948475741542"),
            ("178", "13.25579181167244846458700282686633526997116668433"),
        ];
        for (r, want) in cases {
            let v = k_eval(&oracle(p, r)).unwrap();
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "k({r}) = {v}, want {w}");
            assert!(v.rad_f64() < 1e-25);
        }
        // Evenness.
        let v5 = k_eval(&Ball::from_i64(p, -5)).unwrap();
        assert!(v5.overlaps(&oracle(p, "-0.024021749236627108724148174121364979967627825630354")));
        // Closed form at 0: (1/8 + 1/(3√3)) + (log 2π + 2γ)/(2π).
        let s3 = Ball::from_i64(p, 3).sqrt().unwrap().mul_i64(3);
        let closed = Ball::from_ratio(p, 1, 8)
            .add(&s3.recip().unwrap())
            .add(
                &rigor::pi(p)
                    .mul_2exp(1)
                    .ln()
                    .unwrap()
                    .add(&rigor::euler_gamma(p).mul_2exp(1))
                    .div(&rigor::pi(p).mul_2exp(1))
                    .unwrap(),
            );
        assert!(k_eval(&Ball::zero(p)).unwrap().overlaps(&closed));
        // Spot checks of the two-sided bound.
        assert!(k_eval(&Ball::zero(p))
            .unwrap()
            .certainly_le(&Ball::from_ratio(p, 4, 5)));
        assert!(k_eval(&Ball::from_i64(p, 5))
            .unwrap()
            .certainly_le(&Ball::from_ratio(p, 5, 12)));
    }

    #[test]
    fn k_complex_frozen_values() {
        let p = 128;
        let z = CBall::new(oracle(p, "0.3"), oracle(p, "0.2"));
        let v = k_c(&z).unwrap();
        assert!(v.re.overlaps(&oracle(
            p,
            "0.60360850264613810419488244143432380901286520973507"
        )));
        assert!(v.im.overlaps(&oracle(
            p,
            "-0.20285849907709299603366712134355637133254821016302"
        )));
        let z = CBall::new(oracle(p, "5"), oracle(p, "0.05"));
        let v = k_c(&z).unwrap();
        assert!(v.re.overlaps(&oracle(
            p,
            "-0.02403761442605776862484763779455414952376881487841"
        )));
        assert!(v.im.overlaps(&oracle(
            p,
            "0.00098841308096568947324187239035242823709185221996816"
        )));
    }

    #[test]
    fn k_upper_bound_certified() {
        assert!(k_upper_certify(64).unwrap() >= 1);
    }

    // -------------------------------------------------------------------
    // Large-height closed forms.
    // -------------------------------------------------------------------

    #[test]
    fn large_t_bound_terms_frozen_values() {
        let p = 128;
        let pp = pp_large_1e6(p);
        let t = Ball::from_i64(p, 1_000_000);
        let (ktr, krfr, vi2, vi2t) = large_t_bound_terms(&t, &pp).unwrap();
        assert!(ktr.overlaps(&oracle(
            p,
            "412.73409095313484288841431105667380661177347462778"
        )));
        assert!(krfr.overlaps(&oracle(
            p,
            "0.0044162798470132597235986482430358670982017317283616"
        )));
        assert!(vi2.overlaps(&oracle(
            p,
            "104.20635719538408461758995227647554817115490192689"
        )));
        assert!(vi2t.overlaps(&oracle(
            p,
            "0.0000000000000000000000044693057861085455607979149140162655963414354550818"
        )));
        // krFr is exactly 1/(15X²).
        assert!(krfr.overlaps(&pp.x().sqr().mul_i64(15).recip().unwrap()));
        // Direct substitution at X = 3.
        let pp3 = PhiParams::new(&Ball::from_i64(p, 3), &Ball::from_ratio(p, 421, 500)).unwrap();
        let (_, _, vi2_x3, _) = large_t_bound_terms(&Ball::from_i64(p, 100), &pp3).unwrap();
        assert!(vi2_x3.overlaps(&oracle(
            p,
            "15.948278710003487101341911384611736705795917677795"
        )));
        // Domain errors.
        assert!(matches!(
            large_t_bound_terms(&Ball::from_i64(p, 5), &pp),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            large_t_bound_terms(&t, &pp_desk(p)),
            Err(Error::OutOfDomain { .. })
        ));
    }

    /// The two closed-form bounds dominate the direct evaluations they
    /// were proved for.
    #[test]
    fn large_t_bounds_dominate_direct_values() {
        let p = 128;
        let pp = pp_large_1e6(p);
        let t = Ball::from_i64(p, 1_000_000);
        let (_, _, vi2, vi2t) = large_t_bound_terms(&t, &pp).unwrap();
        let half = Ball::from_ratio(p, 1, 2);
        // −2·Re V(i/2) ≤ Vi2.
        let (re, _) = v_eval(&Ball::zero(p), &half, &pp).unwrap();
        let direct = re.mul_i64(-2);
        assert!(direct.overlaps(&oracle(
            p,
            "85.06613230748194661254888182094288050320228214819"
        )));
        assert!(direct.certainly_le(&vi2));
        // |2·Re V(i/2 − T)| ≤ Vi2T.
        let (re, _) = v_eval(&t.neg(), &half, &pp).unwrap();
        let direct = re.mul_2exp(1).abs();
        assert!(direct.overlaps(&oracle(
            p,
            "0.00000000000000000000000093659802350550122929173310083893794855187998182042"
        )));
        assert!(direct.certainly_le(&vi2t));
    }

    // -------------------------------------------------------------------
    // Certifications.
    // -------------------------------------------------------------------

    #[test]
    fn f_nonnegative_certified_for_both_parameter_sets() {
        let p = 64;
        let desk = pp_desk(p);
        assert!(f_nonneg_certify(&desk, 50.0).unwrap() >= 1);
        let large = PhiParams::large_height(&Ball::from_i64(p, 200_000), p).unwrap();
        assert!(f_nonneg_certify(&large, 50.0).unwrap() >= 1);
        // rmax below the analytic tail threshold is refused.
        assert!(matches!(
            f_nonneg_certify(&desk, 2.0),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn varphi_hat_nonnegative_certified() {
        let p = 64;
        assert!(varphi_nonneg_certify(&pp_desk(p)).unwrap() >= 2);
    }

    #[test]
    fn s3_envelope_certified() {
        let p = 96;
        // Frozen supremum sample near the maximizer.
        let y = oracle(p, "0.734");
        let v = s3_ball(&y).mul(&y.sqr());
        assert!(v.overlaps(&oracle(
            p,
            "0.57604902307758089610482241412820954227987603296144"
        )));
        // The envelope constant used by the quartic-decay chain:
        // 24(π²+4)(0.842)²/400.
        let pi2 = rigor::pi(p).sqr();
        let limit = pi2
            .add_i64(4)
            .mul_i64(24)
            .mul(&Ball::from_ratio(p, 421, 500).sqr())
            .div_i64(400);
        assert!(limit.overlaps(&oracle(
            p,
            "0.58998301287683496263060256463417173680979249519331"
        )));
        assert!(s3_y2_upper_certify(&limit, 64).unwrap() >= 1);
    }

    #[test]
    fn curvature_floor_certified() {
        let p = 96;
        // Frozen spot value.
        let v = half_curvature(&oracle(p, "0.2")).unwrap();
        assert!(v.overlaps(&oracle(
            p,
            "-3.9770134546729400304576459578141407139372297538033"
        )));
        assert!(curvature_floor_certify(64).unwrap() >= 1);
    }

    #[test]
    fn sinc_derivative_frozen_values() {
        let p = 128;
        let cases = [
            ("0.3", "-0.099102888040641880140307526829026713384087632811193", true),
            ("2.7", "-0.39346703205485528588599132333400164452571614644835", true),
            ("0.3", "-0.32438143526685271608235230675657982303218948706742", false),
            ("2.7", "0.13316821625032616193182576326300838576109476675185", false),
        ];
        for (x, want, first) in cases {
            let xb = oracle(p, x);
            let v = if first {
                sinc_d1(&xb).unwrap()
            } else {
                sinc_d2(&xb).unwrap()
            };
            let w = oracle(p, want);
            assert!(v.overlaps(&w), "sinc derivative at {x}: {v}, want {w}");
            assert!(v.rad_f64() < 1e-25);
        }
        // Parity.
        let d1m = sinc_d1(&oracle(p, "-0.3")).unwrap();
        assert!(d1m.overlaps(&oracle(p, "0.099102888040641880140307526829026713384087632811193")));
        let d2m = sinc_d2(&oracle(p, "-2.7")).unwrap();
        assert!(d2m.overlaps(&oracle(p, "0.13316821625032616193182576326300838576109476675185")));
        // A straddling ball hulls both signs.
        let wide = sinc_d1(&Ball::from_endpoints(
            Float::with_val(p, -0.1),
            Float::with_val(p, 0.2),
        ))
        .unwrap();
        assert!(wide.contains_zero());
    }

    #[test]
    fn weighted_integrand_rejects_pole_reaching_disks() {
        let p = 96;
        let f = WeightedFIntegrand {
            pp: pp_desk(p),
            shift: None,
            with_zero_weight: false,
        };
        // Segment [0.05, 1]: the quadrature disk has radius 0.95 around
        // 0.525, reaching left to −0.425 < −1/(2X) ≈ −0.196.
        let quadr = Quadrature::new(20, p);
        assert!(quadr
            .integrate(&f, &Ball::from_f64(p, 0.05), &Ball::one(p), 8)
            .is_err());
    }
}
