//! Crate-internal complex balls: explicit real/imaginary [`Ball`] pairs.
//!
//! This is deliberately *not* part of the public interval surface — the
//! only complex evaluations in the crate are the boundary-disk modulus
//! bounds required by the quadrature error term, and the handful of
//! analytic kernels in the trace formula. Everything here reduces to real
//! ball operations, so soundness is inherited directly.

use super::Ball;
use crate::{Error, Result};

/// A rectangular complex enclosure `re + i*im`.
#[derive(Clone, Debug)]
pub(crate) struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn from_real(re: Ball) -> Self {
        let p = re.prec();
        CBall {
            re,
            im: Ball::zero(p),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> CBall {
        CBall::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBall::new(re, im)
    }

    /// Multiply by a real ball.
    pub fn scale(&self, s: &Ball) -> CBall {
        CBall::new(self.re.mul(s), self.im.mul(s))
    }

    /// `|z|^2` as a certified nonnegative ball.
    pub fn abs_sq(&self) -> Ball {
        // the sum of two one-sided squares can pick up an
        // epsilon-negative lower endpoint from midpoint-radius rounding;
        // |z|^2 >= 0 always, so clamping is a sound intersection
        self.re.sqr().add(&self.im.sqr()).clamp_nonnegative()
    }

    /// Certified enclosure of `|z|`.
    pub fn abs(&self) -> Ball {
        // abs_sq clamps to [0, upper], so sqrt cannot fail
        self.abs_sq().sqrt().expect("abs_sq upper >= 0")
    }

    /// Certified quotient; errors when the divisor's modulus interval
    /// touches zero (possible pole).
    pub fn div(&self, o: &CBall) -> Result<CBall> {
        let d = o.abs_sq();
        if !d.certainly_positive() {
            return Err(Error::DomainStraddle {
                op: "complex div",
                detail: format!("divisor modulus^2 {d} touches zero"),
            });
        }
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&d)?;
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&d)?;
        Ok(CBall::new(re, im))
    }

    pub fn recip(&self) -> Result<CBall> {
        CBall::from_real(Ball::one(self.prec())).div(self)
    }

    /// `exp(z) = e^x (cos y + i sin y)`.
    pub fn exp(&self) -> CBall {
        let ex = self.re.exp();
        CBall::new(ex.mul(&self.im.cos()), ex.mul(&self.im.sin()))
    }

    /// `cos(z) = cos x cosh y - i sin x sinh y`.
    pub fn cos(&self) -> CBall {
        CBall::new(
            self.re.cos().mul(&self.im.cosh()),
            self.re.sin().mul(&self.im.sinh()).neg(),
        )
    }

    /// `sin(z) = sin x cosh y + i cos x sinh y`.
    pub fn sin(&self) -> CBall {
        CBall::new(
            self.re.sin().mul(&self.im.cosh()),
            self.re.cos().mul(&self.im.sinh()),
        )
    }

    /// `sinh(z) = sinh x cos y + i cosh x sin y`.
    pub fn sinh(&self) -> CBall {
        CBall::new(
            self.re.sinh().mul(&self.im.cos()),
            self.re.cosh().mul(&self.im.sin()),
        )
    }

    /// `cosh(z) = cosh x cos y + i sinh x sin y`.
    pub fn cosh(&self) -> CBall {
        CBall::new(
            self.re.cosh().mul(&self.im.cos()),
            self.re.sinh().mul(&self.im.sin()),
        )
    }

    /// Horner evaluation of a real-coefficient polynomial
    /// `c[0] + c[1] z + ... + c[n] z^n`.
    pub fn horner(&self, coeffs: &[Ball]) -> CBall {
        let p = self.prec();
        let mut acc = CBall::from_real(Ball::zero(p));
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            acc.re = acc.re.add(c);
        }
        acc
    }

    /// A certified *lower* bound on `|sinh z|`, via
    /// `|sinh(x+iy)|^2 = sinh^2 x + sin^2 y`.
    pub fn sinh_abs_sq(&self) -> Ball {
        self.re.sinh().sqr().add(&self.im.sin().sqr())
    }

    /// A certified interval for `|cosh z|^2 = sinh^2 x + cos^2 y`.
    pub fn cosh_abs_sq(&self) -> Ball {
        self.re.sinh().sqr().add(&self.im.cos().sqr())
    }

    /// Principal-branch logarithm, restricted to the right half-plane
    /// (where `arg z = atan(im/re)` holds without quadrant analysis).
    pub fn ln(&self) -> Result<CBall> {
        if !self.re.certainly_positive() {
            return Err(Error::DomainStraddle {
                op: "complex ln",
                detail: format!("re {} not strictly positive", self.re),
            });
        }
        let re = self.abs_sq().ln()?.mul_2exp(-1);
        let im = self.im.div(&self.re)?.atan();
        Ok(CBall::new(re, im))
    }
}
