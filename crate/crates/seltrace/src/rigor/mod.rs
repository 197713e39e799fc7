//! Ball arithmetic: midpoint–radius intervals over arbitrary-precision floats.
//!
//! A [`Ball`] `m ± r` encloses every real number `x` with `|x - m| <= r`.
//! Midpoints are MPFR floats at a caller-chosen working precision and are
//! rounded to nearest; radii are low-precision floats on which every
//! operation rounds *upward*, so the radius can only over-estimate the true
//! error. Each arithmetic operation adds the worst-case midpoint rounding
//! error into the radius, which makes every op a theorem: the result ball
//! contains the exact image of every point of the input balls.
//!
//! Total operations (`+`, `-`, `*`, `exp`, `cos`, ...) are infallible: if an
//! overflow ever produced a non-finite midpoint the result degrades to a
//! whole-line enclosure (infinite radius), which no `certainly_*` predicate
//! will ever certify. Domain-restricted operations (`div`, `ln`, `sqrt`,
//! ...) return an error when the input ball straddles the domain boundary,
//! rather than guessing.
//!
//! The module also provides certified enclosures of the handful of
//! classical constants the trace-formula evaluation needs (`pi`,
//! `euler_gamma`, `zeta(3)`, `zeta'(2)`, `zeta'(-1)`, Dirichlet L-values at
//! 2 for the quadratic characters of conductor 3 and 4), each carrying a
//! fully proved error term.

mod ball;
pub(crate) mod cball;
pub(crate) mod em;

pub use ball::Ball;

use crate::Result;
use rug::float::{Constant, Round};
use rug::Float;

/// Radius precision in bits. Radii only need magnitude information.
pub(crate) const RAD_PREC: u32 = 32;

fn const_directed(prec: u32, c: Constant) -> Ball {
    let lo = Float::with_val_round(prec, c, Round::Down).0;
    let hi = Float::with_val_round(prec, c, Round::Up).0;
    Ball::from_endpoints(lo, hi)
}

/// Enclosure of pi.
pub fn pi(prec: u32) -> Ball {
    const_directed(prec, Constant::Pi)
}

/// Enclosure of log 2.
pub fn log2(prec: u32) -> Ball {
    const_directed(prec, Constant::Log2)
}

/// Enclosure of the Euler–Mascheroni constant.
pub fn euler_gamma(prec: u32) -> Ball {
    const_directed(prec, Constant::Euler)
}

/// Enclosure of Catalan's constant, which equals `L(2, chi)` for the
/// nontrivial character mod 4.
pub fn catalan(prec: u32) -> Ball {
    const_directed(prec, Constant::Catalan)
}

/// Enclosure of `zeta(3)`.
pub fn zeta3(prec: u32) -> Ball {
    let mut lo = Float::with_val(prec, 3);
    lo.zeta_round(Round::Down);
    let mut hi = Float::with_val(prec, 3);
    hi.zeta_round(Round::Up);
    Ball::from_endpoints(lo, hi)
}

/// Enclosure of `zeta'(2) = -sum_{n>=2} log(n)/n^2`.
pub fn zeta_prime_2(prec: u32) -> Ball {
    em::neg_log_over_sq_sum(prec)
}

/// Enclosure of `zeta'(-1)`.
///
/// Differentiating the functional equation
/// `zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)` at `s = -1`
/// gives the closed form
/// `zeta'(-1) = -(log(2 pi) - 1 + gamma)/12 + zeta'(2)/(2 pi^2)`,
/// which reduces the problem to the certified `zeta'(2)` series.
pub fn zeta_prime_m1(prec: u32) -> Ball {
    let p = prec + 16;
    let pi = pi(p);
    let two_pi = pi.mul_i64(2);
    let log_term = two_pi.ln().expect("2*pi > 0").add(&euler_gamma(p)).sub_i64(1);
    let first = log_term.div_i64(-12);
    let second = zeta_prime_2(p)
        .div(&pi.sqr().mul_i64(2))
        .expect("2*pi^2 > 0");
    first.add(&second).with_prec(prec)
}

/// Enclosure of `L(2, chi)` for the quadratic character mod 3:
/// `sum_{k>=0} [ (3k+1)^{-2} - (3k+2)^{-2} ]`.
pub fn l2_chi3(prec: u32) -> Ball {
    em::l2_chi3(prec)
}

/// Enclosure of `L(2, chi)` for the quadratic character mod 4 (Catalan).
pub fn l2_chi4(prec: u32) -> Ball {
    catalan(prec)
}

/// Named constant lookup, mainly for diagnostics and the CLI.
pub fn constant(name: &str, prec: u32) -> Result<Ball> {
    Ok(match name {
        "pi" => pi(prec),
        "log2" => log2(prec),
        "euler_gamma" => euler_gamma(prec),
        "catalan" | "l2_chi4" => catalan(prec),
        "zeta3" => zeta3(prec),
        "zeta_prime_2" => zeta_prime_2(prec),
        "zeta_prime_m1" => zeta_prime_m1(prec),
        "l2_chi3" => l2_chi3(prec),
        other => {
            return Err(crate::Error::Parse {
                location: "constant name".into(),
                reason: format!("unknown constant `{other}`"),
            })
        }
    })
}
