//! Euler–Maclaurin evaluation of the two slowly-convergent constant series
//! (`zeta'(2)` and `L(2, chi)` for the character mod 3), with fully
//! certified remainders.
//!
//! For a smooth positive integrand `f` with explicitly computable
//! derivatives, Euler–Maclaurin gives
//!
//! ```text
//! sum_{k >= N} f(k) = int_N^inf f + f(N)/2
//!                     - sum_{j=1}^m B_{2j}/(2j)! f^(2j-1)(N) + R_m,
//! |R_m| <= 2 zeta(2m)/(2 pi)^{2m} int_N^inf |f^(2m)(x)| dx .
//! ```
//!
//! Both series used here have closed-form derivative coefficients, so every
//! term — including the remainder integral — is evaluated in ball
//! arithmetic and the final enclosure is a theorem.

use super::Ball;
use rug::Float;

/// Exact Bernoulli numbers `B_2, B_4, ..., B_40` as (numerator,
/// denominator) pairs.
const BERNOULLI: [(i128, i64); 20] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
    (-26315271553053477373, 1919190),
    (2929993913841559, 6),
    (-261082718496449122051, 13530),
];

fn ball_i128(prec: u32, v: i128) -> Ball {
    Ball::from_float(Float::with_val(prec, v))
}

pub(crate) fn bernoulli(prec: u32, j: usize) -> Ball {
    let (num, den) = BERNOULLI[j - 1];
    ball_i128(prec, num)
        .div(&Ball::from_i64(prec, den))
        .expect("nonzero denominator")
}

/// `2 zeta(2m) / (2 pi)^{2m}`, rounded up into a ball upper bound.
/// We use `zeta(2m) < 2`.
fn em_remainder_factor(prec: u32, m: i64) -> Ball {
    let two_pi = super::pi(prec).mul_i64(2);
    Ball::from_i64(prec, 4)
        .div(&two_pi.pow_i(2 * m).expect("positive"))
        .expect("2 pi > 0")
}

/// Enclosure of `sum_{k >= kstart} (alpha*k + c)^{-2}`.
///
/// Requires `alpha >= 1`, `alpha*kstart + c >= 2`. Used for the tails of
/// the Dirichlet L-series at 2.
pub(crate) fn hurwitz2_tail(prec: u32, alpha: i64, c: i64, kstart: i64) -> Ball {
    let m: i64 = 20;
    let u = Ball::from_i64(prec, alpha * kstart + c);
    debug_assert!(alpha >= 1 && alpha * kstart + c >= 2);
    let alpha_b = Ball::from_i64(prec, alpha);

    // int_N^inf (alpha x + c)^-2 dx = u^{-1} / alpha
    let mut total = u.recip().expect("u > 0").div(&alpha_b).expect("alpha > 0");
    // f(N)/2 = u^{-2} / 2
    total = total.add(&u.sqr().recip().expect("u > 0").mul_2exp(-1));
    // EM terms: + B_{2j} alpha^{2j-1} u^{-2j-1}
    // (from -B_{2j}/(2j)! * f^(2j-1)(N) with f^(2j-1) = -(2j)! a^{2j-1} u^{-2j-1})
    for j in 1..=m {
        let term = bernoulli(prec, j as usize)
            .mul(&alpha_b.pow_i(2 * j - 1).expect("ok"))
            .div(&u.pow_i(2 * j + 1).expect("ok"))
            .expect("u > 0");
        total = total.add(&term);
    }
    // |R| <= 2 zeta(2m)/(2pi)^{2m} * (2m)! alpha^{2m-1} u^{-2m-1}
    let mut fact = Ball::one(prec);
    for i in 2..=(2 * m) {
        fact = fact.mul_i64(i);
    }
    let rem = em_remainder_factor(prec, m)
        .mul(&fact)
        .mul(&alpha_b.pow_i(2 * m - 1).expect("ok"))
        .div(&u.pow_i(2 * m + 1).expect("ok"))
        .expect("u > 0");
    total.widen(rem.abs().upper().to_f64_round(rug::float::Round::Up))
}

/// Enclosure of `L(2, chi_{-3}) = sum_{k>=0} [(3k+1)^{-2} - (3k+2)^{-2}]`.
pub(crate) fn l2_chi3(prec: u32) -> Ball {
    let p = prec + 32;
    let kcut: i64 = 700;
    let mut head = Ball::zero(p);
    for k in 0..kcut {
        let a = Ball::from_i64(p, 3 * k + 1).sqr().recip().expect("positive");
        let b = Ball::from_i64(p, 3 * k + 2).sqr().recip().expect("positive");
        head = head.add(&a.sub(&b));
    }
    head.add(&hurwitz2_tail(p, 3, 1, kcut))
        .sub(&hurwitz2_tail(p, 3, 2, kcut))
        .with_prec(prec)
}

/// Enclosure of `zeta'(2) = -sum_{n>=2} ln(n)/n^2`.
///
/// Head summed directly; tail by Euler–Maclaurin with the closed-form
/// derivatives `f^(k)(x) = (a_k ln x + b_k)/x^{2+k}` of `f = ln(x)/x^2`,
/// where `a_{k+1} = -(k+2) a_k`, `b_{k+1} = a_k - (k+2) b_k`.
pub(crate) fn neg_log_over_sq_sum(prec: u32) -> Ball {
    let p = prec + 32;
    let ncut: i64 = 2048; // tail starts at N = ncut
    let m: usize = 16;

    // derivative coefficients a_k, b_k for k = 0..=2m (exact in i128)
    let mut coef = Vec::with_capacity(2 * m + 1);
    let (mut a, mut b): (i128, i128) = (1, 0);
    coef.push((a, b));
    for k in 0..(2 * m) {
        let k2 = (k + 2) as i128;
        let (an, bn) = (-k2 * a, a - k2 * b);
        a = an;
        b = bn;
        coef.push((a, b));
    }

    let nf = Ball::from_i64(p, ncut);
    let ln_n = nf.ln().expect("N > 0");

    // head: sum_{n=2}^{N-1} ln n / n^2
    let mut head = Ball::zero(p);
    for n in 2..ncut {
        let nb = Ball::from_i64(p, n);
        let t = nb
            .ln()
            .expect("n > 0")
            .div(&nb.sqr())
            .expect("n^2 > 0");
        head = head.add(&t);
    }

    // int_N^inf ln x / x^2 dx = (ln N + 1)/N
    let mut tail = ln_n.add_i64(1).div(&nf).expect("N > 0");
    // f(N)/2
    tail = tail.add(
        &ln_n
            .div(&nf.sqr())
            .expect("N > 0")
            .mul_2exp(-1),
    );
    // EM terms: - B_{2j}/(2j)! * (a_{2j-1} ln N + b_{2j-1}) / N^{2j+1}
    let mut fact = Ball::one(p); // running (2j)!
    for j in 1..=m {
        fact = fact.mul_i64((2 * j - 1) as i64).mul_i64((2 * j) as i64);
        let (aj, bj) = coef[2 * j - 1];
        let numer = ball_i128(p, aj).mul(&ln_n).add(&ball_i128(p, bj));
        let term = bernoulli(p, j)
            .mul(&numer)
            .div(&fact)
            .expect("factorial > 0")
            .div(&nf.pow_i(2 * j as i64 + 1).expect("ok"))
            .expect("N > 0");
        tail = tail.sub(&term);
    }
    // |R| <= 2 zeta(2m)/(2pi)^{2m} int_N^inf (|a_{2m}| ln x + |b_{2m}|)/x^{2m+2} dx
    //      = fac * [ |a|((ln N)/(s-1) + 1/(s-1)^2) + |b|/(s-1) ] N^{1-s},  s = 2m+2
    let s1 = (2 * m + 1) as i64; // s - 1
    let (am, bm) = coef[2 * m];
    let s1b = Ball::from_i64(p, s1);
    let int_ln = ln_n
        .div(&s1b)
        .expect("s1 > 0")
        .add(&s1b.sqr().recip().expect("s1 > 0"));
    let integral = ball_i128(p, am.abs())
        .mul(&int_ln)
        .add(&ball_i128(p, bm.abs()).div(&s1b).expect("s1 > 0"))
        .div(&nf.pow_i(s1).expect("ok"))
        .expect("N > 0");
    let rem = em_remainder_factor(p, m as i64).mul(&integral);
    let tail = tail.widen(rem.abs().upper().to_f64_round(rug::float::Round::Up));

    head.add(&tail).neg().with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurwitz_tail_matches_direct_summation() {
        // sum_{k>=100} (3k+2)^{-2}: compare EM against a long direct sum
        // with an integral-bracket tail.
        let em = hurwitz2_tail(128, 3, 2, 100);
        let p = 192;
        let mut direct = Ball::zero(p);
        for k in 100..200_000i64 {
            direct = direct.add(&Ball::from_i64(p, 3 * k + 2).sqr().recip().unwrap());
        }
        // bracket: int_{200000}^inf <= rest <= int_{199999.66..}^inf ; use
        // crude two-sided bound rest in [1/(9*200001), 1/(9*199999)].
        let lo = direct.add(&Ball::from_ratio(p, 1, 9 * 200_001));
        let hi = direct.add(&Ball::from_ratio(p, 1, 9 * 199_999));
        assert!(em.overlaps(&lo.hull(&hi)), "EM tail {em} vs direct {lo}");
        assert!(em.rad_f64() < 1e-35);
    }
}
