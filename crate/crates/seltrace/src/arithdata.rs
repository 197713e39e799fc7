//! Arithmetic data for the length spectrum of the modular surface.
//!
//! The hyperbolic conjugacy classes of `PSL(2,Z)` are indexed by integer
//! traces `t >= 3`; the class with trace `t` contributes through the real
//! quadratic order of discriminant `t^2 - 4 = d * l^2` (with `d` the
//! fundamental discriminant), its class number `h(d)`, its fundamental
//! unit, and the value `L(1, chi_d)` of the attached Dirichlet L-function.
//! This module computes all of that with certified enclosures:
//!
//! * [`split_discriminant`] — factor `t^2 - 4` into fundamental
//!   discriminant and conductor.
//! * [`pqa_unit`] — the proper fundamental unit of the order of
//!   discriminant `d`, by Lagrange's continued-fraction (PQA) algorithm.
//! * [`class_number`] — the wide class number `h(d)`, by two independent
//!   routes: exhaustive reduced-form cycle counting, and a certified
//!   character-sum evaluation of `L(1, chi_d)` combined with the
//!   Dirichlet class number formula.
//! * [`local_factor`] — the Euler-type correction factor at primes
//!   dividing the conductor.
//! * [`prime_power_terms`] — the prime-power side of the length spectrum
//!   (`Lambda(n)` weights and the transform arguments `log n / pi`).
//! * [`db_build`] / [`db_to_bytes`] / [`db_from_bytes`] /
//!   [`db_write`] / [`db_read`] — a complete-by-trace binary database of
//!   class data with an integrity checksum.
//!
//! Everything downstream (the elliptic/hyperbolic sums of the trace
//! formula) consumes this data only through [`ClassEntry::l1`], which is
//! always *recomputed* from the integer invariants `(h, u, v)` via the
//! class number formula `L(1, chi_d) = 2 h log eps / sqrt(d)`, an exact
//! identity, so enclosure tightness is limited only by the working
//! precision, never by how the integers were found.

use crate::rigor::{self, Ball};
use crate::{Error, Result};
use rug::float::Round;
use rug::{Float, Integer, Rational};
use std::collections::HashMap;
use std::io::{Read as _, Write as _};
use std::path::Path;

/// Current on-disk format version written by [`db_to_bytes`].
pub const DB_FORMAT_VERSION: u32 = 1;

/// Magic bytes opening a serialized class database.
const DB_MAGIC: &[u8; 8] = b"QCLSDB1\n";

/// Hard cap on continued-fraction steps in [`pqa_unit`]; the fundamental
/// unit is always found at or before the end of the first period, so
/// hitting the cap indicates either an astronomically large input or a
/// bug, never a legitimate slow convergence for database-sized inputs.
const PQA_STEP_CAP: u64 = 4_000_000;

/// Largest byte length accepted for a serialized big integer. Fundamental
/// units of database-sized discriminants are tiny; this cap only guards
/// the decoder against adversarial length fields.
const DB_MAX_INT_BYTES: u32 = 1 << 20;

// ---------------------------------------------------------------------
// Small integer utilities
// ---------------------------------------------------------------------

/// Floor division for `i128` (rounds toward negative infinity).
fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

/// Trial-division factorization of `n >= 1`, smallest prime first.
pub(crate) fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    push(2, e);
    let mut p = 3u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    out
}

/// All primes strictly below `limit`, by the sieve of Eratosthenes.
pub(crate) fn primes_below(limit: u64) -> Vec<u64> {
    assert!(limit <= 100_000_000, "sieve limit out of supported range");
    let n = limit as usize;
    if n <= 2 {
        return Vec::new();
    }
    let mut is_prime = vec![true; n];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut i = 2usize;
    while i * i < n {
        if is_prime[i] {
            let mut j = i * i;
            while j < n {
                is_prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..n).filter(|&k| is_prime[k]).map(|k| k as u64).collect()
}

/// Kronecker symbol `(a | n)`, the fully extended quadratic residue
/// symbol. Implemented by the classical binary reciprocity algorithm.
pub(crate) fn kronecker(a: i64, n: i64) -> i32 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut k: i32 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let m = a.rem_euclid(8);
        if m == 3 || m == 5 {
            k = -k;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let m = n.rem_euclid(8);
            if m == 3 || m == 5 {
                k = -k;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            k = -k;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Whether `d` is a fundamental discriminant of a real quadratic field
/// (`d > 0`, `d ≡ 0 or 1 mod 4`, with the correct squarefree core).
pub(crate) fn is_fundamental_discriminant(d: u64) -> bool {
    if d < 5 {
        return false;
    }
    match d % 4 {
        1 => factorize(d).iter().all(|&(_, e)| e == 1),
        0 => {
            let m = d / 4;
            (m % 4 == 2 || m % 4 == 3) && factorize(m).iter().all(|&(_, e)| e == 1)
        }
        _ => false,
    }
}

/// Exact directed-rounding conversion of a big integer into a ball.
fn ball_from_integer(prec: u32, z: &Integer) -> Ball {
    let lo = Float::with_val_round(prec, z, Round::Down).0;
    let hi = Float::with_val_round(prec, z, Round::Up).0;
    Ball::from_endpoints(lo, hi)
}

/// Exact directed-rounding conversion of a rational into a ball.
fn ball_from_rational(prec: u32, q: &Rational) -> Ball {
    let lo = Float::with_val_round(prec, q, Round::Down).0;
    let hi = Float::with_val_round(prec, q, Round::Up).0;
    Ball::from_endpoints(lo, hi)
}

// ---------------------------------------------------------------------
// Discriminant splitting
// ---------------------------------------------------------------------

/// Splits `t^2 - 4` as `d * l^2` with `d` a fundamental discriminant.
///
/// Returns `(d, l)`. Requires `t >= 3` (so that `t^2 - 4 > 0` and the
/// conjugacy class is hyperbolic). The factorization runs on `t - 2` and
/// `t + 2` separately, so the cost is `O(sqrt(t))` rather than `O(t)`.
///
/// ```
/// # use seltrace::arithdata::split_discriminant;
/// assert_eq!(split_discriminant(3).unwrap(), (5, 1));
/// assert_eq!(split_discriminant(6).unwrap(), (8, 2));
/// assert_eq!(split_discriminant(7).unwrap(), (5, 3));
/// ```
pub fn split_discriminant(t: u64) -> Result<(u64, u64)> {
    if t < 3 {
        return Err(Error::OutOfDomain {
            op: "split_discriminant",
            detail: format!("trace t = {t} is not hyperbolic (need t >= 3)"),
        });
    }
    if t > 3_000_000_000 {
        return Err(Error::OutOfDomain {
            op: "split_discriminant",
            detail: format!("trace t = {t} exceeds the supported range"),
        });
    }
    // Merge the factorizations of t - 2 and t + 2.
    let mut exps: HashMap<u64, u32> = HashMap::new();
    for part in [t - 2, t + 2] {
        for (p, e) in factorize(part) {
            *exps.entry(p).or_insert(0) += e;
        }
    }
    // Squarefree core and cofactor square root of t^2 - 4.
    let mut core: u64 = 1;
    let mut root: u64 = 1;
    for (&p, &e) in &exps {
        if e % 2 == 1 {
            core *= p;
        }
        for _ in 0..e / 2 {
            root *= p;
        }
    }
    let (d, l) = if core % 4 == 1 {
        (core, root)
    } else {
        // core ≡ 2, 3 mod 4: the fundamental discriminant is 4 * core,
        // and in that case t^2 - 4 = core * root^2 forces root even.
        if root % 2 != 0 {
            return Err(Error::Invariant(format!(
                "split_discriminant({t}): core {core} needs even cofactor root, got {root}"
            )));
        }
        (4 * core, root / 2)
    };
    debug_assert_eq!(d * l * l + 4, t * t);
    Ok((d, l))
}

// ---------------------------------------------------------------------
// Fundamental units (PQA / continued fractions)
// ---------------------------------------------------------------------

/// Proper fundamental unit of the real quadratic order of discriminant
/// `d`: the smallest pair `(u, v)` with `u, v >= 1` and
/// `u^2 - d v^2 = ±4`, so that `eps = (u + v sqrt(d)) / 2` generates the
/// totally-positive-or-negative unit group of the order.
///
/// Implemented by Lagrange's PQA continued-fraction algorithm: for
/// `d ≡ 0 mod 4` the expansion of `sqrt(d/4)` (convergents solve the
/// classical Pell equation `p^2 - (d/4) q^2 = ±1`), for `d ≡ 1 mod 4`
/// the expansion of `(1 + sqrt(d)) / 2` (convergents `A/B` yield
/// `u = 2A - B`, `v = B`). Terminates within the first period by the
/// periodicity of the continued fraction of a quadratic irrational.
///
/// Errors with [`Error::OutOfDomain`] if `d` is not a positive
/// non-square discriminant (`d >= 5`, `d ≡ 0, 1 mod 4`).
///
/// ```
/// # use seltrace::arithdata::pqa_unit;
/// # use rug::Integer;
/// let (u, v) = pqa_unit(5).unwrap();
/// assert_eq!((u, v), (Integer::from(1), Integer::from(1)));
/// assert_eq!(pqa_unit(8).unwrap(), (Integer::from(2), Integer::from(1)));
/// assert_eq!(pqa_unit(12).unwrap(), (Integer::from(4), Integer::from(1)));
/// ```
pub fn pqa_unit(d: u64) -> Result<(Integer, Integer)> {
    if d < 5 || (d % 4 != 0 && d % 4 != 1) {
        return Err(Error::OutOfDomain {
            op: "pqa_unit",
            detail: format!("{d} is not a discriminant of a real quadratic order"),
        });
    }
    let s_d = d.isqrt();
    if s_d * s_d == d {
        return Err(Error::OutOfDomain {
            op: "pqa_unit",
            detail: format!("{d} is a perfect square"),
        });
    }

    // State for the continued fraction of (p0 + sqrt(rad)) / q0, where
    // rad = d/4 (classical Pell) or rad = d (half-integer units).
    let (rad, mut p, mut q): (i128, i128, i128) = if d % 4 == 0 {
        ((d / 4) as i128, 0, 1)
    } else {
        (d as i128, 1, 2)
    };
    let s = (rad as u128).isqrt() as i128; // floor(sqrt(rad))

    // Convergent recurrences A_k = a_k A_{k-1} + A_{k-2}.
    let mut a_prev = Integer::from(1); // A_{-1}
    let mut a_curr; // A_0 after first step
    let mut b_prev = Integer::from(0); // B_{-1}
    let mut b_curr;

    // First partial quotient.
    let a0 = if q > 0 {
        floor_div(p + s, q)
    } else {
        -floor_div(p + s, -q) - 1
    };
    a_curr = Integer::from(a0);
    b_curr = Integer::from(1);

    let d_int = Integer::from(d);
    let four = Integer::from(4);
    for _step in 0..PQA_STEP_CAP {
        // Test the current convergent (A, B) for a unit.
        let (u, v) = if d % 4 == 0 {
            (Integer::from(2) * &a_curr, b_curr.clone())
        } else {
            (Integer::from(2) * &a_curr - &b_curr, b_curr.clone())
        };
        if v > 0 && u > 0 {
            let norm4 = u.clone().square() - v.clone().square() * &d_int;
            if norm4 == four || norm4 == -four.clone() {
                return Ok((u, v));
            }
        }
        // Advance the continued fraction.
        let a_k = if q > 0 {
            floor_div(p + s, q)
        } else {
            -floor_div(p + s, -q) - 1
        };
        let p_next = a_k * q - p;
        let q_next = (rad - p_next * p_next) / q;
        debug_assert_eq!((rad - p_next * p_next) % q, 0);
        if q_next == 0 {
            return Err(Error::Invariant(format!(
                "pqa_unit({d}): continued fraction degenerated (Q = 0)"
            )));
        }
        p = p_next;
        q = q_next;
        let a_k1 = if q > 0 {
            floor_div(p + s, q)
        } else {
            -floor_div(p + s, -q) - 1
        };
        let a_next = Integer::from(a_k1) * &a_curr + &a_prev;
        let b_next = Integer::from(a_k1) * &b_curr + &b_prev;
        a_prev = std::mem::replace(&mut a_curr, a_next);
        b_prev = std::mem::replace(&mut b_curr, b_next);
    }
    Err(Error::Invariant(format!(
        "pqa_unit({d}): no unit within {PQA_STEP_CAP} continued-fraction steps"
    )))
}

/// `log eps = log((u + v sqrt(d)) / 2)` as a certified ball.
fn log_eps_ball(d: u64, u: &Integer, v: &Integer, prec: u32) -> Result<Ball> {
    let bd = Ball::from_i64(prec, i64::try_from(d).map_err(|_| Error::OutOfDomain {
        op: "log_eps",
        detail: format!("discriminant {d} out of range"),
    })?);
    let eps = ball_from_integer(prec, u)
        .add(&ball_from_integer(prec, v).mul(&bd.sqrt()?))
        .div_i64(2);
    eps.ln()
}

// ---------------------------------------------------------------------
// Class numbers
// ---------------------------------------------------------------------

/// Which route [`class_number`] takes.
///
/// The two backends are mathematically independent: one is exhaustive
/// integer combinatorics on reduced quadratic forms, the other certified
/// analysis of the Dirichlet L-value. Their agreement on shared inputs is
/// part of the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassNumberBackend {
    /// Enumerate all reduced indefinite binary quadratic forms of
    /// discriminant `d` and count their cycles under the reduction
    /// operator (the narrow class number), then convert to the wide
    /// class number using the norm of the fundamental unit. Cost grows
    /// like `O(d)`; intended for moderate `d` and cross-checks.
    BruteForce,
    /// Evaluate `L(1, chi_d)` by a theta-smoothed character sum with a
    /// certified Gaussian tail bound, then read `h` off the Dirichlet
    /// class number formula `h = L(1, chi_d) sqrt(d) / (2 log eps)`,
    /// requiring the enclosure to isolate a unique integer. Cost grows
    /// like `O(sqrt(d))` evaluations of erfc and E1.
    Analytic,
}

/// Wide class number `h(d)` of the real quadratic order of fundamental
/// discriminant `d`.
///
/// `prec` is the working precision for the analytic backend (ignored by
/// the brute-force backend). Errors with [`Error::OutOfDomain`] if `d`
/// is not a fundamental discriminant, and
/// [`Error::PrecisionExhausted`] if the analytic enclosure fails to
/// isolate a unique integer.
///
/// ```
/// # use seltrace::arithdata::{class_number, ClassNumberBackend};
/// assert_eq!(class_number(5, ClassNumberBackend::BruteForce, 64).unwrap(), 1);
/// assert_eq!(class_number(8, ClassNumberBackend::Analytic, 64).unwrap(), 1);
/// ```
pub fn class_number(d: u64, backend: ClassNumberBackend, prec: u32) -> Result<u64> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::OutOfDomain {
            op: "class_number",
            detail: format!("{d} is not a fundamental discriminant > 0"),
        });
    }
    match backend {
        ClassNumberBackend::BruteForce => class_number_bruteforce(d),
        ClassNumberBackend::Analytic => {
            let (u, v) = pqa_unit(d)?;
            class_number_analytic_with_unit(d, &u, &v, prec)
        }
    }
}

/// A reduced indefinite form `(a, b, c)` of discriminant `d` satisfies
/// `0 < b < sqrt(d)` and `sqrt(d) - b < 2|a| < sqrt(d) + b` (hence
/// `a c < 0`). This enumerates all of them and counts the cycles of the
/// reduction operator `rho`; the cycle count is the narrow class number.
fn class_number_bruteforce(d: u64) -> Result<u64> {
    let s = d.isqrt() as i64; // floor(sqrt(d)), d non-square
    let di = d as i64;
    let mut forms: Vec<(i64, i64, i64)> = Vec::new();

    // b runs over the parity class of d below sqrt(d).
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let m = (di - b * b) / 4; // |a c|; exact since b^2 ≡ d mod 4
        debug_assert_eq!((di - b * b) % 4, 0);
        let mut e = 1i64;
        while e * e <= m {
            if m % e == 0 {
                for q in [e, m / e] {
                    // Window sqrt(d) - b < 2q < sqrt(d) + b, in exact
                    // integer form (sqrt(d) irrational).
                    if 2 * q >= s - b + 1 && 2 * q <= s + b {
                        forms.push((q, b, -m / q));
                        forms.push((-q, b, m / q));
                    }
                    if e * e == m {
                        break;
                    }
                }
            }
            e += 1;
        }
        b += 2;
    }
    forms.sort_unstable();
    forms.dedup();

    let index: HashMap<(i64, i64, i64), usize> =
        forms.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut visited = vec![false; forms.len()];
    let mut cycles = 0u64;

    for start in 0..forms.len() {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut cur = start;
        for _ in 0..=forms.len() {
            visited[cur] = true;
            let (_, b, c) = forms[cur];
            // rho(a, b, c) = (c, r, (r^2 - d) / (4c)) with r ≡ -b
            // (mod 2|c|) in the window (sqrt(d) - 2|c|, sqrt(d)).
            let m = 2 * c.abs();
            let r = s - (s + b).rem_euclid(m);
            let c_next = (r * r - di) / (4 * c);
            debug_assert_eq!((r * r - di) % (4 * c), 0);
            let next = *index.get(&(c, r, c_next)).ok_or_else(|| {
                Error::Invariant(format!(
                    "class_number_bruteforce({d}): reduction left the reduced set at ({c}, {r}, {c_next})"
                ))
            })?;
            if next == start {
                break;
            }
            if visited[next] {
                return Err(Error::Invariant(format!(
                    "class_number_bruteforce({d}): reduction cycles collided"
                )));
            }
            cur = next;
        }
    }

    // Narrow -> wide: if the fundamental unit has norm -1 the two agree;
    // otherwise the narrow class number is exactly twice the wide one.
    let (u, v) = pqa_unit(d)?;
    let norm4 = u.clone().square() - v.clone().square() * Integer::from(d);
    if norm4 == 4 {
        if cycles % 2 != 0 {
            return Err(Error::Invariant(format!(
                "class_number_bruteforce({d}): odd narrow class number {cycles} with norm +1 unit"
            )));
        }
        Ok(cycles / 2)
    } else {
        Ok(cycles)
    }
}

/// Certified enclosure of `L(1, chi_d)` by the theta-smoothed character
/// sum
///
/// `L(1, chi_d) = sum_{n>=1} chi_d(n) [ erfc(n sqrt(pi/d)) / n
///                                      + E1(pi n^2 / d) / sqrt(d) ]`,
///
/// valid for every even real primitive character (Gaussian smoothing of
/// the defining series against the functional equation; both halves
/// decay like `exp(-pi n^2 / d)`). The truncation tail beyond `n_terms`
/// is bounded by the envelopes `erfc(x) <= exp(-x^2) / (x sqrt(pi))` and
/// `E1(y) <= exp(-y) / y`, summed as a geometric series.
fn l1_theta(d: u64, target_width: f64, prec: u32) -> Result<Ball> {
    let di = i64::try_from(d).map_err(|_| Error::OutOfDomain {
        op: "l1_theta",
        detail: format!("discriminant {d} out of range"),
    })?;
    let df = d as f64;
    let rd_f = df.sqrt();
    // Choose the truncation point in floating point (the *certified*
    // tail bound below is what counts; this only needs to land close).
    let tail_f = |n: f64| -> f64 {
        let rho = (-std::f64::consts::PI * (2.0 * n + 3.0) / df).exp();
        2.0 * rd_f / (std::f64::consts::PI * (n + 1.0) * (n + 1.0))
            * (-std::f64::consts::PI * (n + 1.0) * (n + 1.0) / df).exp()
            / (1.0 - rho)
    };
    let budget = (target_width / 4.0).max(1e-300);
    let mut n_terms = ((df * (1.0 / budget).ln().max(1.0) / std::f64::consts::PI).sqrt() as u64)
        .max(8)
        + 4;
    while tail_f(n_terms as f64) > budget {
        if n_terms > 50_000_000 {
            return Err(Error::PrecisionExhausted {
                op: "l1_theta",
                detail: format!("discriminant {d} needs more than 5e7 character-sum terms"),
            });
        }
        n_terms = n_terms + n_terms / 8 + 4;
    }

    let pi = rigor::pi(prec);
    let rd = Ball::from_i64(prec, di).sqrt()?;
    let a = pi.div_i64(di).sqrt()?; // sqrt(pi / d)
    let pi_over_d = pi.div_i64(di);

    let mut sum = Ball::zero(prec);
    for n in 1..=n_terms {
        let chi = kronecker(di, n as i64);
        if chi == 0 {
            continue;
        }
        let x = a.mul_i64(n as i64);
        let n2 = i64::try_from(n * n).map_err(|_| Error::OutOfDomain {
            op: "l1_theta",
            detail: format!("n^2 overflow at n = {n}"),
        })?;
        let term = crate::specfun::erfc_ball(&x)
            .div_i64(n as i64)
            .add(&crate::specfun::e1_ball(&pi_over_d.mul_i64(n2))?.div(&rd)?);
        sum = if chi > 0 { sum.add(&term) } else { sum.sub(&term) };
    }

    // Certified geometric tail bound.
    let np1 = (n_terms + 1) as i64;
    let expo = pi_over_d.mul_i64(np1).mul_i64(np1).neg().exp();
    let rho = pi_over_d.mul_i64(2 * np1 + 1).neg().exp();
    let one_minus_rho = Ball::one(prec).sub(&rho);
    if !one_minus_rho.certainly_positive() {
        return Err(Error::PrecisionExhausted {
            op: "l1_theta",
            detail: format!("tail ratio not certainly below 1 for d = {d}"),
        });
    }
    let tail = rd
        .mul_2exp(1)
        .mul(&expo)
        .div(&pi.mul_i64(np1).mul_i64(np1))?
        .div(&one_minus_rho)?;
    let tail_upper = tail.upper().to_f64_round(Round::Up);
    Ok(sum.widen(tail_upper))
}

/// Analytic class number with the fundamental unit already in hand.
///
/// The character sum runs at a fixed 64-bit working precision: it only
/// has to isolate an integer inside a window of half-width 1/2, so the
/// enclosure width is dominated by the truncation tail (1e-4-ish), never
/// by rounding, and higher precision would only slow the erfc/E1
/// evaluations down. All arithmetic is still certified ball arithmetic;
/// `prec` influences nothing here beyond the unit logarithm.
fn class_number_analytic_with_unit(d: u64, u: &Integer, v: &Integer, _prec: u32) -> Result<u64> {
    let prec = 64u32;
    let log_eps = log_eps_ball(d, u, v, prec)?;
    if !log_eps.certainly_positive() {
        return Err(Error::Invariant(format!(
            "class_number({d}): fundamental unit has non-positive logarithm"
        )));
    }
    // Width request: the class number enclosure is
    //   h = L1 * sqrt(d) / (2 log eps),
    // so an L1 enclosure of full width w yields an h of width
    // w sqrt(d) / (2 log eps); aim for h-width 0.4.
    let rd_f = (d as f64).sqrt();
    let target = (0.4 * 2.0 * log_eps.mid_f64() / rd_f).min(0.1);
    let l1 = l1_theta(d, target, prec)?;
    let rd = Ball::from_i64(prec, d as i64).sqrt()?;
    let h_ball = l1.mul(&rd).div(&log_eps.mul_2exp(1))?;

    let h_round = h_ball.mid_f64().round();
    if !(h_round >= 1.0 && h_round < 1e15) {
        return Err(Error::PrecisionExhausted {
            op: "class_number",
            detail: format!("class number enclosure for d = {d} rounds to {h_round}"),
        });
    }
    let h = h_round as i64;
    let off = h_ball.sub_i64(h).abs();
    if !off.certainly_lt(&Ball::from_ratio(prec, 1, 2)) {
        return Err(Error::PrecisionExhausted {
            op: "class_number",
            detail: format!(
                "class number enclosure for d = {d} has width {:.3e}, cannot isolate an integer",
                h_ball.rad_f64() * 2.0
            ),
        });
    }
    Ok(h as u64)
}

// ---------------------------------------------------------------------
// Local factors and prime powers
// ---------------------------------------------------------------------

/// The correction factor of the trace-`t` class term at the primes
/// dividing the conductor `l`:
///
/// `prod_{p | l} ( 1 + (p - chi_d(p)) * ((p^vp(l)) - 1) / (p - 1) )`.
///
/// This is always a positive integer; it is returned as an exact ball.
///
/// ```
/// # use seltrace::arithdata::local_factor;
/// assert_eq!(local_factor(5, 1, 64).unwrap().mid_f64(), 1.0);
/// assert_eq!(local_factor(8, 2, 64).unwrap().mid_f64(), 3.0);
/// assert_eq!(local_factor(5, 3, 64).unwrap().mid_f64(), 5.0);
/// ```
pub fn local_factor(d: u64, l: u64, prec: u32) -> Result<Ball> {
    if l == 0 {
        return Err(Error::OutOfDomain {
            op: "local_factor",
            detail: "conductor l = 0".into(),
        });
    }
    let di = i64::try_from(d).map_err(|_| Error::OutOfDomain {
        op: "local_factor",
        detail: format!("discriminant {d} out of range"),
    })?;
    let mut acc = Rational::from(1);
    for (p, e) in factorize(l) {
        let chi = kronecker(di, p as i64);
        // geometric sum 1 + p + ... + p^(e-1) = (p^e - 1) / (p - 1)
        let mut geo = Integer::from(0);
        let mut pw = Integer::from(1);
        for _ in 0..e {
            geo += &pw;
            pw *= p;
        }
        let factor = Rational::from(1)
            + Rational::from((Integer::from(p) - Integer::from(chi)) * geo);
        acc *= factor;
    }
    Ok(ball_from_rational(prec, &acc))
}

/// One prime power `n = p^k` entering the prime side of the length
/// spectrum.
#[derive(Debug, Clone)]
pub struct PrimePowerTerm {
    /// The prime power `n = p^k` itself.
    pub n: u64,
    /// `Lambda(n) = log p`, the von Mangoldt weight, as a certified ball.
    pub lambda_n: Ball,
    /// The transform argument `log(n) / pi`.
    pub xhat_arg: Ball,
}

/// All prime powers `n = p^k <= limit` (with `n >= 2`), sorted by `n`,
/// each carrying its von Mangoldt weight and transform argument.
///
/// ```
/// # use seltrace::arithdata::prime_power_terms;
/// let terms = prime_power_terms(10, 64);
/// let ns: Vec<u64> = terms.iter().map(|t| t.n).collect();
/// assert_eq!(ns, vec![2, 3, 4, 5, 7, 8, 9]);
/// assert!(prime_power_terms(1, 64).is_empty());
/// ```
pub fn prime_power_terms(limit: u64, prec: u32) -> Vec<PrimePowerTerm> {
    let mut out = Vec::new();
    if limit < 2 {
        return out;
    }
    let pi = rigor::pi(prec);
    for p in primes_below(limit + 1) {
        let log_p = Ball::from_i64(prec, p as i64)
            .ln()
            .expect("log of a prime is well-defined");
        let mut n = p;
        loop {
            let log_n = Ball::from_i64(prec, n as i64)
                .ln()
                .expect("log of a prime power is well-defined");
            out.push(PrimePowerTerm {
                n,
                lambda_n: log_p.clone(),
                xhat_arg: log_n.div(&pi).expect("pi is nonzero"),
            });
            match n.checked_mul(p) {
                Some(next) if next <= limit => n = next,
                _ => break,
            }
        }
    }
    out.sort_by_key(|t| t.n);
    out
}

// ---------------------------------------------------------------------
// The class database
// ---------------------------------------------------------------------

/// Class data for one hyperbolic trace `t`.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    /// The trace, `t >= 3`.
    pub t: u64,
    /// Fundamental discriminant with `t^2 - 4 = d * l^2`.
    pub d: u64,
    /// Conductor `l`.
    pub l: u64,
    /// Wide class number `h(d)`.
    pub h: u64,
    /// Fundamental unit numerator: `eps = (u + v sqrt(d)) / 2`.
    pub u: Integer,
    /// Fundamental unit surd coefficient (minimal positive).
    pub v: Integer,
    /// Certified enclosure of `L(1, chi_d)`, recomputed from
    /// `2 h log(eps) / sqrt(d)` at the configured precision.
    pub l1: Ball,
}

/// A complete table of [`ClassEntry`] values for every trace
/// `3 <= t <= tmax`.
#[derive(Debug, Clone)]
pub struct ClassDB {
    /// Serialization format version (see [`DB_FORMAT_VERSION`]).
    pub format_version: u32,
    /// Largest trace stored; the table is complete on `[3, tmax]`.
    pub tmax: u64,
    /// Entries in increasing trace order, one per trace.
    pub entries: Vec<ClassEntry>,
}

impl ClassDB {
    /// The entry for trace `t`, if `3 <= t <= tmax`.
    pub fn entry(&self, t: u64) -> Option<&ClassEntry> {
        if t < 3 || t > self.tmax {
            return None;
        }
        let e = &self.entries[(t - 3) as usize];
        debug_assert_eq!(e.t, t);
        Some(e)
    }
}

/// `L(1, chi_d)` from the class number formula, given the invariants.
fn l1_from_formula(d: u64, h: u64, u: &Integer, v: &Integer, prec: u32) -> Result<Ball> {
    let log_eps = log_eps_ball(d, u, v, prec)?;
    let rd = Ball::from_i64(prec, d as i64).sqrt()?;
    log_eps
        .mul_i64(i64::try_from(2 * h).map_err(|_| Error::OutOfDomain {
            op: "l1_from_formula",
            detail: format!("class number {h} out of range"),
        })?)
        .div(&rd)
}

/// Builds the class entry for a single trace, reusing previously computed
/// `(h, u, v)` for repeated fundamental discriminants via `cache`.
fn build_entry(
    t: u64,
    prec: u32,
    cache: &mut HashMap<u64, (u64, Integer, Integer)>,
) -> Result<ClassEntry> {
    let (d, l) = split_discriminant(t)?;
    let (h, u, v) = match cache.get(&d) {
        Some(hit) => hit.clone(),
        None => {
            let (u, v) = pqa_unit(d)?;
            let h = class_number_analytic_with_unit(d, &u, &v, prec)?;
            cache.insert(d, (h, u.clone(), v.clone()));
            (h, u, v)
        }
    };
    let l1 = l1_from_formula(d, h, &u, &v, prec)?;
    Ok(ClassEntry {
        t,
        d,
        l,
        h,
        u,
        v,
        l1,
    })
}

/// Builds the complete class database for all traces `3 <= t <= tmax`.
///
/// Class numbers are found by the analytic backend (certified L-value
/// enclosure plus unit), with results cached across traces sharing a
/// fundamental discriminant. `prec` controls the precision of the stored
/// `L(1, chi_d)` enclosures.
pub fn db_build(tmax: u64, prec: u32) -> Result<ClassDB> {
    db_build_with_progress(tmax, prec, |_| {})
}

/// [`db_build`] with a per-trace progress callback (called after each
/// trace is finished, with that trace).
pub fn db_build_with_progress(
    tmax: u64,
    prec: u32,
    mut progress: impl FnMut(u64),
) -> Result<ClassDB> {
    if tmax < 3 {
        return Err(Error::OutOfDomain {
            op: "db_build",
            detail: format!("tmax = {tmax} < 3 stores no classes"),
        });
    }
    let mut cache = HashMap::new();
    let mut entries = Vec::with_capacity((tmax - 2) as usize);
    for t in 3..=tmax {
        entries.push(build_entry(t, prec, &mut cache)?);
        progress(t);
    }
    Ok(ClassDB {
        format_version: DB_FORMAT_VERSION,
        tmax,
        entries,
    })
}

/// 64-bit FNV-1a hash, used as the database integrity checksum.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Serializes a class database.
///
/// Layout (all integers little-endian): the magic bytes `"QCLSDB1\n"`,
/// `format_version: u32`, `tmax: u64`, `count: u64`, then per entry in
/// increasing trace order `t, d, l, h: u64` followed by `u` and `v` as
/// length-prefixed (`u32`) little-endian magnitude bytes, and finally a
/// `u64` FNV-1a checksum of everything before it. The `L(1, chi_d)`
/// enclosures are *not* stored; they are recomputed from the integer
/// invariants on load, so the serialized form is precision-independent.
pub fn db_to_bytes(db: &ClassDB) -> Vec<u8> {
    let mut out = Vec::with_capacity(64 + db.entries.len() * 48);
    out.extend_from_slice(DB_MAGIC);
    out.extend_from_slice(&db.format_version.to_le_bytes());
    out.extend_from_slice(&db.tmax.to_le_bytes());
    out.extend_from_slice(&(db.entries.len() as u64).to_le_bytes());
    for e in &db.entries {
        out.extend_from_slice(&e.t.to_le_bytes());
        out.extend_from_slice(&e.d.to_le_bytes());
        out.extend_from_slice(&e.l.to_le_bytes());
        out.extend_from_slice(&e.h.to_le_bytes());
        for z in [&e.u, &e.v] {
            let digits = z.to_digits::<u8>(rug::integer::Order::Lsf);
            out.extend_from_slice(&(digits.len() as u32).to_le_bytes());
            out.extend_from_slice(&digits);
        }
    }
    let checksum = fnv1a64(&out);
    out.extend_from_slice(&checksum.to_le_bytes());
    out
}

/// Bounds-checked little-endian reader over a byte slice.
struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).ok_or_else(|| Error::Parse {
            location: format!("byte {}", self.pos),
            reason: format!("length overflow reading {what}"),
        })?;
        if end > self.bytes.len() {
            return Err(Error::Parse {
                location: format!("byte {}", self.pos),
                reason: format!("truncated input reading {what}"),
            });
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn take_u32(&mut self, what: &str) -> Result<u32> {
        let s = self.take(4, what)?;
        Ok(u32::from_le_bytes(s.try_into().expect("4 bytes")))
    }

    fn take_u64(&mut self, what: &str) -> Result<u64> {
        let s = self.take(8, what)?;
        Ok(u64::from_le_bytes(s.try_into().expect("8 bytes")))
    }

    fn take_integer(&mut self, what: &str) -> Result<Integer> {
        let len = self.take_u32(what)?;
        if len > DB_MAX_INT_BYTES {
            return Err(Error::Parse {
                location: format!("byte {}", self.pos - 4),
                reason: format!("implausible big-integer length {len} reading {what}"),
            });
        }
        let digits = self.take(len as usize, what)?;
        Ok(Integer::from_digits(digits, rug::integer::Order::Lsf))
    }
}

/// Deserializes and fully validates a class database.
///
/// Validation: magic, format version, checksum, exact trace coverage
/// `3..=tmax`, re-derivation of `(d, l)` from each trace, the unit
/// equation `u^2 - d v^2 = ±4`, and `h >= 1`. The `L(1, chi_d)`
/// enclosure of every entry is recomputed from the class number formula
/// at precision `prec`. (Whether each stored `h` is the true class
/// number is *not* re-proved here; that is the job of the verification
/// pass, which re-runs the analytic backend.)
pub fn db_from_bytes(bytes: &[u8], prec: u32) -> Result<ClassDB> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.take(8, "magic")?;
    if magic != DB_MAGIC {
        return Err(Error::Parse {
            location: "byte 0".into(),
            reason: "bad magic (not a class database)".into(),
        });
    }
    let format_version = cur.take_u32("format version")?;
    if format_version != DB_FORMAT_VERSION {
        return Err(Error::Parse {
            location: "byte 8".into(),
            reason: format!("unsupported format version {format_version}"),
        });
    }
    let tmax = cur.take_u64("tmax")?;
    let count = cur.take_u64("entry count")?;
    if tmax < 3 || count != tmax - 2 {
        return Err(Error::Parse {
            location: "byte 12".into(),
            reason: format!("entry count {count} does not cover traces 3..={tmax}"),
        });
    }
    // Cheap plausibility cap before reserving memory.
    if count > (bytes.len() as u64) / 42 + 2 {
        return Err(Error::Parse {
            location: "byte 12".into(),
            reason: format!("entry count {count} larger than the input can hold"),
        });
    }

    let mut entries = Vec::with_capacity(count as usize);
    for i in 0..count {
        let at = cur.pos;
        let t = cur.take_u64("t")?;
        let d = cur.take_u64("d")?;
        let l = cur.take_u64("l")?;
        let h = cur.take_u64("h")?;
        let u = cur.take_integer("u")?;
        let v = cur.take_integer("v")?;
        if t != 3 + i {
            return Err(Error::Parse {
                location: format!("byte {at}"),
                reason: format!("expected trace {} in slot {i}, found {t}", 3 + i),
            });
        }
        let (d_true, l_true) = split_discriminant(t).map_err(|e| Error::Parse {
            location: format!("byte {at}"),
            reason: format!("trace {t}: {e}"),
        })?;
        if (d, l) != (d_true, l_true) {
            return Err(Error::Parse {
                location: format!("byte {at}"),
                reason: format!(
                    "trace {t}: stored (d, l) = ({d}, {l}), recomputed ({d_true}, {l_true})"
                ),
            });
        }
        if h == 0 {
            return Err(Error::Parse {
                location: format!("byte {at}"),
                reason: format!("trace {t}: class number 0"),
            });
        }
        if u <= 0 || v <= 0 {
            return Err(Error::Parse {
                location: format!("byte {at}"),
                reason: format!("trace {t}: non-positive unit coefficients"),
            });
        }
        let norm4 = u.clone().square() - v.clone().square() * Integer::from(d);
        if norm4 != 4 && norm4 != -4 {
            return Err(Error::Parse {
                location: format!("byte {at}"),
                reason: format!("trace {t}: (u, v) does not satisfy u^2 - d v^2 = ±4"),
            });
        }
        let l1 = l1_from_formula(d, h, &u, &v, prec).map_err(|e| Error::Parse {
            location: format!("byte {at}"),
            reason: format!("trace {t}: cannot recompute L-value: {e}"),
        })?;
        entries.push(ClassEntry {
            t,
            d,
            l,
            h,
            u,
            v,
            l1,
        });
    }

    let body_end = cur.pos;
    let stored = cur.take_u64("checksum")?;
    if cur.pos != bytes.len() {
        return Err(Error::Parse {
            location: format!("byte {}", cur.pos),
            reason: "trailing garbage after checksum".into(),
        });
    }
    let actual = fnv1a64(&bytes[..body_end]);
    if stored != actual {
        return Err(Error::Parse {
            location: format!("byte {body_end}"),
            reason: format!("checksum mismatch: stored {stored:#018x}, computed {actual:#018x}"),
        });
    }

    Ok(ClassDB {
        format_version,
        tmax,
        entries,
    })
}

/// Writes a class database to a file (see [`db_to_bytes`] for the
/// format).
pub fn db_write(db: &ClassDB, path: &Path) -> Result<()> {
    let bytes = db_to_bytes(db);
    let mut f = std::fs::File::create(path)?;
    f.write_all(&bytes)?;
    Ok(())
}

/// Reads and validates a class database from a file (see
/// [`db_from_bytes`]).
pub fn db_read(path: &Path, prec: u32) -> Result<ClassDB> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    db_from_bytes(&bytes, prec)
}

/// Reads just the header of a serialized database: returns
/// `(format_version, tmax, entry_count)` without validating records.
pub fn db_peek_header(path: &Path) -> Result<(u32, u64, u64)> {
    let mut head = [0u8; 28];
    let mut f = std::fs::File::open(path)?;
    f.read_exact(&mut head)?;
    let mut cur = Cursor {
        bytes: &head,
        pos: 0,
    };
    let magic = cur.take(8, "magic")?;
    if magic != DB_MAGIC {
        return Err(Error::Parse {
            location: "byte 0".into(),
            reason: "bad magic (not a class database)".into(),
        });
    }
    let version = cur.take_u32("format version")?;
    let tmax = cur.take_u64("tmax")?;
    let count = cur.take_u64("entry count")?;
    Ok((version, tmax, count))
}

/// Re-proves every class number in a database by re-running the analytic
/// backend on each distinct fundamental discriminant, and re-checks that
/// each stored unit is minimal by re-running the continued-fraction
/// algorithm. Returns the number of distinct discriminants re-proved.
///
/// This is the expensive deep verification; the structural invariants
/// are already enforced by [`db_from_bytes`].
pub fn db_verify_deep(db: &ClassDB, prec: u32) -> Result<u64> {
    let mut proved: HashMap<u64, (u64, Integer, Integer)> = HashMap::new();
    for e in &db.entries {
        let (h, u, v) = match proved.get(&e.d) {
            Some(hit) => hit.clone(),
            None => {
                let (u, v) = pqa_unit(e.d)?;
                let h = class_number_analytic_with_unit(e.d, &u, &v, prec)?;
                proved.insert(e.d, (h, u.clone(), v.clone()));
                (h, u, v)
            }
        };
        if e.h != h || e.u != u || e.v != v {
            return Err(Error::Invariant(format!(
                "database entry t = {} stores (h, u, v) = ({}, {}, {}), re-proved ({}, {}, {})",
                e.t, e.h, e.u, e.v, h, u, v
            )));
        }
    }
    Ok(proved.len() as u64)
}

// ---------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------
