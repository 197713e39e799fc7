//! Rigorous numerics for the spectrum of the Laplacian on the modular surface.
//!
//! This crate evaluates both sides of the Selberg trace formula for
//! `PSL(2,Z)\H` with certified error enclosures, bounds the averaged
//! spectral counting remainder, and certifies completeness of lists of
//! Laplacian eigenvalues by Turing's method.
//!
//! Everything is built on [`rigor::Ball`], a midpoint–radius interval over
//! arbitrary-precision floating point: every arithmetic step rounds the
//! midpoint to nearest and pushes the worst-case rounding error into the
//! radius with upward-directed rounding, so each returned ball is a
//! mathematically sound enclosure of the exact value.
//!
//! Module layering (each layer depends only on those above it):
//!
//! 1. [`rigor`] — ball arithmetic, directed rounding, certified constants.
//! 2. [`quad`] — double-exponential quadrature with explicit error term.
//! 3. [`specfun`] — digamma/trigamma, sine integral, series enclosures.
//! 4. [`arithdata`] — class-number / regulator data for real quadratic
//!    fields, prime-power sieve, binary database with checksums.
//! 5. [`testfn`] — the even test-function family fed into the trace
//!    formula, and the explicit kernels appearing in its geometric side.
//! 6. [`trace`] — the individual terms of the trace formula.
//! 7. [`certify`] — the high-level proofs: the average-spectral-count
//!    bound, completeness certification, and machine-checkable reports.

pub mod arithdata;
pub mod certify;
pub mod quad;
pub mod rigor;
pub mod specfun;
pub mod testfn;
pub mod trace;

/// Crate-wide error type.
///
/// Soundness-critical failures (a ball straddling a singularity, a
/// non-finite midpoint) are errors, never silently-widened enclosures:
/// callers must either shrink their input or treat the computation as
/// inconclusive.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input ball contains a point where the requested function is
    /// singular or undefined (log/sqrt across zero, division by an
    /// interval containing zero, a pole inside a quadrature disk, ...).
    #[error("domain straddle in {op}: {detail}")]
    DomainStraddle {
        /// Operation that failed.
        op: &'static str,
        /// Human-readable description of the offending input.
        detail: String,
    },

    /// A midpoint or radius became NaN/infinite.
    #[error("non-finite value in {op}")]
    NonFinite {
        /// Operation that produced the non-finite value.
        op: &'static str,
    },

    /// An input lies (at least partly) outside the validity domain that a
    /// bound or series expansion was proved on. Unlike
    /// [`Error::DomainStraddle`] this is about an operation's *stated*
    /// precondition, not about a singularity of the underlying function.
    #[error("out of domain in {op}: {detail}")]
    OutOfDomain {
        /// Operation whose precondition failed.
        op: &'static str,
        /// Which precondition, and the offending value.
        detail: String,
    },

    /// Malformed input data (text zero lists, binary class database).
    #[error("parse error at {location}: {reason}")]
    Parse {
        /// Byte offset or line describing where parsing failed.
        location: String,
        /// What was wrong.
        reason: String,
    },

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A certification step produced an enclosure too wide to decide the
    /// claim either way. Carries a description of the indeterminate
    /// comparison.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A computation that must isolate an exact integer (a class number,
    /// a zero count) produced an enclosure too wide to pin it down at the
    /// requested working precision.
    #[error("precision exhausted in {op}: {detail}")]
    PrecisionExhausted {
        /// Operation that could not be decided.
        op: &'static str,
        /// The offending enclosure, in human-readable form.
        detail: String,
    },

    /// An internal invariant was violated; indicates a bug, not bad data.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
