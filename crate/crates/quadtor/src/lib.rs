//! Exact arithmetic for deciding which torsion subgroups occur for elliptic
//! curves over a real quadratic field `Q(sqrt(d))`.
//!
//! The decision procedure works through the eight modular curves whose
//! non-cuspidal points classify the candidate torsion structures beyond the
//! rational (Mazur) list. Elliptic modular curves are handled through their
//! Mordell-Weil rank and torsion; the three hyperelliptic ones through their
//! genus-2 Jacobians (Mumford representation, Cantor arithmetic, twist
//! decomposition of odd torsion).
//!
//! Everything is exact: rationals are arbitrary-precision, field elements of
//! `Q(sqrt(d))` are pairs of rationals, and point counts over small finite
//! fields are exhaustive. No floating point anywhere.
//!
//! The crate is organized around the pipeline stages:
//!
//! * [`qfield`] — arithmetic in `Q(sqrt(d))` and reduction maps to `F_q`
//! * [`poly`], [`gf`], [`padic`], [`polyfactor`] — polynomial arithmetic,
//!   small finite fields, and root finding / factorization over `Q` and `K`
//! * [`ellcurve`] — Weierstrass curves, group law, twists, torsion, search
//! * [`hyperjac`] — genus-2 curves, Jacobian arithmetic, torsion, decoding
//! * [`modcurves`] — the fixed catalog of modular curves, cusps and screens
//! * [`rankoracle`] — rank records (built-in, user files, certificates)
//! * [`classify`] — the per-field verdict map and its renderings
//!
//! See the `examples/` directory for a runnable tour of each capability and
//! the `quadtor` binary for the command-line interface.

pub mod classify;
pub mod ellcurve;
pub mod field;
pub mod gf;
pub mod hyperjac;
pub mod modcurves;
pub mod padic;
pub mod poly;
pub mod polyfactor;
pub mod qfield;
pub mod rankoracle;

use thiserror::Error;

/// Errors surfaced by the contract-level operations.
///
/// Internal invariant violations (mixing elements of different fields,
/// off-curve points passed to the group law) panic instead: they are
/// programming errors, not data errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand must be a squarefree integer > 1, got {0}")]
    BadRadicand(i64),
    #[error("bad reduction input: denominator divisible by {p}")]
    BadReductionInput { p: u64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("field size {q} exceeds exhaustive scan bound {bound}")]
    ScanBound { q: u128, bound: u128 },
    #[error("singular Weierstrass equation (discriminant is zero)")]
    SingularCurve,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("degree {0} is not a genus-2 hyperelliptic model")]
    BadModelDegree(usize),
    #[error("invalid Mumford triple: {0}")]
    InvalidTriple(String),
    #[error("decode requires larger field")]
    DecodeRequiresLargerField,
    #[error("bad reduction at prime {0}")]
    BadReductionPrime(u64),
    #[error("no usable reduction primes within the scan bound")]
    NoUsablePrimes,
    #[error("unknown curve label {0}")]
    UnknownLabel(String),
    #[error("rank data line {line}: {msg}")]
    DataFormat { line: usize, msg: String },
    #[error("contradictory rank data for {label} ({kind}): empty intersection")]
    DataConflict { label: String, kind: String },
    #[error("empty classification row set")]
    EmptyRows,
    #[error("unknown output format {0}")]
    UnknownFormat(String),
    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
