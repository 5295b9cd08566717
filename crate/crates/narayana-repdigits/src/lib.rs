//! Exact and certified machinery for finding Narayana numbers that are
//! products of three repdigits in a fixed base g.
//!
//! The pipeline has three phases, each one module and one CLI subcommand:
//!
//! 1. [`matveev`] derives absolute bounds on the exponents of any solution
//!    from lower bounds for linear forms in logarithms.
//! 2. [`reduction`] shrinks those astronomical bounds to a few hundred with
//!    continued-fraction reduction (the Dujella–Pethő criterion), every
//!    ε-sign decision made in certified interval arithmetic.
//! 3. [`search`] exhaustively enumerates the reduced box with exact integer
//!    arithmetic and checks the output against a built-in golden table.
//!
//! [`interval`], [`algebraic`], [`recurrence`], and [`repdigit`] provide the
//! supporting arithmetic: outward-rounded MPFR intervals, certified cubic
//! constants, the exact integer sequence, and repdigit handling.

pub mod algebraic;
pub mod cli;
pub mod interval;
pub mod matveev;
pub mod recurrence;
pub mod reduction;
pub mod repdigit;
pub mod report;
pub mod search;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An enclosure was too wide to certify a decision; retry with more bits.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// No convergent certified the reduction instance.
    #[error("no reduction witness for {label} (scanned {scanned} convergents past 6M)")]
    NoWitness { label: String, scanned: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
