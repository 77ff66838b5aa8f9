//! Rank modulation codes: error-correcting codes over permutations under
//! the Kendall tau metric, built from codes in Hamming space.
//!
//! The crate provides four code families over the symmetric group:
//!
//! * [`pp`] — codes from linearized permutation polynomials over GF(q),
//!   decoded through an accumulator map and a Reed-Solomon style decoder
//!   (corrects `t` Kendall errors with `n = q - 1`).
//! * [`gray`] — codes that write a binary codeword into the inversion
//!   vector through per-coordinate Gray maps (corrects `t` Kendall errors
//!   from a distance-`2t+1` binary seed, asymptotically rate 1).
//! * [`quant`] — two quantizer-based families: a binary one embedding one
//!   bit per inversion coordinate, and a q-ary one embedding symbols in
//!   banded coordinates; both trade seed distance for Kendall distance
//!   quadratically.
//! * [`analysis`] — Kendall sphere sizes, ball bounds, rate and redundancy
//!   computations, and parameter tables for all families.
//!
//! Supporting machinery lives in [`perm`] (permutations, inversion
//! vectors, the Kendall metric and an adjacent-transposition channel),
//! [`gf`] (finite fields and linearized polynomials), and [`block`]
//! (BCH, generalized Reed-Solomon, shortened and product codes in Hamming
//! space). [`codec`] wraps the four families behind one object-safe
//! interface used by the CLI and the simulator in [`sim`].

use std::fmt;

pub mod analysis;
pub mod block;
pub mod codec;
pub mod gf;
pub mod gray;
pub mod perm;
pub mod pp;
pub mod quant;
pub mod sim;

/// Errors returned by fallible operations in this crate.
///
/// Decoding beyond a code's correction radius is not an `Error`; decoders
/// report it through their outcome type so callers can count failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must agree on a size (ground set, code length,
    /// message length) do not.
    DimensionMismatch { expected: usize, got: usize },
    /// A vector is not a permutation of 1..=n.
    NotAPermutation,
    /// An inversion-vector coordinate exceeds its bound (coordinate `i`
    /// ranges over 0..=i).
    CoordinateOutOfRange { index: usize, value: u32, bound: u32 },
    /// A message or word symbol lies outside the code alphabet.
    SymbolOutOfRange { index: usize, value: u32, alphabet: u32 },
    /// Division by zero in a finite field.
    DivisionByZero,
    /// An enumeration or table would exceed the configured work cap.
    CapExceeded { required: u128, cap: u128 },
    /// A parameter set outside the supported range, with the reason.
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotAPermutation => write!(f, "vector is not a permutation of 1..=n"),
            Error::CoordinateOutOfRange { index, value, bound } => write!(
                f,
                "inversion coordinate {index} is {value}, exceeding its bound {bound}"
            ),
            Error::SymbolOutOfRange { index, value, alphabet } => write!(
                f,
                "symbol {value} at position {index} outside alphabet 0..{alphabet}"
            ),
            Error::DivisionByZero => write!(f, "division by zero in finite field"),
            Error::CapExceeded { required, cap } => {
                write!(f, "operation needs {required} steps, cap is {cap}")
            }
            Error::InvalidParameter(reason) => write!(f, "invalid parameter: {reason}"),
        }
    }
}

impl std::error::Error for Error {}
