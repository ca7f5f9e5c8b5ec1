//! Arithmetic autocorrelation of binary m-sequences.
//!
//! The crate is layered bottom-up:
//!
//! - [`bitseq`]: packed bit vectors, periodic sequences, shifts, runs and
//!   classical autocorrelation.
//! - [`gf2poly`]: polynomials over GF(2), irreducibility / primitivity and
//!   exhaustive enumeration of primitive polynomials.
//! - [`lfsr`]: Fibonacci LFSR generation of m-sequences and the
//!   shift-and-add property.
//! - [`ternary`]: entrywise subtraction into {-1, 0, 1} vectors, the
//!   normalization back to a binary expansion, and two independent oracles
//!   (big integers and 2-adic long division).
//! - [`correlation`]: per-shift arithmetic autocorrelation, spectra, bound
//!   and conjecture checks, and the degree sweeps.
//! - [`report`]: CSV / JSON emission of spectra.
//!
//! ```
//! use arithcorr::{bitseq::PeriodicSequence, correlation::arithmetic_autocorrelation};
//!
//! let s: PeriodicSequence = "000111101011001".parse().unwrap();
//! let rec = arithmetic_autocorrelation(&s, 4);
//! assert_eq!(rec.n_ones, 4);
//! assert_eq!(rec.correlation, 7);
//! ```

pub mod bitseq;
pub mod correlation;
pub mod error;
pub mod gf2poly;
pub mod lfsr;
pub mod report;
pub mod ternary;

pub use error::{Error, Result};
