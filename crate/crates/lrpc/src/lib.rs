//! Low rank parity check (LRPC) codes over F_{q^m} in the rank metric,
//! with the error-support-recovery decoders and the probability estimates
//! that govern their failure rates.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf`] — arithmetic in F_q and F_{q^m} with a deterministic modulus
//!   per (q, m), so experiments reproduce bit-for-bit.
//! * [`subspace`] — canonical F_q-subspaces of F_{q^m}: span, sum,
//!   intersection, scaling, product space, enumeration, sampling.
//! * [`code`] — LRPC codes, rank errors, syndromes, and coordinate
//!   recovery once a support is known.
//! * [`decoders`] — the three support-recovery algorithms (basis
//!   intersection, multiplicity thresholding, accumulated t-fold
//!   intersections) plus analytic failure estimates.
//! * [`textfmt`] — a versioned text format for codes, errors and
//!   syndromes, used as cross-implementation fixtures.
//! * [`rng`] — the SplitMix64 stream all sampling goes through.

pub mod code;
pub mod decoders;
pub mod error;
mod fq;
pub mod gf;
pub mod rng;
pub mod subspace;
pub mod textfmt;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use rng::Rng;
pub use subspace::Subspace;
