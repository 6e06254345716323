//! Exact arithmetic for Heisenberg-twisted homological representations of
//! mapping class groups of `Σ_{g,1}`.
//!
//! Global sign convention: `[a_i, b_i] = a_i b_i a_i^-1 b_i^-1 = σ²`.

pub mod error;
pub mod fixtures;
pub mod group_ring;
pub mod heisenberg;
pub mod laurent;
pub mod lawrence;
pub mod linearize;
pub mod matrix;
pub mod pairing;
pub mod rep_one;
pub mod sample;
pub mod semidirect;
pub mod suite;
pub mod words;

pub use error::{HeisError, Result};
pub use group_ring::{GroupElement, HeisRing, RingElement};
pub use heisenberg::{HeisenbergElement, QuotientSpec};
pub use laurent::{LaurentPoly, Monomial};
pub use matrix::{IntMatrix, Matrix, RationalMatrix, Ring};
pub use semidirect::{AutPlusElement, SemidirectElement};
