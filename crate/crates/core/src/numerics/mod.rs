//! Signature-aware complex linear algebra and second-order jets.
//!
//! Ambient points of C² and of the lift spaces in C³ are stored as complex
//! vectors; the real view pairs consecutive reals as (re, im). Pairings take
//! an explicit [`Signature`] so the same code serves the flat sphere lift
//! and the indefinite anti-de Sitter lift.

mod cvec;
mod jet;
mod project;

pub use cvec::{apply_j, herm_pair, real_pair, CVec, ComplexPair, ComplexTriple, Signature};
pub use jet::{AmbientJet, Jet2, JetScalar};
pub use project::{project_onto_span, GramSystem, Projection, GRAM_CONDITION_LIMIT};

pub use num_complex::Complex64;
