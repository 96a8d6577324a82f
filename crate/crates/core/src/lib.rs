//! Exact linear algebra behind Borel envelopes, tangent spaces of the
//! Grothendieck-resolution local model, and refinements of crystalline
//! filtered φ-modules. All arithmetic is over `Q`; nothing is floating point.

pub mod borel;
pub mod error;
pub mod exactlin;
pub mod localmodel;
pub mod par;
pub mod phimod;
pub mod sampling;
pub mod weyl;

pub use error::{FernError, Result};
