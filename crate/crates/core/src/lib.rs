//! Explicit matrix models of the 2-groups `G_k ⊃ H_k` as truncated
//! period-3 banded unipotent matrices over F₂, and mechanical checks of the
//! mixed Beauville structures `u_k = (G_k, H_k, (x0, x1))`.

pub mod band;
pub mod beauville;
pub mod cache;
pub mod error;
pub mod f2algebra;
pub mod groups;
pub mod surfaces;
pub mod tables;
pub mod words;

pub use band::{DiagTriple, GroupElement, LeadingPair};
pub use beauville::{BeauvilleReport, BeauvilleTriple, VerifyOptions};
pub use error::{Error, Result};
pub use f2algebra::F2Mat3;
pub use groups::{EnumeratedGroup, GeneratorSet, Spherical, DEFAULT_BUDGET};
pub use surfaces::{SurfaceInvariants, SurfaceRow};

/// Surface invariants in machine integers.
pub type SurfaceInvariants64 = SurfaceInvariants<i64>;
/// Surface invariants in arbitrary precision.
pub type SurfaceInvariantsBig = SurfaceInvariants<num_bigint::BigInt>;
