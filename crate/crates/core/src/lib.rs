//! # lbox-core
//!
//! A desk-scale numerical laboratory for Dirichlet L-functions near `s = 1`:
//! character arithmetic, Hurwitz-zeta-based L evaluation, argument-principle
//! zero location, zero-pairing inequalities over the critical strip, explicit
//! prime-sum formulas, and CM-point Weil heights — all deterministic and
//! oracle-tested.
//!
//! Layering (each module only reaches down):
//!
//! ```text
//! harness, cm          verification harnesses, class-group/height side
//!   └─ zeros           winding numbers, zero location, bucketed counts
//!        └─ lfunc      L(s,χ), L′(s,χ), completed function magnitudes
//!             ├─ arith characters, Kronecker symbols, discriminants
//!             └─ special  Hurwitz ζ, Γ-functions, Bernoulli, Λ(n) sieve
//! pairing              the ε-shifted pairing function (pure real analysis)
//! cache                content-addressed JSON artifact store
//! ```

pub mod arith;
pub mod cache;
pub mod cm;
pub mod error;
pub mod harness;
pub mod lfunc;
pub mod pairing;
pub mod special;
pub mod zeros;

pub use error::{Error, Result};

/// Re-exports of the types that cross crate boundaries, so downstream users
/// can `use lbox_core::prelude::*` and stay oblivious to module layout.
pub mod prelude {
    pub use crate::arith::{CharacterTable, DirichletCharacter};
    pub use crate::error::{Error, Result};
    pub use crate::harness::{ReportMeta, VerificationReport};
    pub use crate::lfunc::{LEvaluation, LEvaluator};
    pub use crate::pairing::{PartitionParams, RegionLabel};
    pub use crate::special::EulerMaclaurinConfig;
    pub use crate::zeros::{TailConstants, Zero, ZeroSet};
}
