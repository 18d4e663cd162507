//! Paramedial quasigroups of orders `p`, `p^k` and `p^2`, presented by affine
//! forms `x * y = φ(x) + ψ(y) + c` over `Z_{p^k}` and `Z_p^2`.
//!
//! - [`modring`]: residues, units and 2×2 matrices over prime fields.
//! - [`affine`]: affine forms, Cayley tables and simplicity.
//! - [`enum_cyclic`]: isomorphism-class representatives over `Z_{p^k}`.
//! - [`enum_gl2`]: isomorphism-class representatives over `Z_p^2`.
//! - [`oracle`]: exhaustive orbit and isomorphism machinery used for cross-checks.

pub mod affine;
pub mod enum_cyclic;
pub mod enum_gl2;
pub mod error;
pub mod modring;
pub mod oracle;

pub use affine::{AffineForm, Automorphism, Element, GroupDescriptor, QuasigroupTable};
pub use enum_cyclic::{
    closed_form_count, enumerate_cyclic, pq_group, pq_total, CyclicClassification,
};
pub use enum_gl2::{enumerate_gl2, simple_subset, Gl2Classification};
pub use error::{Error, Result};
pub use modring::{Mat2, Modulus, Residue, Unit, Vec2};

/// Library version, recorded in run manifests and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
