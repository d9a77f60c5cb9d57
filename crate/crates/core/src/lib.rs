//! Kottwitz–Rapoport admissible sets in extended affine Weyl groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootsys`]: finite root systems, Weyl groups, orbits and weight supports;
//! * [`affine_weyl`]: the extended affine Weyl group, lengths, Bruhat order, covers;
//! * [`admissible`]: the admissible poset `Adm(μ)`, codimension-one strata graphs
//!   and the sets `Irr(x)`;
//! * [`verifier`]: batch checks over sweeps of `(group, μ)` with JSON reports.

mod linalg;

pub mod rootsys;
pub mod affine_weyl;
pub mod admissible;
pub mod verifier;

pub use admissible::{AdmissibleError, AdmissiblePoset};
pub use affine_weyl::{AffineElt, AffineWeylGroup};
pub use rootsys::{CartanType, Coweight, GroupDescriptor, LatticeChoice, RootSystem};
