//! Fixed-point spaces of finite group modules, chief factor invariants and
//! centralizer bounds, with exact checkers for the associated inequalities.
//!
//! The layers build on each other:
//!
//! * [`gf`] and [`matrix`]: finite fields and dense linear algebra.
//! * [`perm`]: permutation groups via Schreier-Sims, element tables,
//!   conjugacy classes, normal closures and quotients.
//! * [`chief`]: chief series with central/abelian annotations.
//! * [`module`]: matrix representations, fixed spaces and composition series.
//! * [`metrics`]: centralizer means and the inequality checkers.
//! * [`catalog`]: deterministic witness groups and modules.
//! * [`io`]: JSON file formats for groups and modules.

pub mod catalog;
pub mod chief;
pub mod error;
pub mod gf;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod module;
pub mod perm;

pub use error::{Error, Result};
pub use gf::{FieldElem, GaloisField};
pub use matrix::{Matrix, Subspace};
pub use perm::{Coset, PermGroup, Permutation};
