//! Relations, maps, partitions and partial maps valued in a commutative
//! unital quantale.
//!
//! The building blocks:
//!
//! * [`quantale`]: the [`Quantale`] trait, finite table-driven quantales, the
//!   extended real chain, and the integral/divisible/lean/weakly-lean
//!   predicates.
//! * [`zoo`]: named built-in quantales and the spec-file format.
//! * [`relation`]: matrices `X x Y -> Q` with composition, residuals,
//!   opposites and disjoint unions.
//! * [`qmap`]: `Q`-maps (relations with a right adjoint), graphs of crisp
//!   functions, enumeration and the map/weak-leanness checks.
//! * [`partition`]: `Q`-subsets, `Q`-partitions and their correspondence with
//!   surjective maps.
//! * [`kleisli`]: the maybe monad `X -> X+` on `Q`-maps, partial maps and
//!   algebras.
//! * [`cli`]: the command-line front end used by the `quantaloid` binary.

pub mod cli;
pub mod error;
pub mod kleisli;
pub mod partition;
pub mod qmap;
pub mod quantale;
pub mod relation;
pub mod set;
pub mod zoo;

pub use error::{Error, Result};
pub use quantale::{ChainQuantale, Element, Ext, FiniteQuantale, Quantale};
pub use relation::QRelation;
pub use set::FiniteSet;
