//! Quivers with relations, their representations, and the additive toolkit.

mod module;
mod ops;
mod quiver;
mod submodules;

pub use module::{Module, Morphism};
pub use ops::*;
pub use quiver::{Algebra, Arrow, Path, PathLimits, RawRelation, Relation, Term};
pub use submodules::{enumerate_submodules, DEFAULT_SUBMODULE_CAP};
