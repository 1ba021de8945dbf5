//! Exact-arithmetic toolkit for skew Gelfand-Tsetlin polytopes.

pub mod classify;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod linalg;
pub mod partition;
pub mod pattern;
pub mod polytope;
pub mod poset;
pub mod rational;
pub mod report;
pub mod repro;
pub mod refinement;
pub mod shape;
pub mod tableau;
pub mod tiling;

pub use error::{Error, Result};
pub use partition::{Composition, Partition};
pub use pattern::GTPattern;
pub use rational::Rational;
pub use polytope::PolytopeSpec;
pub use shape::SkewShape;
pub use tableau::SkewTableau;
