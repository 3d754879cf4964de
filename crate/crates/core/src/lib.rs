//! Exact rational polyhedral computation: H/V representations, projections,
//! redundancy analysis, and extension-relationship checks between polytopes
//! stated over named variable classes.
//!
//! Everything is computed in arbitrary-precision rational arithmetic, so all
//! comparisons are exact and every negative answer comes with a certificate
//! (a Farkas witness, a recession ray, or a concrete separating point).

pub mod dd;
pub mod ef;
pub mod error;
pub mod lp;
pub mod map;
pub mod matrix;
pub mod models;
pub mod polyhedron;
pub mod projection;
pub mod rational;
pub mod redundancy;
pub mod space;

pub use error::{Error, Result};
pub use map::AffineMapSpec;
pub use polyhedron::{HPoly, Sense, VPoly};
pub use rational::{RatVector, Rational};
pub use space::{VarSpace, Variable};
