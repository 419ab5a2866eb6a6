//! Truncated weight-graded simplicial vector spaces and algebras.

mod explicit;
pub mod fixtures;
mod homotopy;
mod moore;
pub mod schema;
mod space;
mod subobject;
mod validate;

pub use explicit::{direct_sum, ExplicitAlgebra, ExplicitBuilder};
pub use homotopy::*;
pub use moore::*;
pub use space::*;
pub use subobject::*;
pub use validate::*;
