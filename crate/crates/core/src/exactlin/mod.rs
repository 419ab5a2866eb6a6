//! Exact scalars and sparse linear algebra over labeled bases.

mod map;
mod scalar;
mod sparse;

pub use map::{homology_dims, intersect, render_combination, Label, LabeledBasis, LinearMap};
pub use scalar::{Field, Scalar};
pub use sparse::{kernel_of_columns, rank_of, Echelon, Quotient, SparseVec, Subspace};
