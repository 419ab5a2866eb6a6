//! Iterated monomials and the comonad structure of the free non-unital
//! commutative algebra functor.

mod element;
mod enumerate;
mod ops;
mod term;

pub use element::Element;
pub use enumerate::{free_counts, free_monomials};
pub use ops::{
    apply_linear, combine_children, comult_at, comult_layer, counit_at, counit_layer, diagonal_operator,
    eta_indecomposables, free_product, multiply, rewrite_at, rewrite_element_at, zero_product, ProductFn,
};
pub use term::{Generator, Term};
