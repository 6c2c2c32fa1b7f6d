//! Exact arithmetic for generalized Witt algebras `W(n,m)` and their relatives.
//!
//! Elements are finite sums of `e^{α·x} x^β ∂_i` with rational coefficients.
//! On top of the bracket sit gradings, finite simplicity probes, the
//! derivation decomposition for `W*(1,0)`, and the quantum torus algebras.

pub mod basis;
pub mod bracket;
pub mod derivation;
pub mod error;
pub mod expr;
pub mod grading;
pub mod linalg;
pub mod lincomb;
pub mod pathological;
pub mod quantum_torus;
pub mod simplicity;
pub mod truncation;

pub use basis::{make_basis, AlgebraSignature, BasisElement, Element, FunctionElement, FunctionTerm, MultiIndex, Variant};
pub use bracket::{act, act_commutator, bracket, bracket_basis, bracket_with, embed, jacobi_defect, BracketForm};
pub use error::{Result, WittError};
pub use expr::{format_element, format_function, parse_element, parse_function};
pub use grading::{GradeKey, GradeScheme};
pub use lincomb::{int, rat, LinComb, Rational};
pub use truncation::TruncationBox;
