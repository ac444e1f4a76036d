//! Exact computations for commutative subalgebras of matrix algebras:
//! centralizers, radical filtrations, socles and endomorphism algebras of
//! modules over local algebras, plus a case-by-case verifier showing that
//! no faithful 6-dimensional module of a 5-dimensional local algebra has a
//! maximal commutative image.

pub mod algebra;
pub mod centralizer;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod module;
pub mod normal_form;
pub mod verify;

pub use error::{AlgebraError, CentralizerError, InputError, LinalgError, ModuleError, NormalFormError};
pub use field::{Field, FieldElement};
pub use matrix::{Matrix, Subspace, Vector};
pub use module::{FiltrationVector, ModuleRep};
