//! Exact computations in truncated relative cohomology, Deligne complexes of
//! Dolbeault algebras, products of Green objects, and closed-form arithmetic
//! intersection numbers on modular curves.

pub mod algebra;
pub mod arithmetic;
pub mod complex;
pub mod deligne;
pub mod dolbeault;
pub mod error;
pub mod green;
pub mod iterated;
pub mod json;
pub mod linalg;
pub mod random;
pub mod relative;
pub mod signs;
pub mod truncated;

pub use complex::{CohomologySpace, Complex, ComplexMap};
pub use error::{Error, Result};
pub use linalg::{Matrix, Q};
pub mod verify;
