pub mod composition;
pub mod error;
pub mod linalg;
pub mod nsym;
pub mod peak;
pub mod scalar;
pub mod transforms;
pub mod verify;

pub use composition::{Composition, IntSet, Permutation};
pub use error::{Error, Result};
pub use scalar::{Cyclotomic, Rational, Scalar};
pub use nsym::{internal_product, Basis, NsymElement, OracleConfig};
