pub mod bundle;
pub mod cache;
pub mod cartan;
pub mod coeff;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod parabolic;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod uqrep;
pub mod verify;

pub use cartan::{CartanData, Family, Weight};
pub use error::{Error, Result};
pub use report::{Check, CheckList};
pub use scalar::{LaurentPoly, NumericValue, RationalFunction, Rf, Q};
pub use uqrep::{build_irrep, AlgebraWord, Gen, IrrepModule, MatrixRep};
