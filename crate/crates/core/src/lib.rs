pub mod cycles;
pub mod error;
pub mod fraction;
pub mod graded;
pub mod laurent;
pub mod lonely;
mod modgcd;
pub mod morita;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod sigma;
pub mod skew;
pub mod verify;

pub use error::{AlgebraError, Result};
pub use laurent::LaurentPoly;
pub use poly::Poly;
pub use scalar::{RatFunc, Scalar, Q};
