//! Exact scalars, polynomials and Laurent polynomials over ℚ(i).

mod laurent;
pub mod linalg;
mod poly;
mod scalar;

pub use laurent::LaurentPoly;
pub use linalg::Matrix;
pub use poly::Poly;
pub use scalar::GaussianRational;
