//! Exact arithmetic substrate: rationals, polynomials, 3×3 matrices, projective points.

mod linalg;
mod mat3;
mod point;
mod poly;
mod rat;

pub use linalg::RatMatrix;
pub use mat3::{char_poly_matches, residue_of_form, FinitePole, Mat3, RatMat3};
pub use point::PPoint;
pub use poly::{interpolate_quadratic, Poly};
pub use rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("cannot parse {input:?} as a rational: {reason}")]
    ParseRat { input: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("gauge matrix is not invertible over the polynomial ring")]
    SingularGauge,
}
