//! Exact algebra: rational polynomials, factorization, the number field
//! ℚ(λ) of the inflation, Pisot testing and Perron–Frobenius data.

mod eigen;
pub mod factor;
mod field;
mod pisot;
mod poly;
pub mod sturm;

pub use eigen::{char_poly, left_pf_eigenvector, min_poly_of_pf_root};
pub use field::{FieldElement, NumberField, ISOLATION_BITS};
pub use pisot::{default_tolerance, pisot_test, PisotKind, PisotVerdict};
pub use poly::RationalPolynomial;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero or constant polynomial where a root was expected")]
    ZeroPolynomial,
    #[error("polynomial syntax error: {0}")]
    PolynomialSyntax(String),
    #[error("factorization supports degree at most {max}, got {degree}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("polynomial {0} is reducible over Q")]
    Reducible(String),
    #[error("polynomial {0} has no real root")]
    NoRealRoot(String),
    #[error("inflation is not greater than 1: {0}")]
    NotExpanding(String),
    #[error("minimal polynomial {0} is not monic with integer coefficients")]
    NotAlgebraicInteger(String),
    #[error("field elements belong to different number fields")]
    FieldMismatch,
    #[error("division by zero in number field")]
    DivisionByZero,
    #[error("{got} coordinates given for a field of degree {degree}")]
    CoordinateLength { got: usize, degree: usize },
    #[error("matrix is not primitive; no Perron-Frobenius data")]
    NotPrimitive,
    #[error("internal algebra error: {0}")]
    Internal(String),
}
