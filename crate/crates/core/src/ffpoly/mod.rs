//! Exact arithmetic over F_p and sparse Laurent polynomials in `x, y, z`
//! (plus a helper variable `t` for univariate work).

mod field;
mod monomial;
mod parse;
mod poly;
mod univariate;

pub use field::{is_prime, FieldError, Fp, PrimeField, PrimeFieldElement, MAX_MODULUS};
pub use monomial::{Monomial, Var};
pub use parse::{parse_polynomial, ParseError, ParseErrorKind, MAX_EXPONENT};
pub use poly::{PolyError, SparsePolynomial};
pub use univariate::{univariate_gcd, UnivariateError, UnivariatePoly};
