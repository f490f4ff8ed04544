//! Polynomial arithmetic, Gröbner bases, and ideals of a polynomial ring.

mod field;
pub(crate) mod gb;
mod ideal;
mod monomial;
mod parse;
mod polynomial;

pub use field::{Field, Scalar, MAX_MODULUS};
pub use ideal::{buchberger, buchberger_naive, IdealS};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{monomials_of_degree, Poly, PolyRing};
