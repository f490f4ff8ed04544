//! Exact graded commutative algebra over the rationals and prime fields.
//!
//! Layers, bottom up: [`poly`] (polynomials, Gröbner bases, ideals of `S`),
//! [`quotient`] (the ring `A = S/I`), [`module`] (free modules, syzygies,
//! resolutions, Ext), [`audit`] (checks on finite free complexes),
//! [`koszul`] and [`delta`].

pub mod audit;
pub mod delta;
pub mod error;
pub mod koszul;
pub mod module;
pub mod poly;
pub mod quotient;

pub use error::AlgebraError;
