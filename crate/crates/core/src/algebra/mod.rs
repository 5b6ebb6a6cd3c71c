//! Exact multivariate polynomial arithmetic over the rationals.

pub mod area;
pub mod gcd;
pub mod groebner;
pub mod linear;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfun;

pub use area::{triangle_area, triangle_area_poly, triangle_area_rf, QPoint};
pub use groebner::{buchberger, eliminate, eliminate_with, EliminationOrder, GroebnerBasis, TermOrder};
pub use monomial::Monomial;
pub use parse::ParseError;
pub use poly::{vars, MultiPoly, Vars};
pub use ratfun::RationalFunction;
