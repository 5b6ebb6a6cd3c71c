//! Constrained triangulations of a square, their deformation spaces, area
//! polynomials and canonical Monsky polynomials.

pub mod algebra;
pub mod areapoly;
pub mod corpus;
pub mod error;
pub mod io;
pub mod model;
pub mod monsky;
pub mod order;
pub mod param;
pub mod svg;
pub mod valuation;

pub use error::{Error, Result};
