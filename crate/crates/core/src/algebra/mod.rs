//! Exact scalars, sparse polynomials, finitely presented rings and the
//! Groebner machinery everything else is built on.

pub mod groebner;
pub mod ideal;
pub mod matrix;
pub mod module;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalar;
