//! Certified lower bounds for conjugate-sum measures of algebraic integers
//! via explicit auxiliary functions: exact integer-polynomial arithmetic,
//! certified complex root finding, auxiliary-function minimization,
//! coefficient optimization by semi-infinite linear programming, LLL-based
//! discovery of new auxiliary polynomials, and sector/staircase bounds.

pub mod auxfun;
pub mod discovery;
pub mod hp;
pub mod intpoly;
pub mod lattice;
pub mod roots;
pub mod sector;
pub mod siplp;
pub mod smythseq;
pub mod tables;

pub use intpoly::IntPolynomial;
