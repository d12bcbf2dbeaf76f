//! Exact computation of the filtered triply graded link homology of braid
//! closures, built from filtered Soergel bimodule resolutions and Rouquier
//! complexes over exact rational arithmetic.

pub mod degree;
pub mod poly;
pub mod linalg;
pub mod complex;
pub mod reduce;
pub mod soergel;
pub mod rouquier;
pub mod closure;
pub mod homology;
pub mod laurent;
pub mod invariants;

pub use complex::{ChainMap, ConeDirection, FreeBicomplex, Generator, ViolationReport};
pub use degree::MultiDegree;
pub use poly::{Poly, Variable};
