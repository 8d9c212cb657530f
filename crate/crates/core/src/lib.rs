//! Exact computations for general hypergeometric integrals: theta coordinates,
//! the generic stratum, Veronese maps, twisted de Rham cohomology bases and the
//! characteristic-variety check, all over arbitrary-precision rationals.

pub mod algebra;
pub mod charvar;
pub mod derham1d;
pub mod derham_r;
pub mod error;
pub mod form;
pub mod partition;
pub mod report;
pub mod sampling;
pub mod schur;
pub mod suite;
pub mod theta;
pub mod veronese;

pub use error::{Error, Result};
