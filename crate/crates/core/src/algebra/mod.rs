//! Exact arithmetic substrate.

pub mod gcd;
pub mod linfrac;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod symmetric;
pub mod upoly;

pub use matrix::ExactMatrix;
pub use poly::{Monomial, MultiPoly, Vars};
pub use ratfunc::RatFunc;
pub use rational::ExactScalar;
pub use linfrac::{BaseSet, LinFrac};
pub use series::{series_log, series_pow, CoeffRing, LogSeries, TruncSeries};
