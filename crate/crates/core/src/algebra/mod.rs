//! Exact coefficient ring, multivariate polynomials and truncated series.

mod coefficient;
mod parse;
mod poly;
mod rational;
mod series;

pub use coefficient::{Coefficient, MonoKey};
pub use parse::{parse_poly, parse_poly_in};
pub use poly::{k_vars, MultiPoly};
pub use rational::{factorial, int_binomial, rat, rat_frac, rational_binomial, Rational};
pub use series::{constant_term_extract, series_expand, x_vars, LaurentFactor, TruncSeries};
