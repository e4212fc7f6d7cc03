//! Exact piecewise-linear functions on the unit cube in max-min form.

mod affine;
pub mod io;
mod maxmin;
mod term;

pub use affine::Affine;
pub use maxmin::MaxMin;
pub use term::{linear_combination, linear_combination_within, term_pwl, term_pwl_within};

use crate::rational::Rational;

/// `♯(x) = (x ∨ 0) ∧ 1` on a single number.
pub fn clamp_unit(x: &Rational) -> Rational {
    x.clone().max(Rational::zero()).min(Rational::one())
}
