//! Quasi-linear combinations: formulas whose term function is
//! `♯(Σ c_i f_i)` for given functions `f_i` and real weights `c_i`.

use super::{event_image, Book};
use crate::error::{Budget, Error, Result};
use crate::formula::Formula;
use crate::geometry::extremum_on;
use crate::kernel::UnitRational;
use crate::pwl::{linear_combination_within, term_pwl_within, MaxMin};
use crate::rational::Rational;
use crate::synthesis::synth_pwl;

fn synth_combination(fs: &[MaxMin], cs: &[Rational], budget: &Budget) -> Result<Formula> {
    let f = linear_combination_within(fs, cs, budget)?;
    synth_pwl(&f, budget)
}

fn check_len(cs: &[Rational], k: usize) -> Result<()> {
    if cs.len() != k {
        return Err(Error::Length { what: "stake vector", got: cs.len(), expected: k });
    }
    Ok(())
}

/// A member of the span of `formulas`: term function `♯(Σ c_i ψ̂_i)` on
/// `[0, 1]^n`.
pub fn span_of(formulas: &[Formula], cs: &[Rational], n: usize, budget: &Budget) -> Result<Formula> {
    check_len(cs, formulas.len())?;
    let fs = formulas.iter().map(|f| term_pwl_within(f, n, budget)).collect::<Result<Vec<_>>>()?;
    synth_combination(&fs, cs, budget)
}

/// A formula with term function `♯(Σ c_i (φ̂_i − r_i))`.
pub fn span_member(book: &Book, cs: &[Rational], budget: &Budget) -> Result<Formula> {
    check_len(cs, book.len())?;
    let n = book.arity();
    let fs = book
        .events()
        .iter()
        .map(|e| Ok(term_pwl_within(&e.formula, n, budget)?.shift(&-e.odd.value())))
        .collect::<Result<Vec<_>>>()?;
    synth_combination(&fs, cs, budget)
}

/// A span member together with an evaluation sending it to 0, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCheck {
    pub formula: Formula,
    pub zero_at: Option<Vec<Rational>>,
}

impl SpanCheck {
    pub fn is_invalid(&self) -> bool {
        self.zero_at.is_some()
    }
}

/// Builds [`span_member`] and decides whether it is invalid.
///
/// The inner sum is affine on every cell of the book's arrangement and `♯`
/// is monotone, so the minimum of the member is attained at a vertex of the
/// book; the member's own arrangement is never built.
pub fn span_invalidity(book: &Book, cs: &[Rational], budget: &Budget) -> Result<SpanCheck> {
    let formula = span_member(book, cs, budget)?;
    let image = event_image(book, budget)?;
    let min = extremum_on(&formula, &image.points, true)?;
    let zero_at = min.value.is_zero().then_some(min.witness);
    Ok(SpanCheck { formula, zero_at })
}

/// `∇_{r_1}φ_1 ⊕ … ⊕ ∇_{r_k}φ_k`. Its term function is
/// `♯(Σ (1 − r_i + r_i φ̂_i))`; see [`delta_combination`] for the member of
/// the span.
pub fn nabla_combination(formulas: &[Formula], rs: &[UnitRational]) -> Result<Formula> {
    if formulas.len() != rs.len() {
        return Err(Error::Length { what: "scalar list", got: rs.len(), expected: formulas.len() });
    }
    formulas
        .iter()
        .zip(rs)
        .map(|(f, r)| Formula::nabla(r.clone(), f))
        .reduce(|acc, t| acc.oplus(&t))
        .ok_or_else(|| Error::Invalid("empty combination".into()))
}

/// `Δ_{r_1}φ_1 ⊕ … ⊕ Δ_{r_k}φ_k`, whose term function is `♯(Σ r_i φ̂_i)`;
/// unlike the `∇` form it lies in the span of the `φ_i`.
pub fn delta_combination(formulas: &[Formula], rs: &[UnitRational]) -> Result<Formula> {
    if formulas.len() != rs.len() {
        return Err(Error::Length { what: "scalar list", got: rs.len(), expected: formulas.len() });
    }
    formulas
        .iter()
        .zip(rs)
        .map(|(f, r)| Formula::delta(r.clone(), f))
        .reduce(|acc, t| acc.oplus(&t))
        .ok_or_else(|| Error::Invalid("empty combination".into()))
}

/// `φ ⊖ r` when `c ≥ 0`, else `r ⊖ φ`, with `r` the constant formula.
pub fn psi_construct(phi: &Formula, r: &UnitRational, c: &Rational) -> Formula {
    let r = Formula::constant(r.clone());
    if c.is_negative() {
        r.ominus(phi)
    } else {
        phi.ominus(&r)
    }
}

/// A member of the span of the formulas `r_i ⊖ φ_i`; for a coherent book
/// every such member is invalid.
pub fn necessary_span_member(book: &Book, cs: &[Rational], budget: &Budget) -> Result<Formula> {
    let gaps: Vec<Formula> =
        book.events().iter().map(|e| Formula::constant(e.odd.clone()).ominus(&e.formula)).collect();
    span_of(&gaps, cs, book.arity(), budget)
}
