//! Exact extrema of term functions over `[0, 1]^n` and the decision
//! procedures built on them.
//!
//! A formula is provable exactly when its term function is constantly 1, so
//! validity, invalidity, equivalence and the unit seminorm all reduce to a
//! minimum or a maximum, which is attained at a vertex of the arrangement
//! generated by the components of the term function.

mod vertices;

use rayon::prelude::*;

pub use vertices::{arrangement, candidate_vertices, vertices_of_components, Hyperplane, VertexSet};

use crate::error::{Budget, Result};
use crate::formula::Formula;
use crate::kernel::UnitRational;
use crate::pwl::{term_pwl_within, MaxMin};
use crate::rational::Rational;

/// A value of a term function together with a point attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremum {
    pub value: UnitRational,
    pub witness: Vec<Rational>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sense {
    Min,
    Max,
}

fn best<'a, I>(values: I, sense: Sense) -> Option<(Rational, &'a Vec<Rational>)>
where
    I: ParallelIterator<Item = (Rational, usize, &'a Vec<Rational>)>,
{
    // The index breaks ties so the witness is the first optimal vertex in
    // sorted order, whatever the thread schedule.
    let pick = |a: (Rational, usize, &'a Vec<Rational>), b: (Rational, usize, &'a Vec<Rational>)| {
        let better = match sense {
            Sense::Min => (&b.0, b.1) < (&a.0, a.1),
            Sense::Max => b.0 > a.0 || (b.0 == a.0 && b.1 < a.1),
        };
        if better {
            b
        } else {
            a
        }
    };
    values.reduce_with(pick).map(|(v, _, p)| (v, p))
}

/// Optimizes `formula` over a supplied point set, which the caller asserts
/// contains the extrema of its term function.
pub fn extremum_on(formula: &Formula, points: &VertexSet, minimize: bool) -> Result<Extremum> {
    let sense = if minimize { Sense::Min } else { Sense::Max };
    let arity = formula.arity();
    let values: Vec<(Rational, usize, &Vec<Rational>)> = points
        .points()
        .par_iter()
        .enumerate()
        .map(|(i, p)| Ok((formula.eval_at(&p[..arity.min(p.len())])?.into_inner(), i, p)))
        .collect::<Result<_>>()?;
    let (value, witness) = best(values.into_par_iter(), sense).expect("vertex sets are never empty");
    Ok(Extremum { value: UnitRational::from_checked(value), witness: witness.clone() })
}

fn optimize(formula: &Formula, sense: Sense, budget: &Budget) -> Result<Extremum> {
    let n = formula.arity();
    if n == 0 {
        let value = formula.eval(&[])?;
        return Ok(Extremum { value, witness: vec![] });
    }
    let term = term_pwl_within(formula, n, budget)?;
    let points = candidate_vertices(&term, budget)?;
    extremum_on(formula, &points, sense == Sense::Min)
}

/// Exact minimum of the term function over `[0, 1]^n`, `n` the arity.
pub fn minimum(formula: &Formula, budget: &Budget) -> Result<Extremum> {
    optimize(formula, Sense::Min, budget)
}

/// Exact maximum of the term function over `[0, 1]^n`, `n` the arity.
pub fn maximum(formula: &Formula, budget: &Budget) -> Result<Extremum> {
    optimize(formula, Sense::Max, budget)
}

/// Minimum and maximum of a max-min function over the box, evaluated on its
/// candidate vertices.
pub fn pwl_extrema(f: &MaxMin, budget: &Budget) -> Result<(Rational, Vec<Rational>, Rational, Vec<Rational>)> {
    let points = candidate_vertices(f, budget)?;
    let values = || points.points().par_iter().enumerate().map(|(i, p)| (f.eval_unchecked(p), i, p));
    let (lo, at_lo) = best(values(), Sense::Min).expect("non-empty");
    let (hi, at_hi) = best(values(), Sense::Max).expect("non-empty");
    Ok((lo, at_lo.clone(), hi, at_hi.clone()))
}

/// `φ` is provable: its term function is constantly 1.
pub fn is_valid(formula: &Formula, budget: &Budget) -> Result<bool> {
    Ok(minimum(formula, budget)?.value.is_one())
}

/// Some evaluation sends `φ` to 0; returns that evaluation.
pub fn is_invalid(formula: &Formula, budget: &Budget) -> Result<Option<Vec<Rational>>> {
    let m = minimum(formula, budget)?;
    Ok(m.value.is_zero().then_some(m.witness))
}

/// `φ` and `ψ` have the same term function, decided by the maximum of the
/// distance formula.
pub fn semantic_equiv(phi: &Formula, psi: &Formula, budget: &Budget) -> Result<bool> {
    Ok(delta_norm(phi, psi, budget)?.is_zero())
}

/// The unit seminorm, which on term functions is the supremum norm.
pub fn unit_norm(formula: &Formula, budget: &Budget) -> Result<UnitRational> {
    Ok(maximum(formula, budget)?.value)
}

/// The pseudometric `‖d(φ, ψ)‖`.
pub fn delta_norm(phi: &Formula, psi: &Formula, budget: &Budget) -> Result<UnitRational> {
    unit_norm(&phi.distance(psi), budget)
}
