use std::collections::HashMap;

use super::MaxMin;
use crate::error::{Budget, Error, Result};
use crate::formula::{Formula, Kind};
use crate::rational::Rational;

/// The term function of `formula` on `[0, 1]^n`, in max-min form.
///
/// Follows the formula structure: a variable is a projection, `¬ψ` is
/// `1 - ψ̂`, `ψ → χ` is the truncation of `1 - ψ̂ + χ̂`, `∇_r ψ` is
/// `1 - r + r ψ̂`, and each abbreviation uses the term function of its
/// definition.
pub fn term_pwl(formula: &Formula, n: usize) -> Result<MaxMin> {
    term_pwl_within(formula, n, &Budget::default())
}

pub fn term_pwl_within(formula: &Formula, n: usize, budget: &Budget) -> Result<MaxMin> {
    let arity = formula.arity();
    if arity > n {
        return Err(Error::Arity { arity, n });
    }
    let mut memo = HashMap::new();
    Term { n, budget, memo: &mut memo }.go(formula)
}

struct Term<'a> {
    n: usize,
    budget: &'a Budget,
    memo: &'a mut HashMap<*const Kind, MaxMin>,
}

impl Term<'_> {
    fn go(&mut self, f: &Formula) -> Result<MaxMin> {
        if let Some(t) = self.memo.get(&f.key()) {
            return Ok(t.clone());
        }
        let b = self.budget;
        let one = Rational::one();
        let t = match f.kind() {
            Kind::Var(i) => MaxMin::projection(self.n, *i),
            Kind::Const(r) => MaxMin::constant(self.n, r.value().clone()),
            Kind::Neg(a) => self.go(a)?.one_minus_within(b)?,
            Kind::Implies(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                implication(&a, &c, b)?
            }
            Kind::Nabla(r, a) => {
                let r = r.value();
                self.go(a)?.scale(r)?.shift(&(&one - r))
            }
            // ¬∇_r¬ψ evaluates to r·ψ̂.
            Kind::Delta(r, a) => self.go(a)?.scale(r.value())?,
            Kind::Oplus(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                a.add_within(&c, b)?.trunc()
            }
            Kind::Odot(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                a.add_within(&c, b)?.shift(&-one).trunc()
            }
            Kind::Join(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                a.join(&c)?
            }
            Kind::Meet(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                a.meet_within(&c, b)?
            }
            Kind::Iff(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                implication(&a, &c, b)?.meet_within(&implication(&c, &a, b)?, b)?
            }
            // ψ ⊙ ¬χ
            Kind::Ominus(a, c) => {
                let (a, c) = (self.go(a)?, self.go(c)?);
                a.add_within(&c.one_minus_within(b)?, b)?.shift(&-one).trunc()
            }
        };
        if t.size() > b.max_pieces {
            return Err(Error::TooLarge { pieces: t.size() as u128, cap: b.max_pieces });
        }
        if f.is_shared() {
            self.memo.insert(f.key(), t.clone());
        }
        Ok(t)
    }
}

fn implication(a: &MaxMin, c: &MaxMin, budget: &Budget) -> Result<MaxMin> {
    Ok(a.one_minus_within(budget)?.add_within(c, budget)?.trunc())
}

/// `trunc(Σ c_i f_i)`.
///
/// A negative coefficient multiplies `-f_i`, obtained as `(1 - f_i) - 1`.
pub fn linear_combination(fs: &[MaxMin], cs: &[Rational]) -> Result<MaxMin> {
    linear_combination_within(fs, cs, &Budget::default())
}

pub fn linear_combination_within(fs: &[MaxMin], cs: &[Rational], budget: &Budget) -> Result<MaxMin> {
    if fs.len() != cs.len() {
        return Err(Error::Length { what: "coefficient list", got: cs.len(), expected: fs.len() });
    }
    let n = match fs.first() {
        Some(f) => f.dim(),
        None => return Err(Error::Invalid("linear combination of no functions".into())),
    };
    let mut acc = MaxMin::constant(n, Rational::zero());
    for (f, c) in fs.iter().zip(cs) {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: f.dim() });
        }
        if c.is_zero() {
            continue;
        }
        let term = if c.is_negative() { f.negate_within(budget)?.scale(&c.abs())? } else { f.scale(c)? };
        acc = acc.add_within(&term, budget)?;
    }
    Ok(acc.trunc())
}
