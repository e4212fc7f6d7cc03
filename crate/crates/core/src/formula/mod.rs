//! Formulas of the calculus: syntax, evaluation over `[0, 1]`.
//!
//! Nodes are reference counted so that synthesized formulas can share
//! subterms. Evaluation memoizes shared nodes, which keeps the cost linear
//! in the number of distinct subterms rather than in the size of the
//! unfolded tree.

mod parse;
mod print;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::{self, UnitRational};
use crate::rational::Rational;

pub use parse::{parse, ParseError};

/// One node of a formula tree. `Var`, `Neg`, `Implies` and `Nabla` are the
/// primitives; everything else is a stored abbreviation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Kind {
    Var(usize),
    Neg(Formula),
    Implies(Formula, Formula),
    Nabla(UnitRational, Formula),
    Delta(UnitRational, Formula),
    Oplus(Formula, Formula),
    Odot(Formula, Formula),
    Join(Formula, Formula),
    Meet(Formula, Formula),
    Iff(Formula, Formula),
    Ominus(Formula, Formula),
    Const(UnitRational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Formula(Arc<Kind>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("formula mentions v{arity} but the evaluation has only {given} coordinate(s)")]
    ArityMismatch { arity: usize, given: usize },
    #[error("evaluation coordinate {index} is {value}, outside [0, 1]")]
    OutOfRange { index: usize, value: Rational },
}

impl Formula {
    pub fn new(kind: Kind) -> Self {
        if let Kind::Var(i) = kind {
            assert!(i >= 1, "variables are numbered from 1");
        }
        Formula(Arc::new(kind))
    }

    pub fn kind(&self) -> &Kind {
        &self.0
    }

    pub fn var(index: usize) -> Self {
        Self::new(Kind::Var(index))
    }

    pub fn constant(r: UnitRational) -> Self {
        Self::new(Kind::Const(r))
    }

    pub fn not(&self) -> Self {
        Self::new(Kind::Neg(self.clone()))
    }

    pub fn implies(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Implies(self.clone(), rhs.clone()))
    }

    pub fn nabla(r: UnitRational, inner: &Formula) -> Self {
        Self::new(Kind::Nabla(r, inner.clone()))
    }

    pub fn delta(r: UnitRational, inner: &Formula) -> Self {
        Self::new(Kind::Delta(r, inner.clone()))
    }

    pub fn oplus(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Oplus(self.clone(), rhs.clone()))
    }

    pub fn odot(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Odot(self.clone(), rhs.clone()))
    }

    pub fn join(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Join(self.clone(), rhs.clone()))
    }

    pub fn meet(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Meet(self.clone(), rhs.clone()))
    }

    pub fn iff(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Iff(self.clone(), rhs.clone()))
    }

    pub fn ominus(&self, rhs: &Formula) -> Self {
        Self::new(Kind::Ominus(self.clone(), rhs.clone()))
    }

    /// `v1 ⊙ ¬v1`, the canonical formula for the constant 0.
    pub fn falsum() -> Self {
        let v1 = Self::var(1);
        v1.odot(&v1.not())
    }

    /// `v1 → v1`, the canonical formula for the constant 1.
    pub fn verum() -> Self {
        let v1 = Self::var(1);
        v1.implies(&v1)
    }

    /// The distance formula `(φ ⊖ ψ) ⊕ (ψ ⊖ φ)`.
    pub fn distance(&self, rhs: &Formula) -> Self {
        self.ominus(rhs).oplus(&rhs.ominus(self))
    }

    /// Largest variable index occurring in the formula, 0 if there is none.
    pub fn arity(&self) -> usize {
        let mut memo = HashMap::new();
        arity_rec(self, &mut memo)
    }

    /// `true` when no `Nabla`/`Delta` connective and no constant other than
    /// 0 and 1 occurs.
    pub fn is_lukasiewicz(&self) -> bool {
        match self.kind() {
            Kind::Var(_) => true,
            Kind::Nabla(..) | Kind::Delta(..) => false,
            Kind::Const(r) => r.is_zero() || r.is_one(),
            Kind::Neg(a) => a.is_lukasiewicz(),
            Kind::Implies(a, b)
            | Kind::Oplus(a, b)
            | Kind::Odot(a, b)
            | Kind::Join(a, b)
            | Kind::Meet(a, b)
            | Kind::Iff(a, b)
            | Kind::Ominus(a, b) => a.is_lukasiewicz() && b.is_lukasiewicz(),
        }
    }

    /// Rewrites every abbreviation into `¬`, `→` and `∇_r`.
    ///
    /// Constants become `Δ_r(v1 → v1)`, so the result may mention `v1` even
    /// when the input did not.
    pub fn expand(&self) -> Formula {
        let mut memo = HashMap::new();
        expand_rec(self, &mut memo)
    }

    /// The value `e(φ)` for the evaluation `e(v_i) = point[i - 1]`.
    ///
    /// Coordinates beyond the arity are ignored.
    pub fn eval(&self, point: &[UnitRational]) -> Result<UnitRational, EvalError> {
        let arity = self.arity();
        if arity > point.len() {
            return Err(EvalError::ArityMismatch { arity, given: point.len() });
        }
        let mut memo = HashMap::new();
        Ok(eval_rec(self, point, &mut memo))
    }

    /// Like [`Formula::eval`] for raw rationals, validating the range.
    pub fn eval_at(&self, point: &[Rational]) -> Result<UnitRational, EvalError> {
        let units = to_units(point)?;
        self.eval(&units)
    }

    pub(crate) fn key(&self) -> *const Kind {
        Arc::as_ptr(&self.0)
    }

    pub(crate) fn is_shared(&self) -> bool {
        Arc::strong_count(&self.0) > 1
    }
}

/// Validates that every coordinate is in `[0, 1]`.
pub fn to_units(point: &[Rational]) -> Result<Vec<UnitRational>, EvalError> {
    point
        .iter()
        .enumerate()
        .map(|(i, x)| {
            UnitRational::new(x.clone()).map_err(|_| EvalError::OutOfRange { index: i + 1, value: x.clone() })
        })
        .collect()
}

fn children(kind: &Kind) -> (Option<&Formula>, Option<&Formula>) {
    match kind {
        Kind::Var(_) | Kind::Const(_) => (None, None),
        Kind::Neg(a) | Kind::Nabla(_, a) | Kind::Delta(_, a) => (Some(a), None),
        Kind::Implies(a, b)
        | Kind::Oplus(a, b)
        | Kind::Odot(a, b)
        | Kind::Join(a, b)
        | Kind::Meet(a, b)
        | Kind::Iff(a, b)
        | Kind::Ominus(a, b) => (Some(a), Some(b)),
    }
}

fn arity_rec(f: &Formula, memo: &mut HashMap<*const Kind, usize>) -> usize {
    if let Some(&a) = memo.get(&f.key()) {
        return a;
    }
    let a = match f.kind() {
        Kind::Var(i) => *i,
        kind => {
            let (l, r) = children(kind);
            let l = l.map_or(0, |c| arity_rec(c, memo));
            let r = r.map_or(0, |c| arity_rec(c, memo));
            l.max(r)
        }
    };
    if f.is_shared() {
        memo.insert(f.key(), a);
    }
    a
}

fn expand_rec(f: &Formula, memo: &mut HashMap<*const Kind, Formula>) -> Formula {
    if let Some(e) = memo.get(&f.key()) {
        return e.clone();
    }
    let mut go = |g: &Formula| expand_rec(g, memo);
    let e = match f.kind() {
        Kind::Var(_) => f.clone(),
        Kind::Neg(a) => go(a).not(),
        Kind::Implies(a, b) => go(a).implies(&go(b)),
        Kind::Nabla(r, a) => Formula::nabla(r.clone(), &go(a)),
        // Δ_r φ := ¬∇_r ¬φ
        Kind::Delta(r, a) => Formula::nabla(r.clone(), &go(a).not()).not(),
        // φ ⊕ ψ := ¬φ → ψ
        Kind::Oplus(a, b) => go(a).not().implies(&go(b)),
        // φ ⊙ ψ := ¬(φ → ¬ψ)
        Kind::Odot(a, b) => go(a).implies(&go(b).not()).not(),
        // φ ∨ ψ := (φ → ψ) → ψ
        Kind::Join(a, b) => {
            let (a, b) = (go(a), go(b));
            expand_join(&a, &b)
        }
        // φ ∧ ψ := ¬(¬φ ∨ ¬ψ)
        Kind::Meet(a, b) => {
            let (a, b) = (go(a), go(b));
            expand_meet(&a, &b)
        }
        // φ ↔ ψ := (φ → ψ) ∧ (ψ → φ)
        Kind::Iff(a, b) => {
            let (a, b) = (go(a), go(b));
            expand_meet(&a.implies(&b), &b.implies(&a))
        }
        // φ ⊖ ψ := φ ⊙ ¬ψ
        Kind::Ominus(a, b) => go(a).implies(&go(b).not().not()).not(),
        // r := Δ_r(v1 → v1)
        Kind::Const(r) => Formula::nabla(r.clone(), &Formula::verum().not()).not(),
    };
    if f.is_shared() {
        memo.insert(f.key(), e.clone());
    }
    e
}

fn expand_join(a: &Formula, b: &Formula) -> Formula {
    a.implies(b).implies(b)
}

fn expand_meet(a: &Formula, b: &Formula) -> Formula {
    expand_join(&a.not(), &b.not()).not()
}

fn eval_rec(f: &Formula, point: &[UnitRational], memo: &mut HashMap<*const Kind, UnitRational>) -> UnitRational {
    if let Some(v) = memo.get(&f.key()) {
        return v.clone();
    }
    use kernel::*;
    let mut go = |g: &Formula| eval_rec(g, point, memo);
    let v = match f.kind() {
        Kind::Var(i) => point[i - 1].clone(),
        Kind::Const(r) => r.clone(),
        // e(¬φ) = e(φ)*
        Kind::Neg(a) => mv_neg(&go(a)),
        // e(φ → ψ) = e(φ)* ⊕ e(ψ)
        Kind::Implies(a, b) => {
            let a = go(a);
            mv_oplus(&mv_neg(&a), &go(b))
        }
        // e(∇_r φ) = (r · e(φ)*)*
        Kind::Nabla(r, a) => mv_neg(&scalar_mul(r, &mv_neg(&go(a)))),
        Kind::Delta(r, a) => scalar_mul(r, &go(a)),
        Kind::Oplus(a, b) => {
            let a = go(a);
            mv_oplus(&a, &go(b))
        }
        Kind::Odot(a, b) => {
            let a = go(a);
            mv_odot(&a, &go(b))
        }
        Kind::Join(a, b) => {
            let a = go(a);
            mv_join(&a, &go(b))
        }
        Kind::Meet(a, b) => {
            let a = go(a);
            mv_meet(&a, &go(b))
        }
        Kind::Iff(a, b) => {
            let (a, b) = (go(a), go(b));
            mv_meet(&mv_implies(&a, &b), &mv_implies(&b, &a))
        }
        Kind::Ominus(a, b) => {
            let a = go(a);
            mv_odot(&a, &mv_neg(&go(b)))
        }
    };
    if f.is_shared() {
        memo.insert(f.key(), v.clone());
    }
    v
}
