//! Formulas from piecewise-linear functions.
//!
//! An affine `f` is rewritten as a sum of unit summands `r·y` and `r`, with
//! `0 < |r| ≤ 1`. The truncation `♯∘f = (f ∨ 0) ∧ 1` is then built by
//! induction on the number of summands, peeling one summand `h` off `f = g + h`:
//!
//! * `h ≥ 0`: `♯(g + h) = (♯g ⊕ h) ⊙ ¬♯(−g)`;
//! * `h < 0`: `♯(g + h) = (♯(g − 1) ⊕ ¬(−h)) ⊙ ♯g`.
//!
//! A max-min function ranging in `[0, 1]` is the join of meets of truncated
//! affines, so it is synthesized piece by piece. Intermediate formulas are
//! memoized on their summand lists, which keeps the output a shared DAG.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Budget, Error, Result};
use crate::formula::{Formula, Kind};
use crate::geometry::pwl_extrema;
use crate::kernel::UnitRational;
use crate::pwl::{Affine, MaxMin};
use crate::rational::Rational;

/// Longest summand list the recursion accepts; one summand per unit of
/// coefficient magnitude, so this bounds `Σ ⌈|c_i|⌉`.
pub const MAX_SUMMANDS: usize = 4096;

/// `value · x_var`, or the constant `value` when `var` is `None`.
///
/// The derived order puts constants first, then variable summands by index,
/// ties broken by value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub var: Option<usize>,
    pub value: Rational,
}

impl Summand {
    fn neg(&self) -> Summand {
        Summand { var: self.var, value: -&self.value }
    }
}

/// An affine function written as a sum of summands in `[−1, 1] \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSummandDecomposition {
    n: usize,
    summands: Vec<Summand>,
}

impl UnitSummandDecomposition {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sorted in the canonical summand order.
    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// The affine function the summands add up to.
    pub fn reassemble(&self) -> Affine {
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        for s in &self.summands {
            coeffs[s.var.unwrap_or(0)] += &s.value;
        }
        Affine::new(coeffs)
    }
}

/// Splits every non-zero coefficient `c` into `⌈|c|⌉` equal parts.
pub fn decompose_unit_summands(f: &Affine) -> Result<UnitSummandDecomposition> {
    let mut parts = Vec::with_capacity(f.coeffs().len());
    let mut total = 0usize;
    for (i, c) in f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let k = c.abs().ceil().to_usize().filter(|&k| k <= MAX_SUMMANDS - total);
        let Some(k) = k else {
            return Err(Error::TooLarge { pieces: c.abs().ceil().to_u128().unwrap_or(u128::MAX), cap: MAX_SUMMANDS });
        };
        total += k;
        parts.push((i, c / &Rational::from_integer(k as i64), k));
    }
    let mut summands = Vec::with_capacity(total);
    for (i, value, k) in parts {
        let var = (i > 0).then_some(i);
        summands.extend(std::iter::repeat_n(Summand { var, value }, k));
    }
    summands.sort();
    Ok(UnitSummandDecomposition { n: f.dim(), summands })
}

/// A formula whose term function is `♯∘f`.
pub fn synth_trunc_affine(f: &Affine) -> Result<Formula> {
    let d = decompose_unit_summands(f)?;
    Ok(Synth::new(f.dim()).run(&d.summands))
}

/// A formula whose term function is `f`, which must range in `[0, 1]` on the
/// box; otherwise the error carries a point where it does not.
pub fn synth_pwl(f: &MaxMin, budget: &Budget) -> Result<Formula> {
    check_unit_range(f, budget)?;
    let mut synth = Synth::new(f.dim());
    let mut groups = Vec::with_capacity(f.groups().len());
    for group in f.groups() {
        let mut meet: Option<Formula> = None;
        for a in group {
            let phi = synth.run(decompose_unit_summands(a)?.summands());
            meet = Some(match meet {
                None => phi,
                Some(m) => m.meet(&phi),
            });
        }
        groups.push(meet.expect("groups are non-empty"));
    }
    let mut it = groups.into_iter();
    let first = it.next().expect("max-min functions have a group");
    Ok(it.fold(first, |acc, g| acc.join(&g)))
}

fn check_unit_range(f: &MaxMin, budget: &Budget) -> Result<()> {
    if f.obviously_unit_valued() {
        return Ok(());
    }
    let (lo, at_lo, hi, at_hi) = pwl_extrema(f, budget)?;
    if lo.is_negative() {
        return Err(Error::Range { point: at_lo, value: lo });
    }
    if hi > Rational::one() {
        return Err(Error::Range { point: at_hi, value: hi });
    }
    Ok(())
}

struct Synth {
    zero: Formula,
    memo: HashMap<Vec<Summand>, Formula>,
}

impl Synth {
    fn new(n: usize) -> Self {
        let zero = if n == 0 { Formula::constant(UnitRational::zero()) } else { Formula::falsum() };
        Synth { zero, memo: HashMap::new() }
    }

    fn run(&mut self, summands: &[Summand]) -> Formula {
        debug_assert!(summands.windows(2).all(|w| w[0] <= w[1]));
        if let Some(phi) = self.memo.get(summands) {
            return phi.clone();
        }
        let m = summands.len();
        let phi = match m {
            0 => self.zero.clone(),
            1 => self.initial(&summands[0]),
            _ => {
                let (g, h) = summands.split_at(m - 1);
                let h = &h[0];
                if h.value.is_positive() {
                    self.case_one(g, h, m)
                } else {
                    let psi = self.initial(&h.neg());
                    let chi = self.minus_one(g, m);
                    chi.oplus(&psi.not()).odot(&self.sub(g.to_vec(), m))
                }
            }
        };
        self.memo.insert(summands.to_vec(), phi.clone());
        phi
    }

    fn sub(&mut self, mut child: Vec<Summand>, m: usize) -> Formula {
        debug_assert!(child.len() < m, "summand count must decrease");
        child.sort();
        self.run(&child)
    }

    /// `♯(g + h)` for a summand `h ≥ 0`.
    fn case_one(&mut self, g: &[Summand], h: &Summand, m: usize) -> Formula {
        let plus = self.sub(g.to_vec(), m);
        let minus = self.sub(g.iter().map(Summand::neg).collect(), m);
        plus.oplus(&self.initial(h)).odot(&minus.not())
    }

    /// `♯(g − 1)`, where `g` has fewer than `m` summands.
    fn minus_one(&mut self, g: &[Summand], m: usize) -> Formula {
        if !g.iter().any(|s| s.value.is_positive()) {
            return self.zero.clone();
        }
        if let Some(j) = g.iter().position(|s| s.var.is_none() && s.value.is_positive()) {
            let mut child = g.to_vec();
            let flipped = &child[j].value - &Rational::one();
            if flipped.is_zero() {
                child.remove(j);
            } else {
                child[j].value = flipped;
            }
            return self.sub(child, m);
        }
        let j = g.iter().position(|s| s.value.is_positive()).expect("a positive summand");
        let mut g0 = g.to_vec();
        let h0 = g0.remove(j);
        g0.push(Summand { var: None, value: -Rational::one() });
        g0.sort();
        self.case_one(&g0, &h0, m)
    }

    fn initial(&self, s: &Summand) -> Formula {
        if !s.value.is_positive() {
            return self.zero.clone();
        }
        let r = UnitRational::new(s.value.clone()).expect("unit summand");
        match s.var {
            None => Formula::constant(r),
            Some(i) => Formula::delta(r, &Formula::var(i)),
        }
    }
}

/// Local rewrites that preserve the term function: double negation,
/// neutral and absorbing constants for `⊕`, `⊙`, `∨`, `∧`, and scalars 0
/// and 1. Shared subformulas stay shared.
pub fn simplify(formula: &Formula) -> Formula {
    let mut memo = HashMap::new();
    simp(formula, &mut memo)
}

fn is_zero(f: &Formula) -> bool {
    match f.kind() {
        Kind::Const(r) => r.is_zero(),
        Kind::Odot(a, b) => matches!(b.kind(), Kind::Neg(c) if c == a && matches!(a.kind(), Kind::Var(_))),
        _ => false,
    }
}

fn is_one(f: &Formula) -> bool {
    match f.kind() {
        Kind::Const(r) => r.is_one(),
        Kind::Implies(a, b) => a == b && matches!(a.kind(), Kind::Var(_)),
        _ => false,
    }
}

fn simp(f: &Formula, memo: &mut HashMap<*const Kind, Formula>) -> Formula {
    if let Some(g) = memo.get(&f.key()) {
        return g.clone();
    }
    if is_zero(f) || is_one(f) {
        return f.clone();
    }
    let out = match f.kind() {
        Kind::Var(_) | Kind::Const(_) => f.clone(),
        Kind::Neg(a) => {
            let a = simp(a, memo);
            match a.kind() {
                Kind::Neg(inner) => inner.clone(),
                Kind::Const(r) => Formula::constant(crate::kernel::mv_neg(r)),
                _ => a.not(),
            }
        }
        Kind::Implies(a, b) => simp(a, memo).implies(&simp(b, memo)),
        Kind::Nabla(r, a) => {
            if r.is_zero() {
                Formula::constant(UnitRational::one())
            } else {
                let a = simp(a, memo);
                if r.is_one() {
                    a
                } else {
                    Formula::nabla(r.clone(), &a)
                }
            }
        }
        Kind::Delta(r, a) => {
            if r.is_zero() {
                Formula::constant(UnitRational::zero())
            } else {
                let a = simp(a, memo);
                if r.is_one() || is_zero(&a) {
                    a
                } else {
                    Formula::delta(r.clone(), &a)
                }
            }
        }
        Kind::Oplus(a, b) => {
            let (a, b) = (simp(a, memo), simp(b, memo));
            if is_zero(&a) || is_one(&b) {
                b
            } else if is_zero(&b) || is_one(&a) {
                a
            } else {
                a.oplus(&b)
            }
        }
        Kind::Odot(a, b) => {
            let (a, b) = (simp(a, memo), simp(b, memo));
            if is_one(&a) || is_zero(&b) {
                b
            } else if is_one(&b) || is_zero(&a) {
                a
            } else {
                a.odot(&b)
            }
        }
        Kind::Join(a, b) => {
            let (a, b) = (simp(a, memo), simp(b, memo));
            if is_zero(&a) || is_one(&b) || a == b {
                b
            } else if is_zero(&b) || is_one(&a) {
                a
            } else {
                a.join(&b)
            }
        }
        Kind::Meet(a, b) => {
            let (a, b) = (simp(a, memo), simp(b, memo));
            if is_one(&a) || is_zero(&b) || a == b {
                b
            } else if is_one(&b) || is_zero(&a) {
                a
            } else {
                a.meet(&b)
            }
        }
        Kind::Iff(a, b) => simp(a, memo).iff(&simp(b, memo)),
        Kind::Ominus(a, b) => simp(a, memo).ominus(&simp(b, memo)),
    };
    if f.is_shared() {
        memo.insert(f.key(), out.clone());
    }
    out
}
