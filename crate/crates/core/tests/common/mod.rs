//! Random generators shared by the integration suites. Every generator is
//! driven by a seeded ChaCha stream so failures reproduce.

#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use riesz_core::{Affine, Formula, MaxMin, Rational, UnitRational};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[0, 1]` with denominator at most `max_den`.
pub fn unit(rng: &mut TestRng, max_den: i64) -> UnitRational {
    let d = rng.gen_range(1..=max_den);
    UnitRational::ratio(rng.gen_range(0..=d), d)
}

/// A rational in `[lo, hi]` with denominator at most `max_den`.
pub fn rational(rng: &mut TestRng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(lo * d..=hi * d), d)
}

pub fn point(rng: &mut TestRng, n: usize) -> Vec<UnitRational> {
    (0..n).map(|_| unit(rng, 64)).collect()
}

pub fn raw_point(rng: &mut TestRng, n: usize) -> Vec<Rational> {
    point(rng, n).into_iter().map(Rational::from).collect()
}

/// Points with small denominators hit kinks and ties more often than
/// uniformly random ones, so suites mix both.
pub fn mixed_point(rng: &mut TestRng, n: usize) -> Vec<Rational> {
    let den = if rng.gen_bool(0.5) { 4 } else { 997 };
    (0..n).map(|_| Rational::from(unit(rng, den))).collect()
}

#[derive(Clone, Copy)]
pub struct FormulaShape {
    pub vars: usize,
    pub depth: usize,
    /// Allow `∇`, `Δ` and non-Boolean constants.
    pub scalars: bool,
}

pub fn formula(rng: &mut TestRng, shape: FormulaShape) -> Formula {
    if shape.depth == 0 || rng.gen_bool(0.2) {
        if shape.scalars && rng.gen_bool(0.15) {
            return Formula::constant(unit(rng, 6));
        }
        return Formula::var(rng.gen_range(1..=shape.vars));
    }
    let sub = FormulaShape { depth: shape.depth - 1, ..shape };
    let unary = if shape.scalars { 3 } else { 1 };
    let choice = rng.gen_range(0..unary + 7);
    let mut next = || formula(rng, sub);
    match choice {
        0 => next().not(),
        c if c < unary => {
            let inner = next();
            let r = unit(rng, 6);
            if c == 1 {
                Formula::nabla(r, &inner)
            } else {
                Formula::delta(r, &inner)
            }
        }
        c => {
            let (a, b) = (next(), next());
            match c - unary {
                0 => a.implies(&b),
                1 => a.oplus(&b),
                2 => a.odot(&b),
                3 => a.join(&b),
                4 => a.meet(&b),
                5 => a.iff(&b),
                _ => a.ominus(&b),
            }
        }
    }
}

pub fn affine(rng: &mut TestRng, n: usize, bound: i64, max_den: i64) -> Affine {
    Affine::new((0..=n).map(|_| rational(rng, -bound, bound, max_den)).collect())
}

/// Up to `groups` groups of up to `pieces` affines each.
pub fn maxmin(rng: &mut TestRng, n: usize, groups: usize, pieces: usize) -> MaxMin {
    let g = rng.gen_range(1..=groups);
    let gs = (0..g).map(|_| (0..rng.gen_range(1..=pieces)).map(|_| affine(rng, n, 2, 8)).collect()).collect();
    MaxMin::new(n, gs).unwrap()
}

/// An instance of a Łukasiewicz axiom schema over random subformulas, so
/// every result is a tautology.
pub fn tautology(rng: &mut TestRng, vars: usize, depth: usize) -> Formula {
    let shape = FormulaShape { vars, depth, scalars: false };
    let (a, b, c) = (formula(rng, shape), formula(rng, shape), formula(rng, shape));
    match rng.gen_range(0..5) {
        0 => a.implies(&b.implies(&a)),
        1 => a.implies(&b).implies(&b.implies(&c).implies(&a.implies(&c))),
        2 => a.implies(&b).implies(&b).implies(&b.implies(&a).implies(&a)),
        3 => a.not().implies(&b.not()).implies(&b.implies(&a)),
        _ => a.iff(&a).join(&b),
    }
}

/// Random books of `k` events over at most `n` variables. With `coherent`
/// set, the odds are the values of a random state, so the book is coherent.
pub fn book(rng: &mut TestRng, k: usize, n: usize, depth: usize, coherent: bool) -> riesz_core::Book {
    let shape = FormulaShape { vars: n, depth, scalars: true };
    let formulas: Vec<Formula> = (0..k).map(|_| formula(rng, shape)).collect();
    let odds: Vec<UnitRational> = if coherent {
        let m = rng.gen_range(1..=3);
        let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=5)).collect();
        let total: i64 = weights.iter().sum();
        let points: Vec<Vec<Rational>> = (0..m).map(|_| mixed_point(rng, n)).collect();
        formulas
            .iter()
            .map(|f| {
                let s: Rational = points
                    .iter()
                    .zip(&weights)
                    .map(|(p, &w)| f.eval_at(&p[..f.arity()]).unwrap().into_inner() * Rational::new(w, total))
                    .sum();
                UnitRational::new(s).unwrap()
            })
            .collect()
    } else {
        (0..k).map(|_| unit(rng, 10)).collect()
    };
    riesz_core::Book::from_pairs(formulas.into_iter().zip(odds)).unwrap()
}
