//! Reference computations written directly from the definitions, sharing no
//! code with the library beyond the formula syntax tree.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use riesz_core::{Affine, Formula, Kind, Rational};

pub type Q = BigRational;

pub fn big(r: &Rational) -> Q {
    r.to_big()
}

pub fn small(q: &Q) -> Rational {
    Rational::from_big(q.clone())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn clamp(x: Q) -> Q {
    if x.is_negative() {
        Q::zero()
    } else if x > Q::one() {
        Q::one()
    } else {
        x
    }
}

pub fn sharp(x: &Rational) -> Rational {
    small(&clamp(big(x)))
}

fn min(a: Q, b: Q) -> Q {
    if a < b {
        a
    } else {
        b
    }
}

fn max(a: Q, b: Q) -> Q {
    if a > b {
        a
    } else {
        b
    }
}

/// Truth value by the textbook clauses. Exponential on shared DAGs, so it is
/// only used on generated trees.
pub fn eval(f: &Formula, x: &[Q]) -> Q {
    let one = Q::one();
    match f.kind() {
        Kind::Var(i) => x[*i - 1].clone(),
        Kind::Const(r) => big(r.value()),
        Kind::Neg(a) => &one - eval(a, x),
        Kind::Implies(a, b) => min(one.clone(), &one - eval(a, x) + eval(b, x)),
        Kind::Nabla(r, a) => {
            let r = big(r.value());
            &one - &r + r * eval(a, x)
        }
        Kind::Delta(r, a) => big(r.value()) * eval(a, x),
        Kind::Oplus(a, b) => min(one, eval(a, x) + eval(b, x)),
        Kind::Odot(a, b) => max(Q::zero(), eval(a, x) + eval(b, x) - one),
        Kind::Join(a, b) => max(eval(a, x), eval(b, x)),
        Kind::Meet(a, b) => min(eval(a, x), eval(b, x)),
        Kind::Iff(a, b) => one - (eval(a, x) - eval(b, x)).abs(),
        Kind::Ominus(a, b) => max(Q::zero(), eval(a, x) - eval(b, x)),
    }
}

pub fn eval_r(f: &Formula, x: &[Rational]) -> Rational {
    let x: Vec<Q> = x.iter().map(big).collect();
    small(&eval(f, &x))
}

/// Points of `[0, 1]^n` whose coordinates are multiples of `1/steps`.
pub fn grid(n: usize, steps: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Rational>| {
                (0..=steps).map(move |k| {
                    let mut p = p.clone();
                    p.push(Rational::new(k, steps));
                    p
                })
            })
            .collect();
    }
    out
}

/// Solves the square system `rows · x = rhs`, or `None` if singular.
pub fn solve_square(mut rows: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rows.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, p);
        rhs.swap(col, p);
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[col][col];
                for j in col..n {
                    let d = &f * &rows[col][j];
                    rows[r][j] -= d;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &rows[i][i]).collect())
}

fn subsets(len: usize, k: usize, from: usize, acc: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if acc.len() == k {
        out(acc);
        return;
    }
    for i in from..len {
        acc.push(i);
        subsets(len, k, i + 1, acc, out);
        acc.pop();
    }
}

/// Calls `out` on every `k`-subset of `0..len`.
pub fn for_each_subset(len: usize, k: usize, out: &mut dyn FnMut(&[usize])) {
    subsets(len, k, 0, &mut Vec::new(), out);
}

/// Vertices of the arrangement of pairwise component differences and box
/// facets, by plain enumeration. Planes are scaled so the first non-zero
/// coefficient is 1, deduplicated, and dropped when they miss the box.
pub fn arrangement_vertices(n: usize, components: &[Affine]) -> Vec<Vec<Q>> {
    // Each plane is (linear part, constant) for `a·x + c = 0`.
    let mut planes: Vec<(Vec<Q>, Q)> = Vec::new();
    for i in 0..n {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        planes.push((e.clone(), Q::zero()));
        planes.push((e, -Q::one()));
    }
    for (a_i, a) in components.iter().enumerate() {
        for b in &components[a_i + 1..] {
            let lin: Vec<Q> = a.linear().iter().zip(b.linear()).map(|(x, y)| big(x) - big(y)).collect();
            let Some(lead) = lin.iter().find(|c| !c.is_zero()).cloned() else {
                continue;
            };
            let c = (big(a.constant_term()) - big(b.constant_term())) / &lead;
            let lin: Vec<Q> = lin.into_iter().map(|x| x / &lead).collect();
            let lo: Q = &c + lin.iter().filter(|x| x.is_negative()).sum::<Q>();
            let hi: Q = &c + lin.iter().filter(|x| x.is_positive()).sum::<Q>();
            if !lo.is_positive() && !hi.is_negative() {
                planes.push((lin, c));
            }
        }
    }
    planes.sort();
    planes.dedup();
    let found: Vec<Vec<Q>> = (0..planes.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut local = Vec::new();
            let rest = planes.len() - first - 1;
            for_each_subset(rest, n - 1, &mut |idx| {
                let chosen = std::iter::once(first).chain(idx.iter().map(|&i| first + 1 + i));
                let (rows, rhs): (Vec<Vec<Q>>, Vec<Q>) =
                    chosen.map(|i| (planes[i].0.clone(), -planes[i].1.clone())).unzip();
                if let Some(p) = solve_square(rows, rhs) {
                    if p.iter().all(|c| !c.is_negative() && *c <= Q::one()) {
                        local.push(p);
                    }
                }
            });
            local
        })
        .collect();
    let mut found = found;
    found.sort();
    found.dedup();
    found
}

/// Whether `b` lies in the convex hull of `points`, by trying every
/// linearly independent set of lifted columns `(1, p)`.
pub fn in_hull(points: &[Vec<Q>], b: &[Q]) -> bool {
    let k = b.len();
    let mut target = vec![Q::one()];
    target.extend(b.iter().cloned());
    let mut uniq = points.to_vec();
    uniq.sort();
    uniq.dedup();
    for size in 1..=(k + 1).min(uniq.len()) {
        let mut hit = false;
        for_each_subset(uniq.len(), size, &mut |idx| {
            if hit {
                return;
            }
            if let Some(w) = least_squares_exact(&uniq, idx, &target) {
                if w.iter().all(|x| !x.is_negative()) {
                    hit = true;
                }
            }
        });
        if hit {
            return true;
        }
    }
    false
}

/// Solves `Σ_j w_j (1, p_j) = target` for the chosen columns when the
/// columns are independent and the system is consistent.
fn least_squares_exact(points: &[Vec<Q>], idx: &[usize], target: &[Q]) -> Option<Vec<Q>> {
    let m = target.len();
    let s = idx.len();
    let col = |j: usize, i: usize| if i == 0 { Q::one() } else { points[idx[j]][i - 1].clone() };
    // Normal equations are exact over the rationals for independent columns.
    let gram: Vec<Vec<Q>> =
        (0..s).map(|a| (0..s).map(|b| (0..m).map(|i| col(a, i) * col(b, i)).sum()).collect()).collect();
    let rhs: Vec<Q> = (0..s).map(|a| (0..m).map(|i| col(a, i) * &target[i]).sum()).collect();
    let w = solve_square(gram, rhs)?;
    let consistent = (0..m).all(|i| (0..s).map(|j| &w[j] * col(j, i)).sum::<Q>() == target[i]);
    consistent.then_some(w)
}
