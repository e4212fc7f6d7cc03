//! Exact two-phase simplex for `min c·x  s.t.  A x = b, x ≥ 0`.
//!
//! Dense tableau over exact rationals with Bland's rule, so it cannot cycle.
//! Besides a primal solution it reports the data that certify the answer:
//! optimal duals, or a Farkas vector when the system is infeasible.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `x` is a basic optimal solution; `duals` satisfy `c − Aᵀy ≥ 0` and
    /// `y·b = objective`.
    Optimal {
        x: Vec<Rational>,
        objective: Rational,
        duals: Vec<Rational>,
    },
    /// `z` with `zᵀA ≥ 0` and `z·b < 0`, so no `x ≥ 0` solves `A x = b`.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

/// Only feasibility: minimizes the zero objective.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Result<LpOutcome> {
    let cols = a.first().map_or(0, Vec::len);
    solve(a, b, &vec![Rational::zero(); cols])
}

pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<LpOutcome> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::Length { what: "right-hand side", got: b.len(), expected: m });
    }
    let n = c.len();
    if let Some(row) = a.iter().find(|row| row.len() != n) {
        return Err(Error::Length { what: "constraint row", got: row.len(), expected: n });
    }
    Ok(Tableau::new(a, b).run(c))
}

struct Tableau {
    m: usize,
    n: usize,
    /// Rows `[A' | I | b']` with rows flipped so that `b' ≥ 0`.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs over all `n + m` columns, then `−objective`.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    sign: Vec<bool>,
}

impl Tableau {
    fn new(a: &[Vec<Rational>], b: &[Rational]) -> Self {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(m);
        let mut sign = Vec::with_capacity(m);
        for (i, (row, bi)) in a.iter().zip(b).enumerate() {
            let flip = bi.is_negative();
            sign.push(flip);
            let mut r = Vec::with_capacity(n + m + 1);
            r.extend(row.iter().map(|v| if flip { -v } else { v.clone() }));
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            r.push(if flip { -bi } else { bi.clone() });
            rows.push(r);
        }
        Tableau { m, n, rows, cost: Vec::new(), basis: (n..n + m).collect(), sign }
    }

    fn width(&self) -> usize {
        self.n + self.m
    }

    /// Installs an objective on all columns and prices out the basis.
    fn price(&mut self, costs: &[Rational]) {
        let w = self.width();
        let mut cost: Vec<Rational> = costs.to_vec();
        cost.push(Rational::zero());
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &costs[bv];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !self.rows[i][j].is_zero() {
                    let d = cb * &self.rows[i][j];
                    cost[j] -= &d;
                }
            }
        }
        self.cost = cost;
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width();
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nonzero: Vec<usize> = (0..=w).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nonzero {
                let d = &f * &pivot_row[j];
                row[j] -= &d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = col;
    }

    /// Bland's rule over columns `< limit`. `false` when unbounded.
    fn iterate(&mut self, limit: usize) -> bool {
        let w = self.width();
        loop {
            let Some(col) = (0..limit).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.m {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][w] / a;
                let better = match &best {
                    None => true,
                    Some((br, bvar, _)) => ratio < *br || (ratio == *br && self.basis[i] < *bvar),
                };
                if better {
                    best = Some((ratio, self.basis[i], i));
                }
            }
            match best {
                None => return false,
                Some((_, _, r)) => self.pivot(r, col),
            }
        }
    }

    fn unflip(&self, y: Vec<Rational>) -> Vec<Rational> {
        y.into_iter().zip(&self.sign).map(|(v, &flip)| if flip { -v } else { v }).collect()
    }

    fn run(mut self, c: &[Rational]) -> LpOutcome {
        let (n, m, w) = (self.n, self.m, self.width());

        let mut phase_one = vec![Rational::zero(); n];
        phase_one.extend(std::iter::repeat_n(Rational::one(), m));
        self.price(&phase_one);
        self.iterate(w);
        if self.cost[w].is_negative() {
            // Phase-one duals are `1 − d_art`; their negation separates b.
            let z = (0..m).map(|i| &self.cost[n + i] - &Rational::one()).collect();
            return LpOutcome::Infeasible { farkas: self.unflip(z) };
        }

        // Drive zero-level artificials out where an original column allows;
        // rows where none does are redundant and keep their artificial.
        for i in 0..m {
            if self.basis[i] >= n {
                if let Some(col) = (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, col);
                }
            }
        }

        let mut phase_two = c.to_vec();
        phase_two.extend(std::iter::repeat_n(Rational::zero(), m));
        self.price(&phase_two);
        if !self.iterate(n) {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < n {
                x[bv] = self.rows[i][w].clone();
            }
        }
        let objective = -&self.cost[w];
        let y = (0..m).map(|i| -&self.cost[n + i]).collect();
        LpOutcome::Optimal { x, objective, duals: self.unflip(y) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect()
    }

    fn vec_(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x1 - x2 with x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6.
        let a = mat(&[&["1", "2", "1", "0"], &["3", "1", "0", "1"]]);
        let out = solve(&a, &vec_(&["4", "6"]), &vec_(&["-1", "-1", "0", "0"])).unwrap();
        match out {
            LpOutcome::Optimal { x, objective, duals } => {
                assert_eq!(objective, q("-14/5"));
                assert_eq!(&x[..2], &vec_(&["8/5", "6/5"])[..]);
                assert_eq!(duals, vec_(&["-2/5", "-1/5"]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_has_farkas() {
        // x1 + x2 = 1 and x1 + x2 = 2.
        let a = mat(&[&["1", "1"], &["1", "1"]]);
        let b = vec_(&["1", "2"]);
        match feasible_point(&a, &b).unwrap() {
            LpOutcome::Infeasible { farkas } => {
                for j in 0..2 {
                    let col: Rational = (0..2).map(|i| &farkas[i] * &a[i][j]).sum();
                    assert!(!col.is_negative());
                }
                let zb: Rational = farkas.iter().zip(&b).map(|(z, b)| z * b).sum();
                assert!(zb.is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_handled() {
        let a = mat(&[&["-1", "1"]]);
        match solve(&a, &vec_(&["-2"]), &vec_(&["1", "1"])).unwrap() {
            LpOutcome::Optimal { x, objective, .. } => {
                assert_eq!(x, vec_(&["2", "0"]));
                assert_eq!(objective, q("2"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded() {
        let a = mat(&[&["1", "-1"]]);
        assert_eq!(solve(&a, &vec_(&["0"]), &vec_(&["0", "-1"])).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = mat(&[&["1", "1", "1"], &["2", "2", "2"]]);
        match solve(&a, &vec_(&["1", "2"]), &vec_(&["3", "1", "2"])).unwrap() {
            LpOutcome::Optimal { x, objective, .. } => {
                assert_eq!(objective, q("1"));
                assert_eq!(x, vec_(&["0", "1", "0"]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shape_errors() {
        assert!(solve(&mat(&[&["1"]]), &vec_(&["1", "2"]), &vec_(&["0"])).is_err());
        assert!(solve(&mat(&[&["1", "2"]]), &vec_(&["1"]), &vec_(&["0"])).is_err());
    }
}
