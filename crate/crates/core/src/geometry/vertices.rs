#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Budget, Error, Result};
use crate::pwl::{Affine, MaxMin};
use crate::rational::Rational;

/// The zero set of a non-constant affine function, normalized so that its
/// first non-zero linear coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane(Affine);

impl Hyperplane {
    /// `None` for constant functions, whose zero set is empty or everything.
    pub fn new(a: &Affine) -> Option<Self> {
        let lead = a.linear().iter().find(|c| !c.is_zero())?.clone();
        Some(Hyperplane(a.scale(&lead.recip())))
    }

    pub fn equation(&self) -> &Affine {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Whether the hyperplane meets the closed box.
    pub fn meets_box(&self) -> bool {
        !self.0.box_min().is_positive() && !self.0.box_max().is_negative()
    }
}

/// Deduplicated points of `[0, 1]^n`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    points: Vec<Vec<Rational>>,
}

impl VertexSet {
    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<Rational>> {
        self.points.iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vec<Rational>;
    type IntoIter = std::slice::Iter<'a, Vec<Rational>>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// The arrangement of `{a = b}` for every pair of components and of the box
/// facets, restricted to hyperplanes that meet the box.
pub fn arrangement(n: usize, components: &[Affine]) -> Vec<Hyperplane> {
    let mut set = BTreeSet::new();
    for i in 1..=n {
        let xi = Affine::projection(n, i);
        set.insert(Hyperplane::new(&xi).expect("projection"));
        set.insert(Hyperplane::new(&xi.shift(&-Rational::one())).expect("projection"));
    }
    for (k, a) in components.iter().enumerate() {
        for b in &components[k + 1..] {
            if let Some(h) = Hyperplane::new(&a.sub(b)) {
                if h.meets_box() {
                    set.insert(h);
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Candidate extremal points of `f`: every point of the box where `n`
/// independent hyperplanes of the arrangement of its components meet.
///
/// `f` is affine on each cell of that arrangement, so its minimum and
/// maximum over the box are attained on the returned set.
pub fn candidate_vertices(f: &MaxMin, budget: &Budget) -> Result<VertexSet> {
    vertices_of_components(f.dim(), &f.components(), budget)
}

pub fn vertices_of_components(n: usize, components: &[Affine], budget: &Budget) -> Result<VertexSet> {
    if n == 0 {
        return Ok(VertexSet { points: vec![vec![]] });
    }
    let planes = arrangement(n, components);
    let systems = binomial(planes.len() as u128, n as u128);
    if systems > budget.max_systems as u128 {
        return Err(Error::BudgetExceeded { systems, budget: budget.max_systems });
    }
    let planes: Vec<Vec<Rational>> = planes.iter().map(|h| h.equation().coeffs().to_vec()).collect();
    // Parallel over the first hyperplane of each n-subset; the merge sorts,
    // so the result does not depend on scheduling.
    let mut points: Vec<Vec<Rational>> = (0..planes.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut rest = Vec::with_capacity(n);
            rest.push(first);
            extend_subsets(&planes, n, first + 1, &mut rest, &mut found);
            found
        })
        .collect();
    points.par_sort_unstable();
    points.dedup();
    Ok(VertexSet { points })
}

fn extend_subsets(
    planes: &[Vec<Rational>],
    n: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<Rational>>,
) {
    if chosen.len() == n {
        if let Some(p) = intersect(planes, chosen) {
            if p.iter().all(|x| !x.is_negative() && *x <= Rational::one()) {
                found.push(p);
            }
        }
        return;
    }
    let need = n - chosen.len();
    for k in from..=planes.len().saturating_sub(need) {
        chosen.push(k);
        extend_subsets(planes, n, k + 1, chosen, found);
        chosen.pop();
    }
}

/// Solves `c0 + Σ c_i x_i = 0` for the chosen hyperplanes by exact Gaussian
/// elimination; `None` when the system is singular.
fn intersect(planes: &[Vec<Rational>], chosen: &[usize]) -> Option<Vec<Rational>> {
    let n = chosen.len();
    // Rows [c1 .. cn | -c0].
    let mut m: Vec<Vec<Rational>> = chosen
        .iter()
        .map(|&k| {
            let h = &planes[k];
            let mut row: Vec<Rational> = h[1..].to_vec();
            row.push(-&h[0]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=n {
                    let delta = &factor * &m[col][j];
                    m[r][j] -= &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
