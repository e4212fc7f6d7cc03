use std::collections::BTreeSet;
use std::fmt;

use super::Affine;
use crate::error::{Budget, Error, Result};
use crate::rational::Rational;

/// A piecewise-linear function on `[0, 1]^n` written as a maximum of minima
/// of affine pieces.
///
/// Every constructor and operation returns a pruned value: pieces dominated
/// inside their group and groups subsumed by another group are removed, and
/// the remainder is sorted, so structurally equal functions compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MaxMin {
    n: usize,
    groups: Vec<Vec<Affine>>,
}

impl MaxMin {
    /// Checks dimensions and non-emptiness, then prunes.
    pub fn new(n: usize, groups: Vec<Vec<Affine>>) -> Result<Self> {
        if groups.is_empty() || groups.iter().any(Vec::is_empty) {
            return Err(Error::Invalid("max-min functions need non-empty groups".into()));
        }
        for a in groups.iter().flatten() {
            if a.dim() != n {
                return Err(Error::DimensionMismatch { left: n, right: a.dim() });
            }
        }
        Ok(Self::pruned(n, groups))
    }

    pub fn affine(a: Affine) -> Self {
        MaxMin { n: a.dim(), groups: vec![vec![a]] }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::affine(Affine::constant(n, c))
    }

    pub fn projection(n: usize, i: usize) -> Self {
        Self::affine(Affine::projection(n, i))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &[Vec<Affine>] {
        &self.groups
    }

    /// Total number of affine pieces over all groups.
    pub fn size(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[Rational]) -> Rational {
        self.groups
            .iter()
            .map(|g| g.iter().map(|a| a.eval(x)).min().expect("non-empty group"))
            .max()
            .expect("non-empty max-min")
    }

    /// The distinct affine pieces, sorted.
    pub fn components(&self) -> Vec<Affine> {
        let set: BTreeSet<&Affine> = self.groups.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    fn same_dim(&self, other: &MaxMin) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn check_cap(pieces: u128, budget: &Budget) -> Result<()> {
        if pieces > budget.max_pieces as u128 {
            return Err(Error::TooLarge { pieces, cap: budget.max_pieces });
        }
        Ok(())
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &MaxMin) -> Result<MaxMin> {
        self.same_dim(other)?;
        let groups = self.groups.iter().chain(&other.groups).cloned().collect();
        Ok(Self::pruned(self.n, groups))
    }

    /// Pointwise minimum, by distributing over every pair of groups.
    pub fn meet(&self, other: &MaxMin) -> Result<MaxMin> {
        self.meet_within(other, &Budget::default())
    }

    pub fn meet_within(&self, other: &MaxMin, budget: &Budget) -> Result<MaxMin> {
        self.same_dim(other)?;
        let (gl, gr) = (self.groups.len() as u128, other.groups.len() as u128);
        let pieces = gr * self.size() as u128 + gl * other.size() as u128;
        Self::check_cap(pieces, budget)?;
        let mut groups = Vec::with_capacity((gl * gr) as usize);
        for g in &self.groups {
            for h in &other.groups {
                groups.push(g.iter().chain(h).cloned().collect());
            }
        }
        Ok(Self::pruned(self.n, groups))
    }

    /// Pointwise sum: `+` distributes over both `max` and `min`.
    pub fn add(&self, other: &MaxMin) -> Result<MaxMin> {
        self.add_within(other, &Budget::default())
    }

    pub fn add_within(&self, other: &MaxMin, budget: &Budget) -> Result<MaxMin> {
        self.same_dim(other)?;
        let pieces = self.size() as u128 * other.size() as u128;
        Self::check_cap(pieces, budget)?;
        let mut groups = Vec::new();
        for g in &self.groups {
            for h in &other.groups {
                groups.push(g.iter().flat_map(|a| h.iter().map(move |b| a.add(b))).collect());
            }
        }
        Ok(Self::pruned(self.n, groups))
    }

    /// `r * self` for `r >= 0`.
    pub fn scale(&self, r: &Rational) -> Result<MaxMin> {
        if r.is_negative() {
            return Err(Error::Invalid(format!("negative scale factor {r}")));
        }
        if r.is_zero() {
            return Ok(Self::constant(self.n, Rational::zero()));
        }
        let groups = self.groups.iter().map(|g| g.iter().map(|a| a.scale(r)).collect()).collect();
        Ok(MaxMin { n: self.n, groups })
    }

    /// `self + c` for a constant `c`.
    pub fn shift(&self, c: &Rational) -> MaxMin {
        let groups = self.groups.iter().map(|g| g.iter().map(|a| a.shift(c)).collect()).collect();
        MaxMin { n: self.n, groups }
    }

    /// `1 - self`.
    ///
    /// `1 - max_i min_j a_ij = min_i max_j (1 - a_ij)`; the outer minimum is
    /// turned back into max-min form one group at a time, pruning as it goes.
    pub fn one_minus(&self) -> Result<MaxMin> {
        self.one_minus_within(&Budget::default())
    }

    pub fn one_minus_within(&self, budget: &Budget) -> Result<MaxMin> {
        let flipped = |g: &Vec<Affine>| MaxMin { n: self.n, groups: g.iter().map(|a| vec![a.one_minus()]).collect() };
        let mut groups = self.groups.iter();
        let mut acc = Self::pruned(self.n, flipped(groups.next().expect("non-empty")).groups);
        for g in groups {
            acc = acc.meet_within(&flipped(g), budget)?;
        }
        Ok(acc)
    }

    /// `-self`.
    pub fn negate_within(&self, budget: &Budget) -> Result<MaxMin> {
        Ok(self.one_minus_within(budget)?.shift(&-Rational::one()))
    }

    /// The truncation `(f ∨ 0) ∧ 1`.
    pub fn trunc(&self) -> MaxMin {
        let mut groups = self.groups.clone();
        groups.push(vec![Affine::zero(self.n)]);
        for g in &mut groups {
            g.push(Affine::one(self.n));
        }
        Self::pruned(self.n, groups)
    }

    /// Re-runs the pruning pass. Values returned by this type are always
    /// pruned already; this exists for callers that want the operation
    /// explicitly.
    pub fn prune(&self) -> MaxMin {
        Self::pruned(self.n, self.groups.clone())
    }

    /// `true` when the structure alone proves `0 <= f <= 1` on the box: every
    /// group has a piece that is at most 1 and some group has all pieces at
    /// least 0. Truncated functions always pass.
    pub fn obviously_unit_valued(&self) -> bool {
        let le_one = self.groups.iter().all(|g| g.iter().any(|a| a.box_max() <= Rational::one()));
        let ge_zero = self.groups.iter().any(|g| g.iter().all(|a| !a.box_min().is_negative()));
        le_one && ge_zero
    }

    fn pruned(n: usize, groups: Vec<Vec<Affine>>) -> MaxMin {
        // Work on indices into the distinct pieces with a lazily filled
        // domination table.
        let pieces: Vec<Affine> = groups.iter().flatten().collect::<BTreeSet<_>>().into_iter().cloned().collect();
        let index = |a: &Affine| pieces.binary_search(a).expect("piece is present");
        let mut table = DominationTable::new(&pieces);

        let mut idx_groups: Vec<Vec<usize>> = groups
            .iter()
            .map(|g| {
                let mut ids: Vec<usize> = g.iter().map(index).collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();

        // Inside a group, a piece that some other piece lies below never
        // attains the minimum alone. Distinct affine functions cannot
        // dominate each other mutually on a full-dimensional box.
        for ids in &mut idx_groups {
            let snapshot = ids.clone();
            ids.retain(|&p| !snapshot.iter().any(|&q| q != p && table.le(q, p)));
        }
        idx_groups.sort();
        idx_groups.dedup();

        // Group G is dropped when another group H satisfies min H >= min G,
        // witnessed by: every h in H lies above some g in G.
        let mut alive = vec![true; idx_groups.len()];
        for i in 0..idx_groups.len() {
            let subsumed = (0..idx_groups.len()).any(|j| {
                j != i && alive[j] && idx_groups[j].iter().all(|&h| idx_groups[i].iter().any(|&g| table.le(g, h)))
            });
            if subsumed {
                alive[i] = false;
            }
        }

        let groups = idx_groups
            .into_iter()
            .zip(alive)
            .filter(|(_, keep)| *keep)
            .map(|(ids, _)| ids.into_iter().map(|i| pieces[i].clone()).collect())
            .collect();
        MaxMin { n, groups }
    }
}

struct DominationTable<'a> {
    pieces: &'a [Affine],
    cells: Vec<u8>,
}

impl<'a> DominationTable<'a> {
    fn new(pieces: &'a [Affine]) -> Self {
        DominationTable { pieces, cells: vec![0; pieces.len() * pieces.len()] }
    }

    /// `pieces[a] <= pieces[b]` on the box.
    fn le(&mut self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let cell = &mut self.cells[a * self.pieces.len() + b];
        if *cell == 0 {
            *cell = if self.pieces[a].le_on_box(&self.pieces[b]) { 2 } else { 1 };
        }
        *cell == 2
    }
}

impl fmt::Display for MaxMin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("max{")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("min{")?;
            for (j, a) in g.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for MaxMin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
