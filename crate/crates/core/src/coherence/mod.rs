//! Books of many-valued events and the de Finetti coherence decision.
//!
//! A book `{(φ_i, r_i)}` is coherent when `r` is the value of a state, that
//! is, a convex combination of evaluations. The image of the box under
//! `F = (φ̂_1, …, φ̂_k)` has the same convex hull as its values on the
//! candidate vertices of the joint arrangement, so coherence is an exact LP
//! feasibility question over finitely many columns. Feasibility yields a
//! state witness; infeasibility yields stakes that lose money uniformly.

mod io;
mod span;

use crate::error::{Budget, Error, Result};
use crate::formula::Formula;
use crate::geometry::{vertices_of_components, VertexSet};
use crate::kernel::UnitRational;
use crate::lp::{self, LpOutcome};
use crate::pwl::term_pwl_within;
use crate::rational::Rational;

pub use io::{BookFile, EventEntry};
pub use span::{
    delta_combination, nabla_combination, necessary_span_member, psi_construct, span_invalidity, span_member, span_of,
    SpanCheck,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub formula: Formula,
    pub odd: UnitRational,
}

/// A non-empty list of events with their betting odds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Book {
    events: Vec<Event>,
}

impl Book {
    pub fn new(events: Vec<Event>) -> Result<Self> {
        if events.is_empty() {
            return Err(Error::Invalid("a book needs at least one event".into()));
        }
        Ok(Book { events })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Formula, UnitRational)>>(pairs: I) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(formula, odd)| Event { formula, odd }).collect())
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// The largest arity among the events.
    pub fn arity(&self) -> usize {
        self.events.iter().map(|e| e.formula.arity()).max().unwrap_or(0)
    }

    pub fn odds(&self) -> Vec<Rational> {
        self.events.iter().map(|e| e.odd.value().clone()).collect()
    }

    /// `(φ_1(x), …, φ_k(x))` at a point of dimension [`Book::arity`].
    pub fn values_at(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.events.iter().map(|e| Ok(e.formula.eval_at(x)?.into_inner())).collect()
    }
}

/// The candidate vertices of the joint arrangement and the event values there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventImage {
    pub points: VertexSet,
    pub values: Vec<Vec<Rational>>,
}

pub fn event_image(book: &Book, budget: &Budget) -> Result<EventImage> {
    let n = book.arity();
    let mut components = Vec::new();
    for e in book.events() {
        components.extend(term_pwl_within(&e.formula, n, budget)?.components());
    }
    components.sort();
    components.dedup();
    let points = vertices_of_components(n, &components, budget)?;
    let values = points.iter().map(|p| book.values_at(p)).collect::<Result<_>>()?;
    Ok(EventImage { points, values })
}

/// A state given as a convex combination of evaluations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateWitness {
    pub support: Vec<(Vec<Rational>, Rational)>,
}

/// Stakes `c` with `Σ c_i (r_i − e(φ_i)) ≤ −margin` for every evaluation `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DutchBook {
    pub stakes: Vec<Rational>,
    pub margin: Rational,
}

impl DutchBook {
    /// `Σ c_i (r_i − v_i)`: the bettor's gain when the events take values `v`.
    pub fn payoff(&self, odds: &[Rational], values: &[Rational]) -> Rational {
        self.stakes.iter().zip(odds).zip(values).map(|((c, r), v)| c * &(r - v)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Coherent(StateWitness),
    Incoherent(DutchBook),
}

impl Verdict {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Verdict::Coherent(_))
    }
}

/// Decides coherence exactly.
///
/// The witness is a basic solution, so it uses at most `k + 1` evaluations.
/// Dutch-book stakes maximize the guaranteed loss among stakes with
/// `max |c_i| ≤ 1`; the margin is that loss.
pub fn check_coherent(book: &Book, budget: &Budget) -> Result<Verdict> {
    let image = event_image(book, budget)?;
    let k = book.len();
    let odds = book.odds();

    // Columns with equal values are interchangeable; keep the first point.
    let mut order: Vec<usize> = (0..image.values.len()).collect();
    order.sort_by(|&a, &b| image.values[a].cmp(&image.values[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| image.values[*a] == image.values[*b]);
    order.sort_unstable();
    let cols: Vec<&Vec<Rational>> = order.iter().map(|&j| &image.values[j]).collect();

    let mut a = vec![vec![Rational::one(); cols.len()]];
    for i in 0..k {
        a.push(cols.iter().map(|v| v[i].clone()).collect());
    }
    let mut b = vec![Rational::one()];
    b.extend(odds.iter().cloned());

    match lp::feasible_point(&a, &b)? {
        LpOutcome::Optimal { x, .. } => {
            let support = x
                .into_iter()
                .zip(&order)
                .filter(|(w, _)| !w.is_zero())
                .map(|(w, &j)| (image.points.points()[j].clone(), w))
                .collect();
            Ok(Verdict::Coherent(StateWitness { support }))
        }
        LpOutcome::Infeasible { farkas } => {
            let stakes = max_margin_stakes(&a, &b, k).unwrap_or_else(|| normalize(&farkas[1..]));
            let margin = -image
                .values
                .iter()
                .map(|v| DutchBook { stakes: stakes.clone(), margin: Rational::zero() }.payoff(&odds, v))
                .reduce(Rational::max)
                .expect("image is non-empty");
            debug_assert!(margin.is_positive());
            Ok(Verdict::Incoherent(DutchBook { stakes, margin }))
        }
        LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
    }
}

/// Stakes from the optimal duals of `min Σ (p_i + q_i)` subject to
/// `Σ α_v F_i(v) − p_i + q_i = r_i`, `Σ α_v = 1`, all variables `≥ 0`.
///
/// Dual feasibility bounds each stake by 1 in absolute value and makes the
/// optimal value the best uniform loss such stakes can force.
fn max_margin_stakes(a: &[Vec<Rational>], b: &[Rational], k: usize) -> Option<Vec<Rational>> {
    let cols = a[0].len();
    let mut rows: Vec<Vec<Rational>> = a.to_vec();
    for (r, row) in rows.iter_mut().enumerate() {
        for i in 0..k {
            let on = r == i + 1;
            row.push(if on { -Rational::one() } else { Rational::zero() });
            row.push(if on { Rational::one() } else { Rational::zero() });
        }
    }
    let mut c = vec![Rational::zero(); cols];
    c.extend(std::iter::repeat_n(Rational::one(), 2 * k));
    match lp::solve(&rows, b, &c).ok()? {
        LpOutcome::Optimal { duals, objective, .. } if objective.is_positive() => {
            Some(duals[1..].iter().map(|y| -y).collect())
        }
        _ => None,
    }
}

fn normalize(v: &[Rational]) -> Vec<Rational> {
    let scale = v.iter().map(Rational::abs).reduce(Rational::max).unwrap_or_else(Rational::one);
    if scale.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &scale).collect()
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("weights must be non-negative and sum to 1")]
    Weights,
    #[error("support of size {size} exceeds {bound}")]
    SupportSize { size: usize, bound: usize },
    #[error("support point {0} is not a point of the box of the book's dimension")]
    Point(usize),
    #[error("event {event} has state value {got}, expected {expected}")]
    Value { event: usize, got: Rational, expected: Rational },
    #[error("expected {expected} stakes, got {got}")]
    Stakes { got: usize, expected: usize },
    #[error("margin must be positive")]
    Margin,
    #[error("at {point:?} the payoff {payoff} exceeds the negated margin")]
    Payoff { point: Vec<Rational>, payoff: Rational },
}

/// Re-checks a state witness by exact evaluation.
pub fn verify_witness(book: &Book, w: &StateWitness) -> Result<(), CertificateError> {
    let k = book.len();
    if w.support.len() > k + 1 {
        return Err(CertificateError::SupportSize { size: w.support.len(), bound: k + 1 });
    }
    let total: Rational = w.support.iter().map(|(_, a)| a.clone()).sum();
    if !total.is_one() || w.support.iter().any(|(_, a)| a.is_negative()) {
        return Err(CertificateError::Weights);
    }
    let n = book.arity();
    let mut sums = vec![Rational::zero(); k];
    for (j, (p, alpha)) in w.support.iter().enumerate() {
        let values = if p.len() == n { book.values_at(p).ok() } else { None };
        let values = values.ok_or(CertificateError::Point(j))?;
        for (s, v) in sums.iter_mut().zip(values) {
            *s += &(alpha * &v);
        }
    }
    for (event, (got, expected)) in sums.into_iter().zip(book.odds()).enumerate() {
        if got != expected {
            return Err(CertificateError::Value { event, got, expected });
        }
    }
    Ok(())
}

/// Re-checks a Dutch book at every candidate vertex of the book.
///
/// The payoff is piecewise linear with pieces bounded by the joint
/// arrangement, so the vertex check covers every evaluation.
pub fn verify_dutch_book(book: &Book, d: &DutchBook, budget: &Budget) -> Result<Result<(), CertificateError>> {
    if d.stakes.len() != book.len() {
        return Ok(Err(CertificateError::Stakes { got: d.stakes.len(), expected: book.len() }));
    }
    if !d.margin.is_positive() {
        return Ok(Err(CertificateError::Margin));
    }
    let image = event_image(book, budget)?;
    let odds = book.odds();
    let bound = -&d.margin;
    for (p, v) in image.points.iter().zip(&image.values) {
        let payoff = d.payoff(&odds, v);
        if payoff > bound {
            return Ok(Err(CertificateError::Payoff { point: p.clone(), payoff }));
        }
    }
    Ok(Ok(()))
}

/// Verifies either kind of certificate.
pub fn verify(book: &Book, verdict: &Verdict, budget: &Budget) -> Result<Result<(), CertificateError>> {
    match verdict {
        Verdict::Coherent(w) => Ok(verify_witness(book, w)),
        Verdict::Incoherent(d) => verify_dutch_book(book, d, budget),
    }
}

/// `s(ψ) = Σ α_j e_j(ψ)` for the state the witness describes.
pub fn state_eval(w: &StateWitness, psi: &Formula) -> Result<UnitRational> {
    let mut acc = Rational::zero();
    for (p, alpha) in &w.support {
        let arity = psi.arity();
        if arity > p.len() {
            return Err(Error::Arity { arity, n: p.len() });
        }
        acc += &(alpha * psi.eval_at(&p[..arity])?.value());
    }
    UnitRational::new(acc).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn book(pairs: &[(&str, &str)]) -> Book {
        Book::from_pairs(pairs.iter().map(|(f, r)| (parse(f).unwrap(), r.parse().unwrap()))).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn image_examples() {
        let img = event_image(&book(&[("v1", "0")]), &b()).unwrap();
        assert!(img.points.contains(&[q("0")]) && img.points.contains(&[q("1")]));
        assert!(img.values.contains(&vec![q("0")]) && img.values.contains(&vec![q("1")]));

        let img = event_image(&book(&[("v1 (+) v1", "0"), ("v1", "0")]), &b()).unwrap();
        assert_eq!(img.points.points(), &[vec![q("0")], vec![q("1/2")], vec![q("1")]]);
        assert_eq!(img.values, vec![vec![q("0"), q("0")], vec![q("1"), q("1/2")], vec![q("1"), q("1")]]);

        let img = event_image(&book(&[("C[1/2]", "0")]), &b()).unwrap();
        assert!(img.values.iter().all(|v| v == &vec![q("1/2")]));
    }

    #[test]
    fn coherent_example() {
        let bk = book(&[("v1", "1/2"), ("!v1", "1/2")]);
        match check_coherent(&bk, &b()).unwrap() {
            Verdict::Coherent(w) => {
                verify_witness(&bk, &w).unwrap();
                assert!(w.support.len() <= 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complement_odds_must_add_up() {
        let bk = book(&[("v1", "1/2"), ("!v1", "3/10")]);
        match check_coherent(&bk, &b()).unwrap() {
            Verdict::Incoherent(d) => {
                assert_eq!(d.margin, q("1/5"));
                assert_eq!(d.stakes, vec![q("1"), q("1")]);
                verify_dutch_book(&bk, &d, &b()).unwrap().unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn below_the_hull_edge() {
        let bk = book(&[("v1 (+) v1", "9/10"), ("v1", "2/5")]);
        let v = check_coherent(&bk, &b()).unwrap();
        assert!(!v.is_coherent());
        verify(&bk, &v, &b()).unwrap().unwrap();
        let on_edge = book(&[("v1 (+) v1", "9/10"), ("v1", "9/20")]);
        assert!(check_coherent(&on_edge, &b()).unwrap().is_coherent());
    }

    #[test]
    fn tampered_certificates_fail() {
        let bk = book(&[("v1", "1/2"), ("!v1", "3/10")]);
        let bad = DutchBook { stakes: vec![q("1"), q("1")], margin: q("1/4") };
        assert!(matches!(verify_dutch_book(&bk, &bad, &b()).unwrap(), Err(CertificateError::Payoff { .. })));
        let ok = book(&[("v1", "1/2")]);
        let w = StateWitness { support: vec![(vec![q("1/3")], q("1"))] };
        assert!(matches!(verify_witness(&ok, &w), Err(CertificateError::Value { .. })));
        let w = StateWitness { support: vec![(vec![q("1/2")], q("1/2"))] };
        assert_eq!(verify_witness(&ok, &w), Err(CertificateError::Weights));
    }

    #[test]
    fn state_values() {
        let bk = book(&[("v1", "1/2"), ("v2", "1/4")]);
        let Verdict::Coherent(w) = check_coherent(&bk, &b()).unwrap() else { panic!() };
        assert_eq!(state_eval(&w, &parse("v1").unwrap()).unwrap().value(), &q("1/2"));
        assert!(state_eval(&w, &parse("v1 -> v1").unwrap()).unwrap().is_one());
        let d = state_eval(&w, &parse("D[2/3] v2").unwrap()).unwrap();
        assert_eq!(d.value(), &q("1/6"));
        assert!(state_eval(&w, &parse("v3").unwrap()).is_err());
    }

    #[test]
    fn constant_books() {
        assert!(check_coherent(&book(&[("C[1/3]", "1/3")]), &b()).unwrap().is_coherent());
        let v = check_coherent(&book(&[("C[1/3]", "1/2")]), &b()).unwrap();
        let Verdict::Incoherent(d) = v else { panic!() };
        assert_eq!(d.margin, q("1/6"));
    }

    #[test]
    fn empty_book_is_rejected() {
        assert!(Book::new(vec![]).is_err());
    }
}
