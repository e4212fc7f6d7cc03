//! Fixed inputs shared by the benchmarks.

use riesz_core::{parse, Affine, Book, Formula, MaxMin, Rational};

/// Formulas of increasing size over `n` variables.
pub fn formulas() -> Vec<(&'static str, Formula)> {
    [
        ("small", "v1 (+) !v2"),
        ("medium", "(v1 -> v2) (.) N[1/2](v2 <-> !v1) \\/ D[2/3] v1"),
        ("three_vars", "(v1 (+) v2) (.) (v3 -> v1) \\/ (v2 <-> v3)"),
        ("deep", "((v1 -> v2) -> v2) <-> ((v2 -> v1) -> v1) /\\ N[1/3](v1 (.) !v2 (+) D[1/4] v2)"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse(text).expect("fixture parses")))
    .collect()
}

/// `Σ c_i x_i + c_0` with steep integer slopes, so synthesis recurses deeply.
pub fn steep_affine(n: usize, slope: i64) -> Affine {
    let mut coeffs = vec![Rational::new(-slope * n as i64, 2)];
    coeffs.extend((1..=n as i64).map(|i| Rational::new(if i % 2 == 0 { -slope } else { slope }, i)));
    Affine::new(coeffs)
}

/// A truncated max-min function with `groups` groups of `pieces` tangent-like
/// pieces in two variables.
pub fn tent(groups: usize, pieces: usize) -> MaxMin {
    let gs = (0..groups)
        .map(|g| {
            (0..pieces)
                .map(|p| {
                    let t = Rational::new((g * pieces + p) as i64, (groups * pieces) as i64);
                    Affine::new(vec![-(&t * &t), &t + &t, Rational::new(p as i64 + 1, pieces as i64 + 2)])
                })
                .collect()
        })
        .collect();
    MaxMin::new(2, gs).expect("non-empty groups").trunc()
}

/// The book `{(v1, 1/2), (!v1, 3/10)}` and a larger coherent one.
pub fn books() -> Vec<(&'static str, Book)> {
    let pairs = |ps: &[(&str, &str)]| {
        Book::from_pairs(ps.iter().map(|(f, r)| (parse(f).unwrap(), r.parse().unwrap()))).unwrap()
    };
    vec![
        ("two_events", pairs(&[("v1", "1/2"), ("!v1", "3/10")])),
        (
            "four_events",
            pairs(&[("v1 (+) v2", "3/5"), ("v1 (.) v3", "1/10"), ("N[1/2] v2", "3/4"), ("v3 -> v1", "4/5")]),
        ),
    ]
}
