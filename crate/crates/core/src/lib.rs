//! Exact algorithms for the propositional logic of Riesz MV-algebras over
//! rational scalars: evaluation on `[0, 1]`, term functions in max-min form,
//! synthesis of formulas from piecewise-linear functions, decision
//! procedures by arrangement-vertex enumeration, and de Finetti coherence of
//! books with verifiable certificates.
//!
//! ```
//! use riesz_core::{check_coherent, parse, semantic_equiv, synth_pwl, term_pwl, Book, Budget, Verdict};
//!
//! let budget = Budget::default();
//! let phi = parse("v1 -> D[1/2] v2")?;
//! let f = term_pwl(&phi, 2)?;
//! let back = synth_pwl(&f, &budget)?;
//! assert!(semantic_equiv(&phi, &back, &budget)?);
//!
//! let book = Book::from_json(r#"{"events": [{"formula": "v1", "odd": "1/2"}]}"#)?;
//! match check_coherent(&book, &budget)? {
//!     Verdict::Coherent(state) => assert_eq!(state.support.len(), 2),
//!     Verdict::Incoherent(_) => unreachable!(),
//! }
//! # Ok::<(), riesz_core::Error>(())
//! ```

pub mod coherence;
pub mod error;
pub mod formula;
pub mod geometry;
pub mod kernel;
pub mod lp;
pub mod pwl;
pub mod rational;
pub mod synthesis;

pub use coherence::{check_coherent, Book, DutchBook, Event, StateWitness, Verdict};
pub use error::{Budget, Error, Result};
pub use formula::{parse, Formula, Kind};
pub use geometry::{is_invalid, is_valid, maximum, minimum, semantic_equiv, Extremum};
pub use kernel::UnitRational;
pub use pwl::{term_pwl, Affine, MaxMin};
pub use rational::Rational;
pub use synthesis::{synth_pwl, synth_trunc_affine};
