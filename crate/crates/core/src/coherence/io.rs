//! JSON forms of books and certificates.
//!
//! Book: `{"events": [{"formula": "v1 (+) v1", "odd": "9/10"}]}`.
//! Certificates carry a `kind` tag, `"coherent"` with a weighted `support`
//! or `"incoherent"` with `stakes` and `margin`. Rationals are `"p/q"`.

use serde::{Deserialize, Serialize};

use super::{Book, DutchBook, Event, StateWitness, Verdict};
use crate::error::{Error, Result};
use crate::formula::parse;
use crate::kernel::UnitRational;
use crate::rational::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventEntry {
    pub formula: String,
    pub odd: UnitRational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BookFile {
    pub events: Vec<EventEntry>,
}

impl BookFile {
    pub fn to_book(&self) -> Result<Book> {
        let events = self
            .events
            .iter()
            .map(|e| Ok(Event { formula: parse(&e.formula)?, odd: e.odd.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Book::new(events)
    }
}

impl From<&Book> for BookFile {
    fn from(book: &Book) -> Self {
        BookFile {
            events: book
                .events()
                .iter()
                .map(|e| EventEntry { formula: e.formula.to_string(), odd: e.odd.clone() })
                .collect(),
        }
    }
}

impl Book {
    pub fn from_json(text: &str) -> Result<Book> {
        let file: BookFile = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("book JSON: {e}")))?;
        file.to_book()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BookFile::from(self)).expect("book serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightedPoint {
    point: Vec<Rational>,
    weight: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Certificate {
    Coherent { support: Vec<WeightedPoint> },
    Incoherent { stakes: Vec<Rational>, margin: Rational },
}

impl Verdict {
    pub fn to_json(&self) -> String {
        let cert = match self {
            Verdict::Coherent(w) => Certificate::Coherent {
                support: w
                    .support
                    .iter()
                    .map(|(point, weight)| WeightedPoint { point: point.clone(), weight: weight.clone() })
                    .collect(),
            },
            Verdict::Incoherent(d) => Certificate::Incoherent { stakes: d.stakes.clone(), margin: d.margin.clone() },
        };
        serde_json::to_string(&cert).expect("certificate serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Verdict> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("certificate JSON: {e}")))?;
        Ok(match cert {
            Certificate::Coherent { support } => {
                Verdict::Coherent(StateWitness { support: support.into_iter().map(|w| (w.point, w.weight)).collect() })
            }
            Certificate::Incoherent { stakes, margin } => Verdict::Incoherent(DutchBook { stakes, margin }),
        })
    }
}
