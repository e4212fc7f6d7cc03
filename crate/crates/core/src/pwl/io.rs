//! JSON form of max-min functions:
//! `{"n": 1, "groups": [[["0", "1"], ["1", "-1"]]]}`, one coefficient list
//! `[c0, c1, ..., cn]` per piece, rationals written as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use super::{Affine, MaxMin};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PwlFile {
    pub n: usize,
    pub groups: Vec<Vec<Vec<Rational>>>,
}

impl PwlFile {
    pub fn to_maxmin(&self) -> Result<MaxMin> {
        let mut groups = Vec::with_capacity(self.groups.len());
        for g in &self.groups {
            let mut pieces = Vec::with_capacity(g.len());
            for coeffs in g {
                if coeffs.len() != self.n + 1 {
                    return Err(Error::Length {
                        what: "affine coefficient list",
                        got: coeffs.len(),
                        expected: self.n + 1,
                    });
                }
                pieces.push(Affine::new(coeffs.clone()));
            }
            groups.push(pieces);
        }
        MaxMin::new(self.n, groups)
    }
}

impl From<&MaxMin> for PwlFile {
    fn from(f: &MaxMin) -> Self {
        PwlFile {
            n: f.dim(),
            groups: f.groups().iter().map(|g| g.iter().map(|a| a.coeffs().to_vec()).collect()).collect(),
        }
    }
}

pub fn from_json(text: &str) -> Result<MaxMin> {
    let file: PwlFile = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("PWL JSON: {e}")))?;
    file.to_maxmin()
}

pub fn to_json(f: &MaxMin) -> String {
    serde_json::to_string(&PwlFile::from(f)).expect("PWL serialization cannot fail")
}
