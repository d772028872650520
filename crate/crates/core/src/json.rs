//! JSON wire formats for codes.
//!
//! Two shapes are accepted: an explicit word list
//! `{"q": 9, "n": 2, "words": [[0,0],[3,1]]}` and a generator matrix
//! `{"q": 9, "gen": [[3,1],[0,3]]}`. All integers are exact; unknown
//! fields are rejected.

use serde::{Deserialize, Serialize};

use crate::code::{Code, LinearCode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeJson {
    pub q: i64,
    pub n: usize,
    pub words: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenJson {
    pub q: i64,
    pub gen: Vec<Vec<i64>>,
}

/// Either wire shape, distinguished by its fields.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CodeInput {
    Words(CodeJson),
    Generators(GenJson),
}

impl TryFrom<CodeJson> for Code {
    type Error = Error;

    fn try_from(j: CodeJson) -> Result<Code> {
        let code = Code::new(j.q, &j.words)?;
        if code.dim() != j.n {
            return Err(Error::DimensionMismatch(format!(
                "declared n = {} but words have {} coordinates",
                j.n,
                code.dim()
            )));
        }
        Ok(code)
    }
}

impl TryFrom<GenJson> for LinearCode {
    type Error = Error;

    fn try_from(j: GenJson) -> Result<LinearCode> {
        // any number of rows; the span always includes qZ^n
        LinearCode::from_generators(j.q, &j.gen)
    }
}

impl From<&Code> for CodeJson {
    fn from(c: &Code) -> CodeJson {
        CodeJson {
            q: c.q(),
            n: c.dim(),
            words: c.words().iter().map(|w| w.coords().to_vec()).collect(),
        }
    }
}

impl TryFrom<&LinearCode> for GenJson {
    type Error = Error;

    fn try_from(l: &LinearCode) -> Result<GenJson> {
        Ok(GenJson { q: l.q(), gen: l.gen().to_i64_rows()? })
    }
}

/// Parse either wire shape from a JSON string.
pub fn parse_code_input(text: &str) -> Result<CodeInput> {
    serde_json::from_str(text)
        .map_err(|err| Error::InvalidParams(format!("unrecognized code JSON: {err}")))
}

impl CodeInput {
    /// Realize the input as an explicit code, expanding a generator input
    /// word by word (refused past `max_words`).
    pub fn into_code(self, max_words: u128) -> Result<Code> {
        match self {
            CodeInput::Words(j) => Code::try_from(j),
            CodeInput::Generators(j) => LinearCode::try_from(j)?.expand(max_words),
        }
    }
}
