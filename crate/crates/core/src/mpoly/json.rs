//! Canonical JSON: `{"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}, ...]}`
//! with terms in descending graded-lex order.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::MPoly;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<String>,
    terms: Vec<JsonTerm>,
}

impl MPoly {
    pub fn to_json(&self) -> Value {
        let j = JsonPoly {
            vars: self.vars.clone(),
            terms: self
                .terms()
                .map(|(m, c)| JsonTerm { exp: m.0.clone(), coef: c.to_string() })
                .collect(),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }

    pub fn from_json(v: &Value) -> Result<MPoly> {
        let j: JsonPoly = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c: BigRational = t
                .coef
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coef)))?;
            terms.push((t.exp, c));
        }
        MPoly::from_terms(&j.vars, terms)
    }
}
