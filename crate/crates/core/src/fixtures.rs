//! Reference polynomials stored as canonical JSON, and the runner that
//! recomputes each one from scratch.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::dynatomic::{ord_at, phi_n, phi_star_limited};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilyMap};
use crate::htuned::TunedContext;
use crate::mpoly::MPoly;
use crate::ratmap::{Pgl2, ProjPoint, RationalMap};

const BUILTIN: [(&str, &str); 4] = [
    ("basic.json", include_str!("../fixtures/basic.json")),
    ("psiegs.json", include_str!("../fixtures/psiegs.json")),
    ("power.json", include_str!("../fixtures/power.json")),
    ("family.json", include_str!("../fixtures/family.json")),
];

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub id: String,
    /// Where the value appears, in words.
    pub source: String,
    pub kind: String,
    #[serde(default)]
    pub map: Option<String>,
    #[serde(default)]
    pub aut: Option<String>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(default)]
    pub dehomogenize: bool,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(default)]
    pub star: bool,
    #[serde(default)]
    pub expected: Option<Value>,
    #[serde(default)]
    pub expected_order: Option<u32>,
    /// The expansion as typeset; `erratum` explains any disagreement with `expected`.
    #[serde(default)]
    pub printed: Option<String>,
    #[serde(default)]
    pub erratum: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub expected: String,
    pub got: String,
    /// `got − expected`, for polynomial fixtures.
    pub difference: Option<String>,
}

fn parse_file(name: &str, text: &str) -> Result<Vec<Fixture>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

pub fn builtin() -> Vec<Fixture> {
    BUILTIN
        .iter()
        .flat_map(|(n, t)| parse_file(n, t).expect("bundled fixtures are well formed"))
        .collect()
}

/// Every `*.json` in `dir`, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let text = fs::read_to_string(&p).map_err(io)?;
        out.extend(parse_file(&p.display().to_string(), &text)?);
    }
    Ok(out)
}

pub fn select<'a>(all: &'a [Fixture], filter: Option<&str>) -> Vec<&'a Fixture> {
    all.iter().filter(|f| filter.is_none_or(|s| f.id.contains(s))).collect()
}

fn need<'a>(v: &'a Option<String>, what: &str, id: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::InvalidArgument(format!("fixture {id}: missing `{what}`")))
}

impl Fixture {
    fn map(&self) -> Result<RationalMap> {
        Ok(RationalMap::parse(need(&self.map, "map", &self.id)?)?.0)
    }

    fn expected_poly(&self) -> Result<MPoly> {
        let v = self.expected.as_ref().ok_or_else(|| Error::InvalidArgument(format!("fixture {}: missing `expected`", self.id)))?;
        MPoly::from_json(v)
    }

    fn compute(&self, max_terms: usize) -> Result<MPoly> {
        let form = match self.kind.as_str() {
            "phi_star" => phi_star_limited(&self.map()?, self.n, max_terms)?,
            "phi" => phi_n(&self.map()?, self.n)?,
            "psi" | "psi_star" | "psi_tilde" => {
                let h = Pgl2::parse(need(&self.aut, "aut", &self.id)?)?;
                let ctx = TunedContext::new(&self.map()?, &h)?.with_max_terms(max_terms);
                match self.kind.as_str() {
                    "psi" => ctx.psi(self.n)?,
                    "psi_star" => ctx.psi_star(self.n)?,
                    _ => ctx.psi_tilde(self.n)?.psi_tilde,
                }
            }
            "family_phi_star" => {
                let kind: FamilyKind = need(&self.family, "family", &self.id)?.parse()?;
                return FamilyMap::new(kind).phi_star(self.n, max_terms);
            }
            k => return Err(Error::InvalidArgument(format!("fixture {}: unknown kind `{k}`", self.id))),
        };
        let p = form.to_mpoly();
        if self.dehomogenize {
            return Ok(p.specialize(&[("x", MPoly::var("z")), ("y", MPoly::from_int(1))])?.drop_unused_vars());
        }
        Ok(p)
    }

    pub fn run(&self, max_terms: usize) -> Result<Outcome> {
        if self.kind == "ord_at" {
            let m = self.map()?;
            let form = if self.star { phi_star_limited(&m, self.n, max_terms)? } else { phi_n(&m, self.n)? };
            let q = ProjPoint::parse(need(&self.point, "point", &self.id)?)?;
            let got = ord_at(&form, &q)?;
            let want = self.expected_order.ok_or_else(|| Error::InvalidArgument(format!("fixture {}: missing `expected_order`", self.id)))?;
            return Ok(Outcome { passed: got == want, expected: want.to_string(), got: got.to_string(), difference: None });
        }
        let want = self.expected_poly()?;
        let got = self.compute(max_terms)?;
        let difference = (&got - &want).to_string();
        Ok(Outcome { passed: got == want, expected: want.to_string(), got: got.to_string(), difference: Some(difference) })
    }
}
