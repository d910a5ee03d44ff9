//! Instance files: one JSON object naming the ambient size and any of an
//! ideal pair, a single ideal, or a simplicial complex.
//!
//! ```text
//! {"version":1,"n":3,"inner":{"gens":[[2,0,0],[1,1,0]]},"outer":{"gens":[[2,0,0],[1,1,0],[0,1,1]]}}
//! {"n":3,"ideal":{"supports":[[1,2],[2,3]]}}
//! {"n":4,"complex":{"facets":[[1,2],[3,4]]}}
//! ```
//!
//! `gens` holds exponent vectors, `supports` holds 1-based index lists of
//! squarefree generators; both may appear and are merged. An empty list is
//! the zero ideal. Emission always writes `gens` of the minimal generators.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::face_ring;
use crate::ideals::{minimalize, Monomial, MonomialIdeal};
use crate::setcalc::{IndexSet, SimplicialComplex, MAX_N};
use crate::sqmod::SqQuotient;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    pub inner: Option<MonomialIdeal>,
    pub outer: Option<MonomialIdeal>,
    pub ideal: Option<MonomialIdeal>,
    pub complex: Option<SimplicialComplex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    version: Option<u32>,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inner: Option<RawIdeal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer: Option<RawIdeal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ideal: Option<RawIdeal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex: Option<RawComplex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gens: Option<Vec<Vec<u16>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    supports: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    facets: Vec<Vec<usize>>,
}

fn parse_set(n: usize, field: &str, k: usize, v: &[usize]) -> Result<IndexSet> {
    IndexSet::from_indices(n, v).map_err(|e| Error::Parse(format!("{field}[{k}]: {e}")))
}

fn parse_ideal(n: usize, name: &str, raw: &RawIdeal) -> Result<MonomialIdeal> {
    if raw.gens.is_none() && raw.supports.is_none() {
        return Err(Error::Parse(format!("{name}: expected \"gens\" or \"supports\"")));
    }
    let mut gens = Vec::new();
    for (k, g) in raw.gens.iter().flatten().enumerate() {
        if g.len() != n {
            return Err(Error::Parse(format!("{name}.gens[{k}]: expected {n} exponents, got {}", g.len())));
        }
        gens.push(Monomial::new(g.clone())?);
    }
    for (k, s) in raw.supports.iter().flatten().enumerate() {
        gens.push(Monomial::from_set(parse_set(n, &format!("{name}.supports"), k, s)?));
    }
    minimalize(n, &gens)
}

/// Parses one instance; errors name the offending field, and JSON syntax
/// errors carry line and column.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(v) = raw.version {
        if v != FORMAT_VERSION {
            return Err(Error::Parse(format!("version: unsupported format version {v}")));
        }
    }
    let n = raw.n;
    if n > MAX_N {
        return Err(Error::Parse(format!("n: {n} exceeds the maximum {MAX_N}")));
    }
    let ideal = |name: &str, r: &Option<RawIdeal>| r.as_ref().map(|r| parse_ideal(n, name, r)).transpose();
    let complex = match &raw.complex {
        Some(c) => {
            let facets = c
                .facets
                .iter()
                .enumerate()
                .map(|(k, f)| parse_set(n, "complex.facets", k, f))
                .collect::<Result<Vec<_>>>()?;
            if facets.is_empty() {
                return Err(Error::Parse("complex.facets: the void complex is not allowed".into()));
            }
            Some(SimplicialComplex::from_facets(n, &facets)?)
        }
        None => None,
    };
    let inst = Instance {
        n,
        inner: ideal("inner", &raw.inner)?,
        outer: ideal("outer", &raw.outer)?,
        ideal: ideal("ideal", &raw.ideal)?,
        complex,
    };
    if inst.inner.is_none() && inst.outer.is_none() && inst.ideal.is_none() && inst.complex.is_none() {
        return Err(Error::Parse("expected one of \"inner\"/\"outer\", \"ideal\" or \"complex\"".into()));
    }
    Ok(inst)
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn raw_ideal(i: &MonomialIdeal) -> RawIdeal {
    RawIdeal { gens: Some(i.generators().iter().map(|g| g.exponents().to_vec()).collect()), supports: None }
}

/// Canonical single-line JSON, newline terminated.
pub fn emit_instance(inst: &Instance) -> String {
    let raw = RawInstance {
        version: Some(FORMAT_VERSION),
        n: inst.n,
        inner: inst.inner.as_ref().map(raw_ideal),
        outer: inst.outer.as_ref().map(raw_ideal),
        ideal: inst.ideal.as_ref().map(raw_ideal),
        complex: inst.complex.as_ref().map(|c| RawComplex { facets: c.facets().iter().map(|f| f.to_vec()).collect() }),
    };
    let mut s = serde_json::to_string(&raw).expect("plain data serializes");
    s.push('\n');
    s
}

impl Instance {
    pub fn from_quotient(m: &SqQuotient) -> Self {
        Instance {
            n: m.n(),
            inner: Some(m.inner().clone()),
            outer: Some(m.outer().clone()),
            ideal: None,
            complex: None,
        }
    }

    /// The module the instance describes: `J/I` from `inner`/`outer`
    /// (missing `inner` is 0, missing `outer` is `S`), else `S/I` from
    /// `ideal`, else `S/I_Δ`.
    pub fn quotient(&self) -> Result<SqQuotient> {
        if self.inner.is_some() || self.outer.is_some() {
            let inner = self.inner.clone().unwrap_or_else(|| MonomialIdeal::zero(self.n));
            let outer = self.outer.clone().unwrap_or_else(|| MonomialIdeal::unit(self.n));
            return SqQuotient::new(inner, outer);
        }
        if let Some(i) = &self.ideal {
            return SqQuotient::cyclic(i);
        }
        match &self.complex {
            Some(c) => face_ring(c),
            None => Err(Error::Parse("instance has no module".into())),
        }
    }

    /// The ideal `I` from `ideal`, else the Stanley–Reisner ideal of `complex`.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        if let Some(i) = &self.ideal {
            return Ok(i.clone());
        }
        match &self.complex {
            Some(c) => Ok(crate::ideals::sr_ideal(c).to_monomial_ideal()),
            None => Err(Error::Parse("instance has no \"ideal\" or \"complex\"".into())),
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        self.complex.clone().ok_or_else(|| Error::Parse("instance has no \"complex\"".into()))
    }
}
