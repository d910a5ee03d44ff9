//! Survey records and their JSON / CSV forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::MonomialIdeal;

/// One surveyed module `M = J/I`.
///
/// `hreg_witness` is the h-regularity of the decomposition that attains
/// `sdepth`; `hreg_min` is the minimum over all decompositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub id: usize,
    pub seed: Option<u64>,
    pub target: String,
    pub n: usize,
    pub characteristic: u64,
    pub inner: String,
    pub outer: String,
    pub depth: usize,
    pub sdepth: usize,
    pub reg: usize,
    pub hreg_witness: usize,
    pub hreg_min: usize,
    pub apel_bound: usize,
    pub projdim: usize,
    pub dual_reg: usize,
    pub dual_hreg_min: usize,
    /// `sdepth ≥ depth`
    pub stanley_holds: bool,
    /// `hreg_min ≤ reg`
    pub conj_reg_holds: bool,
    /// `projdim = dual_reg`
    pub terai_ok: bool,
    pub duality_roundtrip_ok: bool,
    pub filtration_dual_ok: bool,
    /// `stanley_holds` agrees with the dual-witness bottom test.
    pub bottom_equivalence_ok: bool,
    pub micros: Option<u64>,
}

impl SurveyRecord {
    /// Flags that are functions of the stored numbers agree with them.
    pub fn flags_consistent(&self) -> bool {
        self.stanley_holds == (self.sdepth >= self.depth)
            && self.conj_reg_holds == (self.hreg_min <= self.reg)
            && self.terai_ok == (self.projdim == self.dual_reg)
            && self.depth + self.projdim == self.n
    }

    pub fn theorem_flags_hold(&self) -> bool {
        self.terai_ok && self.duality_roundtrip_ok && self.filtration_dual_ok && self.bottom_equivalence_ok
    }
}

/// `x1*x2;x3` style listing of minimal generators; `0` for the zero ideal.
pub fn ideal_string(i: &MonomialIdeal) -> String {
    if i.is_zero() {
        return "0".into();
    }
    i.generators().iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn emit_json(records: &[SurveyRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn emit_csv(records: &[SurveyRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::Internal(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv: {e}")))
}

pub fn emit_report(records: &[SurveyRecord], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(emit_json(records)),
        Format::Csv => emit_csv(records),
    }
}

pub fn parse_json(text: &str) -> Result<Vec<SurveyRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_csv(text: &str) -> Result<Vec<SurveyRecord>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

/// Counts of conjecture-level outcomes over a survey.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub instances: usize,
    pub stanley_failures: usize,
    pub conj_reg_failures: usize,
    /// `hreg_witness > reg` while `hreg_min ≤ reg`.
    pub witness_only_failures: usize,
}

pub fn summarize(records: &[SurveyRecord]) -> SurveySummary {
    let mut s = SurveySummary { instances: records.len(), ..Default::default() };
    for r in records {
        s.stanley_failures += usize::from(!r.stanley_holds);
        s.conj_reg_failures += usize::from(!r.conj_reg_holds);
        s.witness_only_failures += usize::from(r.conj_reg_holds && r.hreg_witness > r.reg);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::Monomial;

    fn record(id: usize) -> SurveyRecord {
        SurveyRecord {
            id,
            seed: if id.is_multiple_of(2) { Some(7) } else { None },
            target: "quotients".into(),
            n: 3,
            characteristic: 32003,
            inner: "x1*x2;x3".into(),
            outer: "1".into(),
            depth: 1,
            sdepth: 1,
            reg: 1,
            hreg_witness: 2,
            hreg_min: 1,
            apel_bound: 1,
            projdim: 2,
            dual_reg: 2,
            dual_hreg_min: 2,
            stanley_holds: true,
            conj_reg_holds: true,
            terai_ok: true,
            duality_roundtrip_ok: true,
            filtration_dual_ok: true,
            bottom_equivalence_ok: true,
            micros: None,
        }
    }

    #[test]
    fn json_and_csv_agree() {
        let records: Vec<SurveyRecord> = (0..4).map(record).collect();
        let json = emit_json(&records);
        let csv = emit_csv(&records).unwrap();
        assert_eq!(parse_json(&json).unwrap(), records);
        assert_eq!(parse_csv(&csv).unwrap(), records);
        assert!(csv.starts_with("id,seed,target,n,characteristic,inner,outer,depth,"));
        assert_eq!(emit_report(&records, Format::Json).unwrap(), json);
    }

    #[test]
    fn consistency_and_summary() {
        let mut r = record(0);
        assert!(r.flags_consistent() && r.theorem_flags_hold());
        r.stanley_holds = false;
        assert!(!r.flags_consistent());
        let s = summarize(&[record(0), record(1)]);
        assert_eq!(s, SurveySummary { instances: 2, stanley_failures: 0, conj_reg_failures: 0, witness_only_failures: 2 });
    }

    #[test]
    fn ideal_strings() {
        assert_eq!(ideal_string(&MonomialIdeal::zero(2)), "0");
        assert_eq!(ideal_string(&MonomialIdeal::unit(2)), "1");
        let g = |v: &[u16]| Monomial::new(v.to_vec()).unwrap();
        let i = crate::ideals::minimalize(2, &[g(&[2, 0]), g(&[1, 1])]).unwrap();
        assert_eq!(ideal_string(&i), "x1^2;x1*x2");
    }
}
