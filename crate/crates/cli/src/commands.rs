use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sqdual_core::exterior::{decomposition_to_exterior, edual_decomposition, theta as theta_of, to_exterior, ExtElement, PresentationTerm};
use sqdual_core::filtration::{check_filtration, dualize_filtration, facet_peel_filtration, filtration_to_decomposition, FiltrationStep, PrimeFiltration};
use sqdual_core::homology::{betti, terai_check, InvariantReport};
use sqdual_core::instance::{emit_instance, parse_instance, Instance};
use sqdual_core::linquot::{find_linear_quotients, lq_decomposition, validate_order};
use sqdual_core::partition::{partition_duality_check, find_partition, validate_partition};
use sqdual_core::report::{emit_report, summarize, Format};
use sqdual_core::setcalc::alexander_dual;
use sqdual_core::sqmod::{apel_bound, dualize_decomposition, dualize_quotient, hreg_min, sdepth as sdepth_of, validate_decomposition};
use sqdual_core::survey::{survey as run_survey, Mode, SurveyConfig, Target};
use sqdual_core::{Error, Field, Fp, IndexSet, MonomialIdeal, Rational, SqQuotient, StanleyDecomposition};

use crate::output::{decomposition, decomposition_table, set, set_cell, CliError, Output, Table};
use crate::{FormatArg, Global, ModeArg, SurveyArgs, TargetArg, Via};

pub const SUPPORTED_CHARS: [u64; 7] = [0, 2, 3, 5, 7, 32003, 65521];

/// Runs `$body` with `$F` bound to the field of characteristic `$p`.
macro_rules! with_field {
    ($p:expr, $F:ident => $body:expr) => {
        match $p {
            0 => {
                type $F = Rational;
                $body
            }
            2 => {
                type $F = Fp<2>;
                $body
            }
            3 => {
                type $F = Fp<3>;
                $body
            }
            5 => {
                type $F = Fp<5>;
                $body
            }
            7 => {
                type $F = Fp<7>;
                $body
            }
            32003 => {
                type $F = Fp<32003>;
                $body
            }
            65521 => {
                type $F = Fp<65521>;
                $body
            }
            p => Err(CliError::Usage(format!("unsupported characteristic {p}; expected one of {SUPPORTED_CHARS:?}"))),
        }
    };
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: sqdual_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        Error::Parse(m) => CliError::Core(Error::Parse(format!("{}: {m}", path.display()))),
        other => CliError::Core(other),
    })
}

fn load(path: &Path) -> Result<Instance, CliError> {
    let text = read_text(path)?;
    with_path(path, parse_instance(&text))
}

fn load_quotient(path: &Path) -> Result<SqQuotient, CliError> {
    Ok(load(path)?.quotient()?)
}

fn theorem(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(Error::TheoremViolation(what()).into())
    }
}

fn quotient_json(m: &SqQuotient) -> Value {
    json!({
        "n": m.n(),
        "inner": sqdual_core::report::ideal_string(m.inner()),
        "outer": sqdual_core::report::ideal_string(m.outer()),
    })
}

pub fn dual(path: &Path) -> Result<Output, CliError> {
    let inst = load(path)?;
    let out = if inst.inner.is_none() && inst.outer.is_none() && inst.ideal.is_none() {
        let delta = inst.complex()?;
        Instance { n: inst.n, inner: None, outer: None, ideal: None, complex: Some(alexander_dual(&delta)) }
    } else {
        Instance::from_quotient(&dualize_quotient(&inst.quotient()?)?)
    };
    Ok(Output::Raw(emit_instance(&out)))
}

pub fn sdepth(path: &Path) -> Result<Output, CliError> {
    let m = load_quotient(path)?;
    let (sd, witness) = sdepth_of(&m)?;
    theorem(validate_decomposition(&m, &witness), || "sdepth witness does not validate".into())?;
    let json = json!({
        "module": quotient_json(&m),
        "sdepth": sd,
        "apel_bound": apel_bound(&m)?,
        "witness": decomposition(&witness),
    });
    Ok(Output::doc(json, Some(decomposition_table(&witness))))
}

pub fn hreg(g: Global, path: &Path) -> Result<Output, CliError> {
    let m = load_quotient(path)?;
    let (h, witness) = hreg_min(&m)?;
    theorem(validate_decomposition(&m, &witness), || "hreg witness does not validate".into())?;
    let reg = with_field!(g.characteristic, K => Ok(sqdual_core::homology::invariants::<K>(&m)?.reg))?;
    let json = json!({
        "module": quotient_json(&m),
        "characteristic": g.characteristic,
        "hreg_min": h,
        "reg": reg,
        "conj_reg_holds": h <= reg,
        "witness": decomposition(&witness),
    });
    Ok(Output::doc(json, Some(decomposition_table(&witness))))
}

pub fn decompose(path: &Path, via: Via) -> Result<Output, CliError> {
    let m = load_quotient(path)?;
    let (method, d) = match via {
        Via::Filtration => ("filtration", filtration_to_decomposition(&facet_peel_filtration(&m)?)?),
        Via::Sdepth => ("sdepth", sdepth_of(&m)?.1),
        Via::Hreg => ("hreg", hreg_min(&m)?.1),
    };
    theorem(validate_decomposition(&m, &d), || format!("{method} decomposition does not validate"))?;
    let dual = dualize_quotient(&m)?;
    let dd = dualize_decomposition(&d);
    theorem(validate_decomposition(&dual, &dd), || "dual decomposition does not validate".into())?;
    theorem(dualize_decomposition(&dd) == d, || "double dual is not the identity".into())?;
    let json = json!({
        "module": quotient_json(&m),
        "method": method,
        "sdepth": d.sdepth(),
        "hreg": d.hreg(),
        "spaces": decomposition(&d),
        "dual": {
            "module": quotient_json(&dual),
            "sdepth": dd.sdepth(),
            "hreg": dd.hreg(),
            "spaces": decomposition(&dd),
        },
    });
    Ok(Output::doc(json, Some(decomposition_table(&d))))
}

/// A filtration on disk: the base module plus its steps, indices 1-based.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiltrationFile {
    instance: Value,
    steps: Vec<StepFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    shift: Vec<usize>,
    prime_support: Vec<usize>,
}

fn load_filtration(path: &Path) -> Result<PrimeFiltration, CliError> {
    let text = read_text(path)?;
    let file: FiltrationFile =
        with_path(path, serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string())))?;
    let inst = with_path(path, parse_instance(&file.instance.to_string()))?;
    let base = inst.quotient()?;
    let n = base.n();
    let steps = file
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let parse = |field: &str, v: &[usize]| {
                IndexSet::from_indices(n, v).map_err(|e| Error::Parse(format!("steps[{k}].{field}: {e}")))
            };
            Ok(FiltrationStep { shift: parse("shift", &s.shift)?, prime_support: parse("prime_support", &s.prime_support)? })
        })
        .collect::<sqdual_core::Result<Vec<_>>>();
    Ok(PrimeFiltration::new(base, with_path(path, steps)?))
}

fn filtration_output(pf: &PrimeFiltration) -> Output {
    let inst: Value = serde_json::from_str(&emit_instance(&Instance::from_quotient(pf.base()))).expect("emitted json parses");
    let file = FiltrationFile {
        instance: inst,
        steps: pf
            .steps()
            .iter()
            .map(|s| StepFile { shift: s.shift.to_vec(), prime_support: s.prime_support.to_vec() })
            .collect(),
    };
    let table = Table {
        header: vec!["shift", "prime_support"],
        rows: pf.steps().iter().map(|s| vec![set_cell(s.shift), set_cell(s.prime_support)]).collect(),
    };
    Output::doc(serde_json::to_value(file).expect("plain data serializes"), Some(table))
}

pub fn filtration_build(path: &Path) -> Result<Output, CliError> {
    let pf = facet_peel_filtration(&load_quotient(path)?)?;
    theorem(check_filtration(&pf).is_ok(), || "facet-peel filtration does not validate".into())?;
    Ok(filtration_output(&pf))
}

pub fn filtration_validate(path: &Path) -> Result<Output, CliError> {
    let pf = load_filtration(path)?;
    let json = match check_filtration(&pf) {
        Ok(()) => json!({"valid": true, "length": pf.steps().len()}),
        Err(e) => json!({"valid": false, "length": pf.steps().len(), "reason": e.to_string()}),
    };
    Ok(Output::doc(json, None))
}

pub fn filtration_dualize(path: &Path) -> Result<Output, CliError> {
    let pf = load_filtration(path)?;
    check_filtration(&pf)?;
    Ok(filtration_output(&dualize_filtration(&pf)?))
}

fn theta_impl<K: Field>(m: &SqQuotient, degree: Option<IndexSet>) -> Result<Output, CliError> {
    if let Some(f) = degree {
        if !m.contains_degree(f) {
            return Err(Error::Parse(format!("degree {f} is not in the support")).into());
        }
    }
    let gens = m.generator_degrees();
    let degrees: Vec<IndexSet> = match degree {
        Some(f) => vec![f],
        None => m.support().to_vec(),
    };
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    for f in degrees {
        let expected = ExtElement::<K>::basis(f);
        let mut count = 0usize;
        for (i, &gi) in gens.iter().enumerate().filter(|(_, gi)| gi.is_subset(f)) {
            let t = PresentationTerm { coeff: K::one(), generator: i, multiplier: f.difference(gi) };
            let got = theta_of(m, &[t])?;
            theorem(got == expected, || format!("theta(x_{f}) via generator {gi} is {got}"))?;
            count += 1;
        }
        docs.push(json!({"degree": set(f), "presentations": count, "theta": expected.to_string()}));
        rows.push(vec![set_cell(f), count.to_string(), expected.to_string()]);
    }
    let json = json!({"module": quotient_json(m), "characteristic": K::characteristic(), "degrees": docs});
    Ok(Output::doc(json, Some(Table { header: vec!["degree", "presentations", "theta"], rows })))
}

pub fn theta(g: Global, path: &Path, degree: Option<&[usize]>) -> Result<Output, CliError> {
    let m = load_quotient(path)?;
    let degree = degree
        .map(|v| IndexSet::from_indices(m.n(), v).map_err(|e| CliError::Usage(format!("--degree: {e}"))))
        .transpose()?;
    with_field!(g.characteristic, K => theta_impl::<K>(&m, degree))
}

fn edual_impl<K: Field>(m: &SqQuotient) -> Result<Output, CliError> {
    let (_, witness) = sdepth_of(m)?;
    let module = to_exterior(m)?;
    let spaces = decomposition_to_exterior(&witness);
    let dual = edual_decomposition::<K>(&module, &spaces)?;
    let docs: Vec<Value> = spaces
        .iter()
        .zip(&dual)
        .map(|(s, b)| {
            json!({
                "generator": set(s.generator),
                "free": set(s.free),
                "dual_generator": set(b.generator),
                "pairing_signs": b.pairing_signs.iter().map(|(h, e)| json!({"h": set(*h), "sign": e})).collect::<Vec<_>>(),
            })
        })
        .collect();
    let rows = spaces
        .iter()
        .zip(&dual)
        .map(|(s, b)| {
            let signs: Vec<String> = b.pairing_signs.iter().map(|(_, e)| e.to_string()).collect();
            vec![set_cell(s.generator), set_cell(s.free), set_cell(b.generator), signs.join(" ")]
        })
        .collect();
    let json = json!({"module": quotient_json(m), "characteristic": K::characteristic(), "spaces": docs});
    let header = vec!["generator", "free", "dual_generator", "pairing_signs"];
    Ok(Output::doc(json, Some(Table { header, rows })))
}

pub fn edual(g: Global, path: &Path) -> Result<Output, CliError> {
    let m = load_quotient(path)?;
    with_field!(g.characteristic, K => edual_impl::<K>(&m))
}

fn invariants_impl<K: Field>(m: &SqQuotient) -> Result<Output, CliError> {
    let table = betti::<K>(m)?;
    let report = InvariantReport::from_betti(m, &table);
    let terai = terai_check::<K>(m)?;
    theorem(terai, || "projdim(M) differs from reg of the dual".into())?;
    let entries: Vec<Value> =
        table.entries.iter().map(|e| json!({"i": e.i, "degree": set(e.degree), "rank": e.rank})).collect();
    let json = json!({
        "module": quotient_json(m),
        "invariants": report,
        "terai_ok": terai,
        "betti": entries,
    });
    let rows = table.entries.iter().map(|e| vec![e.i.to_string(), set_cell(e.degree), e.rank.to_string()]).collect();
    Ok(Output::doc(json, Some(Table { header: vec!["i", "degree", "rank"], rows })))
}

pub fn invariants(g: Global, path: &Path) -> Result<Output, CliError> {
    let m = load_quotient(path)?;
    with_field!(g.characteristic, K => invariants_impl::<K>(&m))
}

/// The ideal an instance names: `ideal`, the Stanley–Reisner ideal of
/// `complex`, or `outer` when `inner` is zero.
fn instance_ideal(inst: &Instance) -> Result<MonomialIdeal, CliError> {
    if inst.ideal.is_some() || inst.complex.is_some() {
        return Ok(inst.ideal()?);
    }
    match (&inst.inner, &inst.outer) {
        (None, Some(j)) => Ok(j.clone()),
        (Some(i), Some(j)) if i.is_zero() => Ok(j.clone()),
        _ => Err(Error::Parse("linquot needs \"ideal\", \"complex\", or \"outer\" with zero \"inner\"".into()).into()),
    }
}

fn linquot_impl<K: Field>(ideal: &MonomialIdeal) -> Result<Output, CliError> {
    let found = find_linear_quotients(ideal)?;
    let Some(order) = found else {
        return Ok(Output::doc(json!({"ideal": sqdual_core::report::ideal_string(ideal), "linear_quotients": false}), None));
    };
    theorem(validate_order(ideal, &order), || "linear quotient order does not validate".into())?;
    let m = SqQuotient::ideal_module(ideal)?;
    let depth = sqdual_core::homology::invariants::<K>(&m)?.depth;
    let mut json = json!({
        "ideal": sqdual_core::report::ideal_string(ideal),
        "characteristic": K::characteristic(),
        "linear_quotients": true,
        "order": order.order.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "colon_generators": order.colon_gens.iter().map(|s| set(*s)).collect::<Vec<_>>(),
        "r": order.r(),
        "depth": depth,
    });
    theorem(depth == order.depth(), || format!("depth {depth} differs from n - r = {}", order.depth()))?;
    let mut table = None;
    if ideal.is_squarefree() {
        let d: StanleyDecomposition = lq_decomposition(ideal, &order)?;
        theorem(validate_decomposition(&m, &d), || "linear quotient decomposition does not validate".into())?;
        theorem(d.sdepth() == Some(order.depth()), || "decomposition sdepth differs from n - r".into())?;
        json["decomposition"] = decomposition(&d);
        json["sdepth_of_decomposition"] = json!(d.sdepth());
        table = Some(decomposition_table(&d));
    }
    Ok(Output::doc(json, table))
}

pub fn linquot(g: Global, path: &Path) -> Result<Output, CliError> {
    let ideal = instance_ideal(&load(path)?)?;
    with_field!(g.characteristic, K => linquot_impl::<K>(&ideal))
}

fn partition_impl<K: Field>(delta: &sqdual_core::SimplicialComplex) -> Result<Output, CliError> {
    let found = find_partition(delta)?;
    if let Some(p) = &found {
        theorem(validate_partition(p), || "partition does not validate".into())?;
    }
    let report = partition_duality_check::<K>(delta)?;
    theorem(report.equivalence_holds(), || "partition and generator-bottom searches disagree".into())?;
    let intervals: Vec<Value> = found
        .iter()
        .flat_map(|p| p.intervals.iter())
        .map(|iv| json!({"bottom": set(iv.bottom), "top": set(iv.top)}))
        .collect();
    let rows = found
        .iter()
        .flat_map(|p| p.intervals.iter())
        .map(|iv| vec![set_cell(iv.bottom), set_cell(iv.top)])
        .collect();
    let json = json!({
        "facets": delta.facets().iter().map(|f| set(*f)).collect::<Vec<_>>(),
        "characteristic": K::characteristic(),
        "partitionable": report.partitionable,
        "cohen_macaulay": report.cohen_macaulay,
        "generator_bottoms": report.generator_bottoms,
        "intervals": intervals,
    });
    Ok(Output::doc(json, Some(Table { header: vec!["bottom", "top"], rows })))
}

pub fn partition(g: Global, path: &Path) -> Result<Output, CliError> {
    let delta = load(path)?.complex()?;
    with_field!(g.characteristic, K => partition_impl::<K>(&delta))
}

pub fn survey(g: Global, args: &SurveyArgs) -> Result<Output, CliError> {
    let mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Random => Mode::Random { seed: g.seed, count: args.count },
    };
    let target = match args.target {
        TargetArg::Quotients => Target::Quotients,
        TargetArg::Cyclic => Target::Cyclic,
        TargetArg::Ideals => Target::Ideals,
    };
    let cfg = SurveyConfig { n: args.n, mode, target, cap_n: g.cap_n, timings: args.timings };
    let records = with_field!(g.characteristic, K => Ok(run_survey::<K>(&cfg)?))?;
    let format = match g.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let text = emit_report(&records, format)?;
    let s = summarize(&records);
    eprintln!(
        "{} instances; sdepth < depth on {}; hreg_min > reg on {}; only the sdepth witness exceeds reg on {}",
        s.instances, s.stanley_failures, s.conj_reg_failures, s.witness_only_failures
    );
    match &args.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Output::Raw(String::new()))
        }
        None => Ok(Output::Raw(text)),
    }
}
