//! Instance sweeps: exhaustive enumeration for small `n` or seeded
//! sampling, with every module run through the independent engines.
//!
//! Theorem-level identities (Terai, decomposition and filtration duality,
//! the sdepth / dual-bottom equivalence, the associated-prime bound) abort
//! the sweep with [`Error::TheoremViolation`]. Conjecture-level outcomes
//! (`sdepth ≥ depth`, `hreg_min ≤ reg`) are recorded as flags.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::filtration::{dualize_filtration, facet_peel_filtration, validate_filtration};
use crate::generate::{all_quotients, all_sq_ideals, random_quotient, random_sq_ideal, FAMILY_MAX_N};
use crate::homology::invariants;
use crate::ideals::SqIdeal;
use crate::report::{ideal_string, SurveyRecord};
use crate::sqmod::{
    apel_bound, dualize_decomposition, dualize_quotient, hreg_min, sdepth, validate_decomposition, SqQuotient,
    SUPPORT_MAX_N,
};

pub const DEFAULT_CAP_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// Every nonzero `J/I`.
    Quotients,
    /// `S/I` for proper `I`.
    Cyclic,
    /// `I/0` for nonzero proper `I`.
    Ideals,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Quotients => "quotients",
            Target::Cyclic => "cyclic",
            Target::Ideals => "ideals",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub n: usize,
    pub mode: Mode,
    pub target: Target,
    /// Largest `n` accepted in exhaustive mode.
    pub cap_n: usize,
    /// Record wall-clock time per instance (makes output nondeterministic).
    pub timings: bool,
}

impl SurveyConfig {
    pub fn new(n: usize, mode: Mode, target: Target) -> Self {
        SurveyConfig { n, mode, target, cap_n: DEFAULT_CAP_N, timings: false }
    }
}

fn random_nonzero_ideal(rng: &mut ChaCha8Rng, n: usize) -> SqIdeal {
    loop {
        let i = random_sq_ideal(rng, n, n + 1);
        if !i.is_zero() {
            return i;
        }
    }
}

/// The modules a configuration sweeps, in survey order.
pub fn instances(cfg: &SurveyConfig) -> Result<Vec<SqQuotient>> {
    let n = cfg.n;
    match cfg.mode {
        Mode::Exhaustive => {
            if n > cfg.cap_n {
                return Err(Error::CapExceeded { n, cap: cfg.cap_n });
            }
            if n > FAMILY_MAX_N {
                return Err(Error::CapExceeded { n, cap: FAMILY_MAX_N });
            }
            let unit = SqIdeal::unit(n);
            let zero = SqIdeal::zero(n);
            Ok(match cfg.target {
                Target::Quotients => all_quotients(n),
                Target::Cyclic => all_sq_ideals(n)
                    .iter()
                    .filter(|i| !i.is_unit())
                    .map(|i| SqQuotient::from_sq_ideals(i, &unit))
                    .collect::<Result<_>>()?,
                Target::Ideals => all_sq_ideals(n)
                    .iter()
                    .filter(|i| !i.is_zero() && !i.is_unit())
                    .map(|i| SqQuotient::from_sq_ideals(&zero, i))
                    .collect::<Result<_>>()?,
            })
        }
        Mode::Random { seed, count } => {
            if n == 0 || n > SUPPORT_MAX_N {
                return Err(Error::CapExceeded { n, cap: SUPPORT_MAX_N });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| match cfg.target {
                    Target::Quotients => Ok(random_quotient(&mut rng, n)),
                    Target::Cyclic => SqQuotient::from_sq_ideals(&random_sq_ideal(&mut rng, n, n + 1), &SqIdeal::unit(n)),
                    Target::Ideals => SqQuotient::from_sq_ideals(&SqIdeal::zero(n), &random_nonzero_ideal(&mut rng, n)),
                })
                .collect()
        }
    }
}

/// All record fields for one module; theorem-level failures are errors.
pub fn evaluate<F: Field>(id: usize, seed: Option<u64>, target: Target, m: &SqQuotient, timings: bool) -> Result<SurveyRecord> {
    let start = Instant::now();
    let n = m.n();
    let inv = invariants::<F>(m)?;
    let dual = dualize_quotient(m)?;
    let dinv = invariants::<F>(&dual)?;
    let (sd, witness) = sdepth(m)?;
    let (hmin, _) = hreg_min(m)?;
    let (dual_hmin, _) = hreg_min(&dual)?;
    let apel = apel_bound(m)?;

    let dual_witness = dualize_decomposition(&witness);
    let duality_roundtrip_ok = validate_decomposition(&dual, &dual_witness)
        && dualize_decomposition(&dual_witness) == witness
        && dualize_quotient(&dual)?.support() == m.support();

    let pf = facet_peel_filtration(m)?;
    let filtration_dual_ok = validate_filtration(&pf)
        && match dualize_filtration(&pf) {
            Ok(d) => validate_filtration(&d) && d.base().support() == dual.support(),
            Err(_) => false,
        };

    let stanley_holds = sd >= inv.depth;
    let dual_bottoms_ok = dual_witness.spaces().iter().all(|s| s.bottom.len() <= dinv.reg);
    let record = SurveyRecord {
        id,
        seed,
        target: target.name().into(),
        n,
        characteristic: F::characteristic(),
        inner: ideal_string(m.inner()),
        outer: ideal_string(m.outer()),
        depth: inv.depth,
        sdepth: sd,
        reg: inv.reg,
        hreg_witness: witness.hreg().unwrap_or(0),
        hreg_min: hmin,
        apel_bound: apel,
        projdim: inv.projdim,
        dual_reg: dinv.reg,
        dual_hreg_min: dual_hmin,
        stanley_holds,
        conj_reg_holds: hmin <= inv.reg,
        terai_ok: inv.projdim == dinv.reg,
        duality_roundtrip_ok,
        filtration_dual_ok,
        bottom_equivalence_ok: stanley_holds == dual_bottoms_ok,
        micros: timings.then(|| start.elapsed().as_micros() as u64),
    };

    let mut failed = Vec::new();
    if !record.theorem_flags_hold() {
        failed.push("theorem flags");
    }
    if sd > apel || inv.depth > apel {
        failed.push("associated-prime bound");
    }
    if dual_hmin + sd != n {
        failed.push("hreg_min(M^∨) = n - sdepth(M)");
    }
    if !failed.is_empty() {
        return Err(Error::TheoremViolation(format!(
            "instance {id} ({} / {}): {}",
            record.outer,
            record.inner,
            failed.join(", ")
        )));
    }
    Ok(record)
}

/// Runs the sweep in parallel; records are ordered by instance id and the
/// first failing instance (by id) determines the error.
pub fn survey<F: Field>(cfg: &SurveyConfig) -> Result<Vec<SurveyRecord>> {
    let seed = match cfg.mode {
        Mode::Random { seed, .. } => Some(seed),
        Mode::Exhaustive => None,
    };
    instances(cfg)?
        .par_iter()
        .enumerate()
        .map(|(id, m)| evaluate::<F>(id, seed, cfg.target, m, cfg.timings))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}
