use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::integrators::StepperKind;
use crate::model::{DataKind, InitialDataSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Study {
    TauSweep,
    CUniformity,
    NlsLimit,
    Comparator,
}

impl Study {
    pub fn name(self) -> &'static str {
        match self {
            Study::TauSweep => "tau-sweep",
            Study::CUniformity => "c-uniformity",
            Study::NlsLimit => "nls-limit",
            Study::Comparator => "comparator",
        }
    }

    /// Schemes used when none are given.
    pub fn default_schemes(self) -> Vec<StepperKind> {
        match self {
            Study::TauSweep | Study::CUniformity | Study::NlsLimit => {
                vec![StepperKind::UA_LRI1, StepperKind::UA_LRI2]
            }
            Study::Comparator => vec![StepperKind::UA_LRI1, StepperKind::EXP_EULER],
        }
    }
}

impl fmt::Display for Study {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Study {
    type Err = KgError;

    fn from_str(s: &str) -> Result<Self> {
        [
            Study::TauSweep,
            Study::CUniformity,
            Study::NlsLimit,
            Study::Comparator,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| KgError::Validation(format!("unknown study '{s}'")))
    }
}

/// `smooth` or `rough:THETA`.
pub fn parse_data(s: &str, seed: u64) -> Result<InitialDataSpec> {
    if s == "smooth" {
        return Ok(InitialDataSpec::smooth());
    }
    let theta = s
        .strip_prefix("rough:")
        .and_then(|t| t.parse::<f64>().ok())
        .ok_or_else(|| {
            KgError::Validation(format!("data must be 'smooth' or 'rough:THETA', got '{s}'"))
        })?;
    if !(theta > 0.5 && theta.is_finite()) {
        return Err(KgError::Validation(format!(
            "rough data needs θ > 1/2, got {theta}"
        )));
    }
    Ok(InitialDataSpec::rough(theta, seed))
}

/// A study as requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudySpec {
    pub study: Study,
    pub schemes: Vec<StepperKind>,
    pub c_values: Vec<f64>,
    pub tau_values: Vec<f64>,
    pub n: usize,
    pub dim: usize,
    pub final_time: f64,
    pub r: f64,
    pub data: InitialDataSpec,
    pub dealias: bool,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl StudySpec {
    /// The acceptance sweep: smooth data, `N = 128`, `T = 1`, `r = 1`,
    /// `τ ∈ {2⁻⁴…2⁻¹⁰}·0.5`, `c ∈ {1, 10, 100, 1000}`.
    pub fn default_sweep(study: Study) -> Self {
        StudySpec {
            study,
            schemes: study.default_schemes(),
            c_values: vec![1.0, 10.0, 100.0, 1000.0],
            tau_values: (4..=10).map(|j| 0.5 * 2f64.powi(-j)).collect(),
            n: 128,
            dim: 1,
            final_time: 1.0,
            r: 1.0,
            data: InitialDataSpec::smooth(),
            dealias: true,
            out: None,
            jobs: None,
        }
    }

    /// Checks the spec and fixes `T` to a multiple of the largest step.
    pub fn resolve(&self) -> Result<ResolvedSpec> {
        let bad = |m: String| Err(KgError::Validation(m));
        if self.schemes.is_empty() {
            return bad("at least one scheme is required".into());
        }
        if self.c_values.is_empty() || self.tau_values.is_empty() {
            return bad("c and τ lists must be non-empty".into());
        }
        if let Some(c) = self.c_values.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return bad(format!("c must be positive, got {c}"));
        }
        if let Some(t) = self
            .tau_values
            .iter()
            .find(|t| !(t.is_finite() && **t > 0.0))
        {
            return bad(format!("τ must be positive, got {t}"));
        }
        for w in self.tau_values.windows(2) {
            let ratio = w[0] / w[1];
            let k = ratio.log2().round();
            if k < 1.0 || (ratio - 2f64.powf(k)).abs() > 1e-12 * ratio {
                return bad(format!(
                    "τ values must decrease by powers of two, got {} then {}",
                    w[0], w[1]
                ));
            }
        }
        if !(self.final_time.is_finite() && self.final_time > 0.0) {
            return bad(format!(
                "final time must be positive, got {}",
                self.final_time
            ));
        }
        if !self.r.is_finite() || self.r < 0.0 {
            return bad(format!("norm index must be ≥ 0, got {}", self.r));
        }
        if !(self.dim == 1 || self.dim == 2) || self.n < 4 || !self.n.is_power_of_two() {
            return bad(format!(
                "grid must be a power of two ≥ 4 in dimension 1 or 2, got N = {} (d = {})",
                self.n, self.dim
            ));
        }
        if self.jobs == Some(0) {
            return bad("--jobs must be at least 1".into());
        }
        let nls_in_sweep = self.study != Study::NlsLimit && self.schemes.iter().any(|k| k.is_nls());
        if nls_in_sweep {
            return bad("NLS schemes are only valid in the nls-limit study".into());
        }
        if self.study == Study::NlsLimit {
            if let Some(k) = self.schemes.iter().find(|k| k.limit_partner().is_none()) {
                return bad(format!("{k} has no NLS-limit partner"));
            }
            if self.tau_values.len() != 1 {
                return bad("the nls-limit study uses a single τ".into());
            }
            if !matches!(self.data.kind, DataKind::Smooth) {
                return bad("the nls-limit study needs smooth data".into());
            }
        }
        let tau_max = self.tau_values[0];
        let steps = (self.final_time / tau_max).round().max(1.0);
        let final_time = steps * tau_max;
        let tau_min = *self.tau_values.last().expect("non-empty");
        let mut c_values = self.c_values.clone();
        c_values.sort_by(f64::total_cmp);
        c_values.dedup();
        let mut schemes = self.schemes.clone();
        schemes.sort();
        schemes.dedup();
        if self.study == Study::Comparator && !schemes.contains(&StepperKind::EXP_EULER) {
            schemes.push(StepperKind::EXP_EULER);
        }
        Ok(ResolvedSpec {
            spec: StudySpec {
                schemes,
                c_values,
                final_time,
                ..self.clone()
            },
            requested_final_time: self.final_time,
            tau_ref: tau_min / 64.0,
            data_label: self.data.label(),
        })
    }
}

/// A validated spec with derived quantities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedSpec {
    #[serde(flatten)]
    pub spec: StudySpec,
    /// `T` as given, before rounding to a multiple of the largest τ.
    pub requested_final_time: f64,
    /// Step of the reference runs; a second run at `τ_ref/2` certifies it.
    pub tau_ref: f64,
    pub data_label: String,
}
