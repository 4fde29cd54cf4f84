//! Time integrators: the first- and second-order uniformly accurate
//! low-regularity schemes for Klein-Gordon, their NLS-limit counterparts, an
//! exponential-Euler comparator, and the time loop.

mod steps;
mod symbols;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::model::KGState;

pub use steps::{
    compute_m_terms, step_exp_euler, step_nls_lri1, step_nls_lri1_with, step_nls_lri2,
    step_nls_lri2_with, step_ua_lri1, step_ua_lri2,
};
pub use symbols::{CorrectionWeights, PrecomputedSymbols};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepperKind {
    UA_LRI1,
    UA_LRI2,
    NLS_LRI1,
    NLS_LRI2,
    EXP_EULER,
}

impl StepperKind {
    pub const ALL: [StepperKind; 5] = [
        StepperKind::UA_LRI1,
        StepperKind::UA_LRI2,
        StepperKind::NLS_LRI1,
        StepperKind::NLS_LRI2,
        StepperKind::EXP_EULER,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StepperKind::UA_LRI1 => "UA_LRI1",
            StepperKind::UA_LRI2 => "UA_LRI2",
            StepperKind::NLS_LRI1 => "NLS_LRI1",
            StepperKind::NLS_LRI2 => "NLS_LRI2",
            StepperKind::EXP_EULER => "EXP_EULER",
        }
    }

    /// Schemes for the limit equation ignore `c` and advance `u*,∞`.
    pub fn is_nls(self) -> bool {
        matches!(self, StepperKind::NLS_LRI1 | StepperKind::NLS_LRI2)
    }

    /// Nominal global order.
    pub fn order(self) -> u32 {
        match self {
            StepperKind::UA_LRI2 | StepperKind::NLS_LRI2 => 2,
            _ => 1,
        }
    }

    /// The NLS scheme each KG scheme tends to as `c → ∞`.
    pub fn limit_partner(self) -> Option<StepperKind> {
        match self {
            StepperKind::UA_LRI1 => Some(StepperKind::NLS_LRI1),
            StepperKind::UA_LRI2 => Some(StepperKind::NLS_LRI2),
            _ => None,
        }
    }

    /// One step with prebuilt symbols.
    pub fn step(self, state: &KGState, pre: &PrecomputedSymbols) -> Result<KGState> {
        match self {
            StepperKind::UA_LRI1 => step_ua_lri1(state, pre),
            StepperKind::UA_LRI2 => step_ua_lri2(state, pre),
            StepperKind::EXP_EULER => step_exp_euler(state, pre),
            StepperKind::NLS_LRI1 | StepperKind::NLS_LRI2 => {
                let u = if self == StepperKind::NLS_LRI1 {
                    step_nls_lri1_with(&state.u, pre)?
                } else {
                    step_nls_lri2_with(&state.u, pre)?
                };
                Ok(KGState {
                    u,
                    time: state.time + pre.tau(),
                    c: state.c,
                })
            }
        }
    }
}

impl fmt::Display for StepperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StepperKind {
    type Err = KgError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        StepperKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| KgError::Validation(format!("unknown scheme '{s}'")))
    }
}

/// `n_steps` applications of `kind` with step `τ`. NLS kinds advance
/// `state.u` as the limit variable and leave `c` untouched.
pub fn evolve(state: &KGState, kind: StepperKind, tau: f64, n_steps: usize) -> Result<KGState> {
    if n_steps == 0 {
        return Ok(state.clone());
    }
    let c = if kind.is_nls() { 1.0 } else { state.c };
    let pre = PrecomputedSymbols::new(state.u.grid(), c, tau)?;
    evolve_with(state, kind, &pre, n_steps)
}

/// [`evolve`] with caller-supplied symbols (which fix `τ`).
pub fn evolve_with(
    state: &KGState,
    kind: StepperKind,
    pre: &PrecomputedSymbols,
    n_steps: usize,
) -> Result<KGState> {
    let mut s = state.clone();
    let start = state.time;
    for n in 0..n_steps {
        let mut next = if kind.is_nls() {
            let u = if kind == StepperKind::NLS_LRI1 {
                step_nls_lri1_with(&s.u, pre)
            } else {
                step_nls_lri2_with(&s.u, pre)
            };
            u.map(|u| KGState {
                u,
                time: s.time,
                c: s.c,
            })
        } else {
            kind.step(&s, pre)
        }
        .map_err(|e| KgError::Step {
            step: n,
            source: Box::new(e),
        })?;
        // time as an exact multiple rather than a running sum
        next.time = start + (n + 1) as f64 * pre.tau();
        s = next;
    }
    Ok(s)
}
