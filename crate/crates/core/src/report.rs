//! Verification reports: verdicts, per-fiber residuals, worst offenders.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::gramian::FrameBounds;
use crate::tol::Tolerances;

pub const MAX_OFFENDERS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

/// One badly-behaved fiber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Offender {
    pub alpha: usize,
    pub residual: f64,
}

/// Outcome of a fiberwise criterion check. `verdict` is `Holds` exactly
/// when `max_residual <= tolerances.dual`; offenders are the worst fibers,
/// residual-descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub criterion: String,
    pub verdict: Verdict,
    pub max_residual: f64,
    pub tolerances: Tolerances,
    pub offenders: Vec<Offender>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame_bounds: Option<FrameBounds>,
    pub per_fiber_residuals: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub aux_residuals: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
}

impl VerificationReport {
    /// Builds a report from per-fiber residuals under the given criterion
    /// name; the verdict is decided by `tolerances.dual`.
    pub fn from_fibers(
        criterion: impl Into<String>,
        per_fiber: Vec<f64>,
        tolerances: Tolerances,
    ) -> VerificationReport {
        let max_residual = per_fiber.iter().copied().fold(0.0, f64::max);
        let mut ranked: Vec<Offender> = per_fiber
            .iter()
            .enumerate()
            .map(|(alpha, &residual)| Offender { alpha, residual })
            .collect();
        ranked.sort_by(|a, b| {
            b.residual
                .partial_cmp(&a.residual)
                .expect("finite residuals")
                .then(a.alpha.cmp(&b.alpha))
        });
        ranked.truncate(MAX_OFFENDERS);
        ranked.retain(|o| o.residual > 0.0);
        VerificationReport {
            criterion: criterion.into(),
            verdict: if max_residual <= tolerances.dual {
                Verdict::Holds
            } else {
                Verdict::Fails
            },
            max_residual,
            tolerances,
            offenders: ranked,
            frame_bounds: None,
            per_fiber_residuals: per_fiber,
            notes: Vec::new(),
            aux_residuals: BTreeMap::new(),
            flags: BTreeMap::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_frame_bounds(mut self, fb: FrameBounds) -> Self {
        self.frame_bounds = Some(fb);
        self
    }

    pub fn with_aux(mut self, key: impl Into<String>, value: f64) -> Self {
        self.aux_residuals.insert(key.into(), value);
        self
    }

    pub fn with_flag(mut self, key: impl Into<String>, value: bool) -> Self {
        self.flags.insert(key.into(), value);
        self
    }

    /// Re-decides the verdict after aux residuals were merged in.
    pub fn and_residual(mut self, extra: f64) -> Self {
        if extra > self.max_residual {
            self.max_residual = extra;
        }
        self.verdict = if self.max_residual <= self.tolerances.dual {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        self
    }
}
