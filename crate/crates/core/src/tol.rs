//! Pinned default tolerances. All residuals in this crate are relative
//! (normalized by `1 + scale of the operands`), so these thresholds are
//! dimensionless.

/// Verdict threshold for duality / orthogonality / membership residuals.
pub const DUAL: f64 = 1e-8;

/// Relative threshold defining the support set of a bracket.
pub const SUPP: f64 = 1e-10;

/// Relative rank cutoff for SVD-based range and projector computations.
pub const RANK: f64 = 1e-10;

/// Relative lower-bound threshold required of brackets that get inverted
/// by the constructive operations.
pub const LOWER: f64 = 1e-8;

/// Tolerances carried by every verification report.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    pub dual: f64,
    pub supp: f64,
    pub rank: f64,
    pub lower: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            dual: DUAL,
            supp: SUPP,
            rank: RANK,
            lower: LOWER,
        }
    }
}

impl Tolerances {
    pub fn with_dual(mut self, dual: f64) -> Self {
        self.dual = dual;
        self
    }

    pub fn with_supp(mut self, supp: f64) -> Self {
        self.supp = supp;
        self
    }
}
