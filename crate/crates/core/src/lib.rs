//! Fiber-domain analysis of translation-generated systems on finite
//! groups: the Zak transform and fiberization map, bracket functions,
//! pre-Gramian/Gramian/mixed dual-Gramian fiber operators, range
//! functions and frame bounds, and verification plus construction engines
//! for subspace duality, orthogonality, biorthogonality, Gabor systems,
//! and super-space duals.

mod bracket;
mod duality;
mod error;
mod gabor;
mod gramian;
pub mod jacobi;
pub mod linalg;
mod report;
mod superframe;
pub mod tol;
mod zak;

pub use bracket::{
    bracket, bracket_fiberization, dtft, matrix_element, support_of_bracket, support_set,
    BracketFunction, BracketVariant, SupportSet,
};
pub use duality::{
    canonical_dual_family, construct_biorthogonal, construct_dual, decompose, periodic_multiply,
    supplementary_checks, verify_biorthogonal, verify_dual_single, verify_orthogonal_single,
    verify_subspace_dual, verify_subspace_orthogonal, Decomposition, DualConstruction,
    SupplementaryReport,
};
pub use error::{CoreError, Result};
pub use gabor::{
    gabor_expand, spline_generator, verify_gabor_dual, verify_gabor_orthogonal, GaborSystem,
};
pub use gramian::{
    frame_bounds, gramian, mixed_dual_gramian, pre_gramian, range_function, FiberOperatorSet,
    FrameBounds, ZakFamily,
};
pub use report::{Offender, Verdict, VerificationReport, MAX_OFFENDERS};
pub use superframe::{verify_super_dual, SuperFamily};
pub use tol::Tolerances;
pub use zak::{modulate, translate, FiberArray, FiberPlan, ZakArray, ZakPlan};
