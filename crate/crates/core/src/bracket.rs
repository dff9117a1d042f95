//! Bracket maps, matrix elements, and support sets.
//!
//! The bracket `[ψ, φ](α) = Σ_{Γx} Zψ(α, Γx) conj(Zφ(α, Γx))` is
//! conjugate-linear in its second slot; the fiberization variant replaces
//! the coset sum by a sum over the annihilator columns. Both variants
//! agree under the row identification `ω ↦ ω|_Λ`.

use num_complex::Complex64;
use zakframes_group::{CharacterTable, Signal, Subgroup};

use crate::error::{CoreError, Result};
use crate::zak::{FiberArray, ZakArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketVariant {
    /// Indexed by the characters of Γ.
    Zak,
    /// Indexed by the cosets of `Ĝ/Λ⊥` in Θ order.
    Fiberization,
}

/// A bracket function: one complex value per fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketFunction {
    values: Vec<Complex64>,
    variant: BracketVariant,
}

impl BracketFunction {
    pub fn from_values(values: Vec<Complex64>, variant: BracketVariant) -> BracketFunction {
        BracketFunction { values, variant }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, fiber: usize) -> Complex64 {
        self.values[fiber]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn variant(&self) -> BracketVariant {
        self.variant
    }

    /// Largest modulus over the fibers.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `[ψ, φ](α) = Σ_c Zψ(α, c) conj(Zφ(α, c))`.
pub fn bracket(zpsi: &ZakArray, zphi: &ZakArray) -> Result<BracketFunction> {
    if !zpsi.same_shape(zphi) {
        return Err(CoreError::ShapeMismatch(format!(
            "bracket of {}x{} against {}x{}",
            zpsi.n_fibers(),
            zpsi.n_cosets(),
            zphi.n_fibers(),
            zphi.n_cosets()
        )));
    }
    let values = (0..zpsi.n_fibers())
        .map(|a| {
            zpsi.fiber(a)
                .iter()
                .zip(zphi.fiber(a))
                .map(|(p, q)| p * q.conj())
                .sum()
        })
        .collect();
    Ok(BracketFunction {
        values,
        variant: BracketVariant::Zak,
    })
}

/// Fiberization bracket: row-wise inner products over `ξ ∈ Λ⊥`.
pub fn bracket_fiberization(tpsi: &FiberArray, tphi: &FiberArray) -> Result<BracketFunction> {
    if !tpsi.same_shape(tphi) {
        return Err(CoreError::ShapeMismatch(format!(
            "fiber bracket of {}x{} against {}x{}",
            tpsi.n_rows(),
            tpsi.n_cols(),
            tphi.n_rows(),
            tphi.n_cols()
        )));
    }
    let values = (0..tpsi.n_rows())
        .map(|r| {
            tpsi.row(r)
                .iter()
                .zip(tphi.row(r))
                .map(|(p, q)| p * q.conj())
                .sum()
        })
        .collect();
    Ok(BracketFunction {
        values,
        variant: BracketVariant::Fiberization,
    })
}

/// Matrix element `(M_φ ψ)(γ) = ⟨ψ, L_γ φ⟩`, one entry per subgroup
/// element in subgroup order.
pub fn matrix_element(psi: &Signal, phi: &Signal, sub: &Subgroup) -> Result<Vec<Complex64>> {
    if !psi.same_group(phi) || psi.group().as_ref() != sub.group().as_ref() {
        return Err(CoreError::ShapeMismatch(
            "matrix element requires a shared group".into(),
        ));
    }
    let g = psi.group();
    Ok(sub
        .elements()
        .iter()
        .map(|&gamma| {
            let gamma_inv = g.inv(gamma);
            (0..g.order())
                .map(|x| psi.value(x) * phi.value(g.mul(gamma_inv, x)).conj())
                .sum()
        })
        .collect())
}

/// Discrete-time Fourier transform of a Γ-indexed sequence at character
/// `alpha`: `Σ_γ z(γ) conj(α(γ))`.
pub fn dtft(seq: &[Complex64], chars: &CharacterTable, alpha: usize) -> Complex64 {
    seq.iter()
        .enumerate()
        .map(|(j, z)| z * chars.value(alpha, j).conj())
        .sum()
}

/// The fibers where a self-bracket is (relatively) nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    mask: Vec<bool>,
}

impl SupportSet {
    pub fn contains(&self, fiber: usize) -> bool {
        self.mask[fiber]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn indices(&self) -> Vec<usize> {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_full(&self) -> bool {
        self.mask.iter().all(|&m| m)
    }
}

/// Thresholds the self-bracket of a Zak array: a fiber belongs to the
/// support when `[φ,φ](α) > eps_supp * max_α [φ,φ](α)`. An all-zero
/// signal yields the empty support.
pub fn support_set(zphi: &ZakArray, eps_supp: f64) -> Result<SupportSet> {
    if !(eps_supp > 0.0 && eps_supp < 1.0) {
        return Err(CoreError::InvalidTolerance {
            what: "eps_supp",
            value: eps_supp,
        });
    }
    let diag = bracket(zphi, zphi)?;
    Ok(support_of_bracket(&diag, eps_supp))
}

/// Same thresholding applied to an existing self-bracket.
pub fn support_of_bracket(diag: &BracketFunction, eps_supp: f64) -> SupportSet {
    let max = diag.values().iter().map(|v| v.re).fold(0.0, f64::max);
    let mask = diag
        .values()
        .iter()
        .map(|v| max > 0.0 && v.re > eps_supp * max)
        .collect();
    SupportSet { mask }
}
