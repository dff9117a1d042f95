//! The Zak transform for a pair (G, Γ), its inverse, translation and
//! modulation operators, and the fiberization map for abelian G.
//!
//! Conventions (counting measure on G and its quotients):
//!
//! * `Zf(α, Γx) = Σ_{γ∈Γ} f(γ Ξ(Γx)) conj(α(γ))`, rows indexed by the
//!   characters of Γ, columns by the right cosets;
//! * the inverse is `f(γ Ξ(Γx)) = (1/|Γ|) Σ_α Z(α, Γx) α(γ)`, and
//!   `(1/|Γ|) Σ |Z|² = ‖f‖²`;
//! * the fiberization of a signal on abelian G is its group DFT normalized
//!   by `1/√|Λ⊥|`, regrouped over `Ĝ/Λ⊥` cosets; with this weight the
//!   fiber-side bracket agrees exactly with the Zak-side bracket under the
//!   restriction map `ω ↦ ω|_Λ`, and `(1/|Λ|) Σ |Tf|² = ‖f‖²`.

use std::sync::Arc;

use num_complex::Complex64;
use zakframes_group::{Annihilator, CharacterTable, CosetTable, Group, Signal, Subgroup};

use crate::error::{CoreError, Result};

/// Precomputed tables for Zak analysis of a fixed pair (G, Γ).
#[derive(Debug, Clone)]
pub struct ZakPlan {
    group: Arc<Group>,
    sub: Arc<Subgroup>,
    cosets: Arc<CosetTable>,
    chars: Arc<CharacterTable>,
}

impl ZakPlan {
    pub fn new(group: Arc<Group>, sub: Arc<Subgroup>) -> Result<ZakPlan> {
        if sub.group().as_ref() != group.as_ref() {
            return Err(CoreError::ShapeMismatch(
                "subgroup belongs to a different group".into(),
            ));
        }
        let cosets = Arc::new(CosetTable::new(Arc::clone(&sub)));
        let chars = Arc::new(CharacterTable::new(Arc::clone(&sub))?);
        Ok(ZakPlan {
            group,
            sub,
            cosets,
            chars,
        })
    }

    /// Plan over a caller-supplied coset table (e.g. a non-canonical
    /// section); the table must partition the same subgroup.
    pub fn with_cosets(cosets: Arc<CosetTable>) -> Result<ZakPlan> {
        let sub = Arc::clone(cosets.subgroup());
        let group = Arc::clone(sub.group());
        let chars = Arc::new(CharacterTable::new(Arc::clone(&sub))?);
        Ok(ZakPlan {
            group,
            sub,
            cosets,
            chars,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.sub
    }

    pub fn cosets(&self) -> &Arc<CosetTable> {
        &self.cosets
    }

    pub fn chars(&self) -> &Arc<CharacterTable> {
        &self.chars
    }

    pub fn n_fibers(&self) -> usize {
        self.chars.n_chars()
    }

    /// `Zf(α, Γx) = Σ_γ f(γ Ξ(Γx)) conj(α(γ))`.
    pub fn forward(&self, f: &Signal) -> Result<ZakArray> {
        if f.group().as_ref() != self.group.as_ref() {
            return Err(CoreError::ShapeMismatch(
                "signal lives on a different group".into(),
            ));
        }
        let m = self.sub.order();
        let q = self.cosets.n_cosets();
        let mut data = vec![Complex64::new(0.0, 0.0); m * q];
        // Gather each coset's samples once, then transform along Γ.
        for c in 0..q {
            let rep = self.cosets.rep(c);
            let samples: Vec<Complex64> = (0..m)
                .map(|j| f.value(self.group.mul(self.sub.element(j), rep)))
                .collect();
            for a in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, s) in samples.iter().enumerate() {
                    acc += s * self.chars.value(a, j).conj();
                }
                data[a * q + c] = acc;
            }
        }
        Ok(ZakArray {
            cosets: Arc::clone(&self.cosets),
            chars: Arc::clone(&self.chars),
            data,
        })
    }

    /// Inverse transform; round-trips `forward` exactly up to rounding.
    pub fn inverse(&self, z: &ZakArray) -> Result<Signal> {
        if !z.compatible_with(self) {
            return Err(CoreError::ShapeMismatch(
                "Zak array belongs to different tables".into(),
            ));
        }
        let m = self.sub.order();
        let q = self.cosets.n_cosets();
        let mut out = Signal::zeros(Arc::clone(&self.group));
        let scale = 1.0 / m as f64;
        for c in 0..q {
            let rep = self.cosets.rep(c);
            for j in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..m {
                    acc += z.at(a, c) * self.chars.value(a, j);
                }
                out.set(self.group.mul(self.sub.element(j), rep), acc * scale);
            }
        }
        Ok(out)
    }
}

/// The fibered image of a signal: rows run over the characters of Γ,
/// columns over the right cosets of Γ in G.
#[derive(Debug, Clone, PartialEq)]
pub struct ZakArray {
    cosets: Arc<CosetTable>,
    chars: Arc<CharacterTable>,
    data: Vec<Complex64>,
}

impl ZakArray {
    pub fn from_rows(plan: &ZakPlan, data: Vec<Complex64>) -> Result<ZakArray> {
        let want = plan.chars.n_chars() * plan.cosets.n_cosets();
        if data.len() != want {
            return Err(CoreError::ShapeMismatch(format!(
                "expected {want} entries, got {}",
                data.len()
            )));
        }
        Ok(ZakArray {
            cosets: Arc::clone(&plan.cosets),
            chars: Arc::clone(&plan.chars),
            data,
        })
    }

    pub fn n_fibers(&self) -> usize {
        self.chars.n_chars()
    }

    pub fn n_cosets(&self) -> usize {
        self.cosets.n_cosets()
    }

    pub fn at(&self, alpha: usize, coset: usize) -> Complex64 {
        self.data[alpha * self.n_cosets() + coset]
    }

    pub fn set(&mut self, alpha: usize, coset: usize, v: Complex64) {
        let q = self.n_cosets();
        self.data[alpha * q + coset] = v;
    }

    /// The fiber at `alpha` as a slice over cosets.
    pub fn fiber(&self, alpha: usize) -> &[Complex64] {
        let q = self.n_cosets();
        &self.data[alpha * q..(alpha + 1) * q]
    }

    /// Squared norm of the fiber at `alpha`.
    pub fn fiber_norm_sqr(&self, alpha: usize) -> f64 {
        self.fiber(alpha).iter().map(|z| z.norm_sqr()).sum()
    }

    /// `(1/|Γ|) Σ |Z|²`, which equals `‖f‖²` for a transformed signal.
    pub fn weighted_norm_sqr(&self) -> f64 {
        let total: f64 = self.data.iter().map(|z| z.norm_sqr()).sum();
        total / self.chars.n_chars() as f64
    }

    pub fn same_shape(&self, other: &ZakArray) -> bool {
        self.n_fibers() == other.n_fibers() && self.n_cosets() == other.n_cosets()
    }

    pub fn compatible_with(&self, plan: &ZakPlan) -> bool {
        Arc::ptr_eq(&self.cosets, &plan.cosets)
            || (self.cosets.as_ref() == plan.cosets.as_ref()
                && self.chars.as_ref() == plan.chars.as_ref())
    }

    pub fn cosets(&self) -> &Arc<CosetTable> {
        &self.cosets
    }

    pub fn chars(&self) -> &Arc<CharacterTable> {
        &self.chars
    }
}

/// Left translation `(L_η f)(x) = f(η^{-1} x)`.
pub fn translate(f: &Signal, eta: usize) -> Result<Signal> {
    let g = f.group();
    if eta >= g.order() {
        return Err(CoreError::Group(zakframes_group::GroupError::InvalidElement {
            index: eta,
            order: g.order(),
        }));
    }
    let eta_inv = g.inv(eta);
    let values = (0..g.order()).map(|x| f.value(g.mul(eta_inv, x))).collect();
    Ok(Signal::new(Arc::clone(g), values).expect("same length"))
}

/// Modulation `(E_ω f)(x) = ω(x) f(x)` by a character of the full group;
/// only defined for abelian G.
pub fn modulate(f: &Signal, full_chars: &CharacterTable, omega: usize) -> Result<Signal> {
    let g = f.group();
    if !g.is_abelian() {
        return Err(CoreError::Group(zakframes_group::GroupError::AbelianRequired));
    }
    if full_chars.subgroup().order() != g.order() {
        return Err(CoreError::ShapeMismatch(
            "modulation needs the character table of the full group".into(),
        ));
    }
    let values = (0..g.order())
        .map(|x| full_chars.value(omega, x) * f.value(x))
        .collect();
    Ok(Signal::new(Arc::clone(g), values).expect("same length"))
}

/// Precomputed tables for the fiberization of an abelian pair (G, Λ).
#[derive(Debug, Clone)]
pub struct FiberPlan {
    group: Arc<Group>,
    sub: Arc<Subgroup>,
    ann: Arc<Annihilator>,
    /// `1/√|Λ⊥|`, the DFT normalization.
    dft_scale: f64,
}

impl FiberPlan {
    pub fn new(group: Arc<Group>, sub: Arc<Subgroup>) -> Result<FiberPlan> {
        let ann = Arc::new(Annihilator::new(&group, &sub)?);
        let dft_scale = 1.0 / (ann.perp().len() as f64).sqrt();
        Ok(FiberPlan {
            group,
            sub,
            ann,
            dft_scale,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.sub
    }

    pub fn annihilator(&self) -> &Arc<Annihilator> {
        &self.ann
    }

    /// Full-group DFT in this plan's normalization:
    /// `f̂(ω) = (1/√|Λ⊥|) Σ_x f(x) conj(ω(x))`.
    pub fn dft(&self, f: &Signal) -> Result<Vec<Complex64>> {
        if f.group().as_ref() != self.group.as_ref() {
            return Err(CoreError::ShapeMismatch(
                "signal lives on a different group".into(),
            ));
        }
        let n = self.group.order();
        let chars = self.ann.full_chars();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (w, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..n {
                acc += f.value(x) * chars.value(w, x).conj();
            }
            *slot = acc * self.dft_scale;
        }
        Ok(out)
    }

    /// Builds the signal whose transform (in this plan's normalization)
    /// takes the given values, indexed by character.
    pub fn signal_from_transform(&self, hat: &[Complex64]) -> Result<Signal> {
        let n = self.group.order();
        if hat.len() != n {
            return Err(CoreError::ShapeMismatch(format!(
                "expected {n} transform values, got {}",
                hat.len()
            )));
        }
        let chars = self.ann.full_chars();
        let scale = 1.0 / (self.dft_scale * n as f64);
        let values = (0..n)
            .map(|x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (w, v) in hat.iter().enumerate() {
                    acc += v * chars.value(w, x);
                }
                acc * scale
            })
            .collect();
        Ok(Signal::new(Arc::clone(&self.group), values).expect("same length"))
    }

    /// `Tf(ωΛ⊥)(ξ) = f̂(Θ(ωΛ⊥) ξ)`: the DFT regrouped over `Ĝ/Λ⊥`.
    pub fn forward(&self, f: &Signal) -> Result<FiberArray> {
        let hat = self.dft(f)?;
        let rows = self.ann.n_cosets();
        let cols = self.ann.perp().len();
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        for r in 0..rows {
            for j in 0..cols {
                data[r * cols + j] = hat[self.ann.coset_member(r, j)];
            }
        }
        Ok(FiberArray {
            ann: Arc::clone(&self.ann),
            data,
        })
    }

    /// Inverse of [`FiberPlan::forward`].
    pub fn inverse(&self, t: &FiberArray) -> Result<Signal> {
        let rows = self.ann.n_cosets();
        let cols = self.ann.perp().len();
        if t.n_rows() != rows || t.n_cols() != cols {
            return Err(CoreError::ShapeMismatch("fiber array shape".into()));
        }
        let mut hat = vec![Complex64::new(0.0, 0.0); self.group.order()];
        for r in 0..rows {
            for j in 0..cols {
                hat[self.ann.coset_member(r, j)] = t.at(r, j);
            }
        }
        self.signal_from_transform(&hat)
    }

    /// Row index whose restriction to Λ equals the given Zak fiber index,
    /// i.e. the inverse of `ωΛ⊥ ↦ ω|_Λ` against a Λ-character table.
    pub fn row_for_zak_fiber(&self, sub_chars: &CharacterTable, alpha: usize) -> Option<usize> {
        (0..self.ann.n_cosets()).find(|&r| {
            self.ann
                .full_chars()
                .restrict_to(self.ann.theta()[r], sub_chars)
                == Some(alpha)
        })
    }
}

/// The fiberization image: rows over `Ĝ/Λ⊥` cosets in Θ order, columns
/// over the annihilator characters.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberArray {
    ann: Arc<Annihilator>,
    data: Vec<Complex64>,
}

impl FiberArray {
    pub fn n_rows(&self) -> usize {
        self.ann.n_cosets()
    }

    pub fn n_cols(&self) -> usize {
        self.ann.perp().len()
    }

    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n_cols() + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        let c = self.n_cols();
        &self.data[row * c..(row + 1) * c]
    }

    /// `(1/|Λ|) Σ |T|²`, which equals `‖f‖²` for a transformed signal.
    pub fn weighted_norm_sqr(&self) -> f64 {
        let total: f64 = self.data.iter().map(|z| z.norm_sqr()).sum();
        total / self.ann.subgroup().order() as f64
    }

    pub fn annihilator(&self) -> &Arc<Annihilator> {
        &self.ann
    }

    pub fn same_shape(&self, other: &FiberArray) -> bool {
        self.n_rows() == other.n_rows() && self.n_cols() == other.n_cols()
    }
}
