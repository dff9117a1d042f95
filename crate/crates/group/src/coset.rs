use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::subgroup::Subgroup;

/// The partition of a group into right cosets `Γx` of a subgroup, together
/// with a section `Ξ` picking one representative per coset and the inverse
/// lookup `x -> (coset, γ)` with `x = γ · Ξ(Γx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetTable {
    sub: Arc<Subgroup>,
    cosets: Vec<Vec<usize>>,
    reps: Vec<usize>,
    /// `lookup[x] = (coset index, position of γ in the subgroup)`.
    lookup: Vec<(usize, usize)>,
}

impl CosetTable {
    /// Canonical partition: cosets ordered by their minimal element, and
    /// `Ξ` equal to that minimal element.
    pub fn new(sub: Arc<Subgroup>) -> CosetTable {
        let group = sub.group();
        let n = group.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        let mut cosets = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = sub.elements().iter().map(|&g| group.mul(g, x)).collect();
            coset.sort_unstable();
            for &e in &coset {
                seen[e] = true;
            }
            reps.push(coset[0]);
            cosets.push(coset);
        }
        Self::finish(sub, cosets, reps)
    }

    /// Same partition with a caller-chosen representative per coset; used
    /// to exercise section independence.
    pub fn with_reps(sub: Arc<Subgroup>, reps: Vec<usize>) -> Result<CosetTable> {
        let canonical = Self::new(Arc::clone(&sub));
        if reps.len() != canonical.cosets.len() {
            return Err(GroupError::StructureMismatch(format!(
                "{} representatives given for {} cosets",
                reps.len(),
                canonical.cosets.len()
            )));
        }
        for (c, &r) in reps.iter().enumerate() {
            if !canonical.cosets[c].contains(&r) {
                return Err(GroupError::StructureMismatch(format!(
                    "representative {r} does not lie in coset {c}"
                )));
            }
        }
        Ok(Self::finish(sub, canonical.cosets, reps))
    }

    fn finish(sub: Arc<Subgroup>, cosets: Vec<Vec<usize>>, reps: Vec<usize>) -> CosetTable {
        let group = sub.group();
        let mut lookup = vec![(0usize, 0usize); group.order()];
        for (c, coset) in cosets.iter().enumerate() {
            let rep_inv = group.inv(reps[c]);
            for &x in coset {
                let gamma = group.mul(x, rep_inv);
                let pos = sub
                    .position_of(gamma)
                    .expect("x * rep^{-1} lies in the subgroup");
                lookup[x] = (c, pos);
            }
        }
        CosetTable {
            sub,
            cosets,
            reps,
            lookup,
        }
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.sub
    }

    pub fn n_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// The section `Ξ`: representative element of coset `c`.
    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    /// Factorization `x = γ · Ξ(Γx)`: returns `(coset index, γ position)`.
    pub fn factor(&self, x: usize) -> (usize, usize) {
        self.lookup[x]
    }
}
