use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::subgroup::Subgroup;

/// Tolerance for recognizing roots of unity when matching characters.
const CHAR_MATCH_TOL: f64 = 1e-9;

/// The character table of an abelian subgroup: row `k` holds the values of
/// the `k`-th character on the subgroup elements in sorted order.
///
/// Characters are built from a cyclic direct-sum decomposition of the
/// subgroup found by greedy maximal-order extraction; the homomorphism and
/// orthogonality laws are re-verified at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    sub: Arc<Subgroup>,
    /// Row-major `n_chars x sub.order()`.
    chi: Vec<Complex64>,
    n_chars: usize,
}

impl CharacterTable {
    pub fn new(sub: Arc<Subgroup>) -> Result<CharacterTable> {
        let m = sub.order();
        let (gens, orders) = cyclic_decomposition(&sub);
        let coords = coordinate_map(&sub, &gens, &orders);

        // Phases are exact rationals num/den with den = |Γ|; quarter-turn
        // values are emitted exactly so that integral examples stay
        // bit-exact through the transforms.
        let den: usize = orders.iter().product::<usize>().max(1);
        let mut chi = vec![Complex64::new(0.0, 0.0); m * m];
        for k in 0..m {
            let kc = digits(k, &orders);
            for (pos, gamma_coords) in coords.iter().enumerate() {
                let mut num = 0usize;
                for ((&ki, &ai), &ni) in kc.iter().zip(gamma_coords).zip(&orders) {
                    num = (num + (ki * ai) % ni * (den / ni)) % den;
                }
                chi[k * m + pos] = root_of_unity(num, den);
            }
        }
        let table = CharacterTable {
            sub,
            chi,
            n_chars: m,
        };
        table.verify()?;
        Ok(table)
    }

    fn verify(&self) -> Result<()> {
        let m = self.sub.order();
        for k in 0..m {
            for a in 0..m {
                if (self.value(k, a).norm() - 1.0).abs() > CHAR_MATCH_TOL {
                    return Err(GroupError::InvalidGroup {
                        reason: format!("character {k} is not unimodular at position {a}"),
                    });
                }
                for b in 0..m {
                    let ab = self.sub.mul_pos(a, b);
                    let lhs = self.value(k, ab);
                    let rhs = self.value(k, a) * self.value(k, b);
                    if (lhs - rhs).norm() > CHAR_MATCH_TOL {
                        return Err(GroupError::InvalidGroup {
                            reason: format!("character {k} fails the homomorphism law"),
                        });
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..m {
                    acc += self.value(i, a) * self.value(j, a).conj();
                }
                acc /= m as f64;
                let expect = if i == j { 1.0 } else { 0.0 };
                if (acc - expect).norm() > CHAR_MATCH_TOL {
                    return Err(GroupError::InvalidGroup {
                        reason: format!("characters {i} and {j} are not orthonormal"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.sub
    }

    pub fn n_chars(&self) -> usize {
        self.n_chars
    }

    /// Value of character `k` at subgroup position `pos`.
    pub fn value(&self, k: usize, pos: usize) -> Complex64 {
        self.chi[k * self.sub.order() + pos]
    }

    /// Value of character `k` at a group element (which must lie in the
    /// subgroup).
    pub fn value_at_element(&self, k: usize, element: usize) -> Option<Complex64> {
        self.sub.position_of(element).map(|p| self.value(k, p))
    }

    /// Index of the pointwise product of characters `a` and `b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let m = self.sub.order();
        'rows: for k in 0..self.n_chars {
            for pos in 0..m {
                let want = self.value(a, pos) * self.value(b, pos);
                if (self.value(k, pos) - want).norm() > CHAR_MATCH_TOL {
                    continue 'rows;
                }
            }
            return k;
        }
        unreachable!("character group is closed under products")
    }

    /// Row index matching the restriction of a character of the parent
    /// (given as this table's own row when `self` tabulates the full group)
    /// onto another subgroup's table.
    pub fn restrict_to(&self, k: usize, target: &CharacterTable) -> Option<usize> {
        'rows: for row in 0..target.n_chars() {
            for (pos, &e) in target.sub.elements().iter().enumerate() {
                let here = self.value_at_element(k, e)?;
                if (target.value(row, pos) - here).norm() > CHAR_MATCH_TOL {
                    continue 'rows;
                }
            }
            return Some(row);
        }
        None
    }
}

/// Greedy cyclic decomposition: repeatedly pick a maximal-order element
/// whose cyclic group meets the span of the chosen ones trivially.
fn cyclic_decomposition(sub: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let group = sub.group();
    let m = sub.order();
    let mut in_span = vec![false; group.order()];
    in_span[group.identity()] = true;
    let mut span_size = 1usize;
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    while span_size < m {
        let mut best: Option<(usize, usize)> = None;
        'candidates: for &e in sub.elements() {
            if e == group.identity() {
                continue;
            }
            let mut x = e;
            let mut ord = 1;
            while x != group.identity() {
                if in_span[x] {
                    continue 'candidates;
                }
                x = group.mul(x, e);
                ord += 1;
            }
            match best {
                Some((_, o)) if o >= ord => {}
                _ => best = Some((e, ord)),
            }
        }
        let (gen, ord) = best.expect("finite abelian groups decompose into cyclics");
        // Extend the span by all products span * gen^k.
        let old: Vec<usize> = (0..group.order()).filter(|&x| in_span[x]).collect();
        let mut p = gen;
        for _ in 1..ord {
            for &x in &old {
                in_span[group.mul(x, p)] = true;
            }
            p = group.mul(p, gen);
        }
        span_size *= ord;
        gens.push(gen);
        orders.push(ord);
    }
    (gens, orders)
}

/// Coordinates of every subgroup element with respect to the cyclic
/// decomposition, indexed by subgroup position.
fn coordinate_map(sub: &Subgroup, gens: &[usize], orders: &[usize]) -> Vec<Vec<usize>> {
    let group = sub.group();
    let m = sub.order();
    let mut coords = vec![Vec::new(); m];
    let total: usize = orders.iter().product::<usize>().max(1);
    debug_assert_eq!(total, m);
    for flat in 0..total {
        let digits = digits(flat, orders);
        let mut x = group.identity();
        for (&g, &a) in gens.iter().zip(&digits) {
            let mut p = x;
            for _ in 0..a {
                p = group.mul(p, g);
            }
            x = p;
        }
        let pos = sub.position_of(x).expect("decomposition stays in subgroup");
        coords[pos] = digits;
    }
    coords
}

fn digits(mut k: usize, orders: &[usize]) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        out[i] = k % orders[i];
        k /= orders[i];
    }
    out
}

/// `exp(2πi num/den)`, with the four quarter-turn values exact.
fn root_of_unity(num: usize, den: usize) -> Complex64 {
    debug_assert!(num < den);
    if (4 * num).is_multiple_of(den) {
        match 4 * num / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
    }
}

/// The annihilator `Λ⊥ = {ω ∈ Ĝ : ω|_Λ ≡ 1}` of an abelian subgroup,
/// together with the coset structure of `Ĝ/Λ⊥` and its canonical section
/// `Θ` (minimal character index per coset).
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilator {
    full_chars: CharacterTable,
    sub: Arc<Subgroup>,
    perp: Vec<usize>,
    theta: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    /// `members[r][j]` = character index of `Θ_r · ξ_j`.
    members: Vec<Vec<usize>>,
}

impl Annihilator {
    pub fn new(group: &Arc<Group>, sub: &Arc<Subgroup>) -> Result<Annihilator> {
        if !group.is_abelian() {
            return Err(GroupError::AbelianRequired);
        }
        if !Arc::ptr_eq(sub.group(), group) && sub.group().as_ref() != group.as_ref() {
            return Err(GroupError::StructureMismatch(
                "subgroup does not belong to the given group".into(),
            ));
        }
        let full = Arc::new(Subgroup::full(Arc::clone(group))?);
        let full_chars = CharacterTable::new(full)?;
        let n = group.order();
        let perp: Vec<usize> = (0..n)
            .filter(|&w| {
                sub.elements().iter().all(|&lam| {
                    (full_chars.value(w, lam) - Complex64::new(1.0, 0.0)).norm() < CHAR_MATCH_TOL
                })
            })
            .collect();
        if perp.len() * sub.order() != n {
            return Err(GroupError::InvalidGroup {
                reason: "annihilator size disagrees with |G|/|Λ|".into(),
            });
        }
        let mut seen = vec![false; n];
        let mut theta = Vec::new();
        let mut cosets = Vec::new();
        let mut members = Vec::new();
        for w in 0..n {
            if seen[w] {
                continue;
            }
            let row: Vec<usize> = perp.iter().map(|&xi| full_chars.product(w, xi)).collect();
            let mut coset = row.clone();
            coset.sort_unstable();
            for &c in &coset {
                seen[c] = true;
            }
            theta.push(w);
            cosets.push(coset);
            members.push(row);
        }
        Ok(Annihilator {
            full_chars,
            sub: Arc::clone(sub),
            perp,
            theta,
            cosets,
            members,
        })
    }

    /// Character table of the full group `Ĝ` (columns indexed by element).
    pub fn full_chars(&self) -> &CharacterTable {
        &self.full_chars
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.sub
    }

    /// Character indices of `Λ⊥`, ascending.
    pub fn perp(&self) -> &[usize] {
        &self.perp
    }

    /// Section `Θ`: representative character index of each `Ĝ/Λ⊥` coset.
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn n_cosets(&self) -> usize {
        self.theta.len()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// Character index of `Θ(coset) · ξ_j` where `ξ_j` is the `j`-th
    /// annihilator character.
    pub fn coset_member(&self, coset: usize, j: usize) -> usize {
        self.members[coset][j]
    }
}
