use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::group::Group;

/// An abelian subgroup of a [`Group`], stored as a sorted element-index
/// list. Abelianness is checked pairwise at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgroup {
    group: Arc<Group>,
    elements: Vec<usize>,
    /// `position[e] = Some(i)` iff `elements[i] == e`.
    position: Vec<Option<usize>>,
}

impl Subgroup {
    /// Stride sublattice of a product group: factor `i` contributes the
    /// multiples of `strides[i]`, which must divide the factor order.
    pub fn from_strides(group: Arc<Group>, strides: &[usize]) -> Result<Subgroup> {
        let orders = group
            .factor_orders()
            .ok_or_else(|| {
                GroupError::StructureMismatch(
                    "stride subgroups are only defined for product groups".into(),
                )
            })?
            .to_vec();
        if strides.len() != orders.len() {
            return Err(GroupError::StructureMismatch(format!(
                "{} strides given for {} factors",
                strides.len(),
                orders.len()
            )));
        }
        for (i, (&s, &n)) in strides.iter().zip(&orders).enumerate() {
            if s == 0 || n % s != 0 {
                return Err(GroupError::InvalidStride {
                    factor: i,
                    stride: s,
                    order: n,
                });
            }
        }
        let mut elements = Vec::new();
        let mut coords = vec![0usize; orders.len()];
        loop {
            elements.push(group.from_coords(&coords).expect("product group"));
            // Odometer over the sublattice coordinates.
            let mut i = orders.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                coords[i] += strides[i];
                if coords[i] < orders[i] {
                    break;
                }
                coords[i] = 0;
            }
            if coords.iter().all(|&c| c == 0) {
                break;
            }
        }
        elements.sort_unstable();
        Self::from_sorted_elements(group, elements)
    }

    /// The subgroup generated by the given elements (closure under
    /// multiplication and inverse).
    pub fn from_generators(group: Arc<Group>, generators: &[usize]) -> Result<Subgroup> {
        for &g in generators {
            if g >= group.order() {
                return Err(GroupError::InvalidElement {
                    index: g,
                    order: group.order(),
                });
            }
        }
        let mut member = vec![false; group.order()];
        member[group.identity()] = true;
        let mut frontier = vec![group.identity()];
        for &g in generators {
            if !member[g] {
                member[g] = true;
                frontier.push(g);
            }
        }
        // Breadth-first closure: multiply every known member by every
        // generator until nothing new appears.
        let mut i = 0;
        while i < frontier.len() {
            let x = frontier[i];
            i += 1;
            for &g in generators {
                for y in [group.mul(x, g), group.mul(g, x), group.inv(x)] {
                    if !member[y] {
                        member[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        let elements: Vec<usize> = (0..group.order()).filter(|&e| member[e]).collect();
        Self::from_sorted_elements(group, elements)
    }

    /// Rebuilds a subgroup from an explicit element list; the list must be
    /// closed. Used both directly and as the idempotent re-entry point.
    pub fn from_elements(group: Arc<Group>, elements: &[usize]) -> Result<Subgroup> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Self::from_sorted_elements(group, sorted)
    }

    /// The whole group as a subgroup of itself (requires abelian `group`).
    pub fn full(group: Arc<Group>) -> Result<Subgroup> {
        let all: Vec<usize> = (0..group.order()).collect();
        Self::from_sorted_elements(group, all)
    }

    /// The trivial subgroup `{e}`.
    pub fn trivial(group: Arc<Group>) -> Subgroup {
        let elements = vec![group.identity()];
        Self::from_sorted_elements(group, elements).expect("trivial subgroup is abelian")
    }

    fn from_sorted_elements(group: Arc<Group>, elements: Vec<usize>) -> Result<Subgroup> {
        // Closure and identity.
        let mut position = vec![None; group.order()];
        for (i, &e) in elements.iter().enumerate() {
            if e >= group.order() {
                return Err(GroupError::InvalidElement {
                    index: e,
                    order: group.order(),
                });
            }
            position[e] = Some(i);
        }
        if position[group.identity()].is_none() {
            return Err(GroupError::InvalidGroup {
                reason: "subgroup does not contain the identity".into(),
            });
        }
        for &a in &elements {
            if position[group.inv(a)].is_none() {
                return Err(GroupError::InvalidGroup {
                    reason: format!("subgroup not closed under inverse of {a}"),
                });
            }
            for &b in &elements {
                if position[group.mul(a, b)].is_none() {
                    return Err(GroupError::InvalidGroup {
                        reason: format!("subgroup not closed under product {a}*{b}"),
                    });
                }
            }
        }
        // Abelian check with witness.
        for &a in &elements {
            for &b in &elements {
                if group.mul(a, b) != group.mul(b, a) {
                    return Err(GroupError::NotAbelian { a, b });
                }
            }
        }
        Ok(Subgroup {
            group,
            elements,
            position,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in sorted index order; this is the canonical enumeration
    /// order used by cosets, characters, and matrix elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn element(&self, pos: usize) -> usize {
        self.elements[pos]
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.position.len() && self.position[e].is_some()
    }

    /// Position of a group element within the sorted subgroup list.
    pub fn position_of(&self, e: usize) -> Option<usize> {
        self.position.get(e).copied().flatten()
    }

    /// Position of the product `elements[a] * elements[b]`.
    pub fn mul_pos(&self, a: usize, b: usize) -> usize {
        let prod = self.group.mul(self.elements[a], self.elements[b]);
        self.position_of(prod).expect("subgroup closed")
    }

    /// Position of the inverse of `elements[a]`.
    pub fn inv_pos(&self, a: usize) -> usize {
        self.position_of(self.group.inv(self.elements[a]))
            .expect("subgroup closed")
    }
}
