use crate::error::{GroupError, Result};

/// Hard cap on the order of any group we materialize.
pub const MAX_GROUP_ORDER: usize = 4096;

/// Cap for Cayley-table groups; validation is O(n^3), so keep n small.
pub const MAX_CAYLEY_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    /// Direct product of cyclic groups `Z_{N_1} x ... x Z_{N_d}` under
    /// componentwise addition. Element index is the row-major mixed-radix
    /// encoding of the coordinate vector (first factor most significant).
    Product { orders: Vec<usize> },
    /// Explicit multiplication table, `table[a * n + b] = a * b`.
    Cayley { table: Vec<usize> },
}

/// A finite group with elements identified by indices `0..order()`.
///
/// Indices are stable for the lifetime of the value; the identity and all
/// inverses are located (and, for Cayley tables, the group laws verified)
/// at construction time.
#[derive(Debug, Clone, PartialEq)]
pub struct Group {
    kind: Kind,
    order: usize,
    identity: usize,
    inverses: Vec<usize>,
    abelian: bool,
}

impl Group {
    /// Builds `Z_{N_1} x ... x Z_{N_d}` with componentwise addition.
    pub fn product(orders: &[usize]) -> Result<Group> {
        if orders.is_empty() {
            return Err(GroupError::InvalidGroup {
                reason: "empty factor list".into(),
            });
        }
        if let Some(&z) = orders.iter().find(|&&n| n == 0) {
            let _ = z;
            return Err(GroupError::InvalidGroup {
                reason: "zero cyclic order".into(),
            });
        }
        let mut order: usize = 1;
        for &n in orders {
            order = order.checked_mul(n).ok_or(GroupError::SizeLimit {
                size: usize::MAX,
                cap: MAX_GROUP_ORDER,
            })?;
            if order > MAX_GROUP_ORDER {
                return Err(GroupError::SizeLimit {
                    size: order,
                    cap: MAX_GROUP_ORDER,
                });
            }
        }
        let kind = Kind::Product {
            orders: orders.to_vec(),
        };
        let mut g = Group {
            kind,
            order,
            identity: 0,
            inverses: Vec::new(),
            abelian: true,
        };
        g.inverses = (0..order).map(|a| g.raw_inv(a)).collect();
        Ok(g)
    }

    /// Builds a group from an explicit `n x n` multiplication table.
    ///
    /// The table is validated exhaustively: closure, associativity, a
    /// two-sided identity, and inverses. Violations report a witness.
    pub fn cayley(table: &[Vec<usize>]) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidGroup {
                reason: "empty Cayley table".into(),
            });
        }
        if n > MAX_CAYLEY_ORDER {
            return Err(GroupError::SizeLimit {
                size: n,
                cap: MAX_CAYLEY_ORDER,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidGroup {
                    reason: format!("row {i} has length {} instead of {n}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::InvalidGroup {
                        reason: format!("entry ({i},{j}) = {v} out of range"),
                    });
                }
                flat.push(v);
            }
        }
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupError::InvalidGroup {
                            reason: format!("associativity fails on triple ({a},{b},{c})"),
                        });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| GroupError::InvalidGroup {
                reason: "no two-sided identity".into(),
            })?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| GroupError::InvalidGroup {
                    reason: format!("element {a} has no inverse"),
                })?;
            inverses.push(inv);
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| mul(a, b) == mul(b, a)));
        Ok(Group {
            kind: Kind::Cayley { table: flat },
            order: n,
            identity,
            inverses,
            abelian,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Cyclic factor orders for product groups, `None` for Cayley groups.
    pub fn factor_orders(&self) -> Option<&[usize]> {
        match &self.kind {
            Kind::Product { orders } => Some(orders),
            Kind::Cayley { .. } => None,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        match &self.kind {
            Kind::Product { orders } => {
                // Walk factors least-significant first, accumulating the
                // row-major encoding via suffix strides.
                let mut out = 0;
                let mut stride = 1;
                let (mut ra, mut rb) = (a, b);
                for &n in orders.iter().rev() {
                    out += (ra % n + rb % n) % n * stride;
                    stride *= n;
                    ra /= n;
                    rb /= n;
                }
                out
            }
            Kind::Cayley { table } => table[a * self.order + b],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a < self.order);
        self.inverses[a]
    }

    fn raw_inv(&self, a: usize) -> usize {
        match &self.kind {
            Kind::Product { orders } => {
                let mut out = 0;
                let mut stride = 1;
                let mut r = a;
                for &n in orders.iter().rev() {
                    out += (n - r % n) % n * stride;
                    stride *= n;
                    r /= n;
                }
                out
            }
            Kind::Cayley { .. } => unreachable!("cayley inverses precomputed"),
        }
    }

    /// Multiplicative order of element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Decodes a product-group element index into its coordinate vector.
    pub fn coords(&self, a: usize) -> Option<Vec<usize>> {
        match &self.kind {
            Kind::Product { orders } => {
                let mut r = a;
                let mut out = vec![0; orders.len()];
                for i in (0..orders.len()).rev() {
                    out[i] = r % orders[i];
                    r /= orders[i];
                }
                Some(out)
            }
            Kind::Cayley { .. } => None,
        }
    }

    /// Encodes a coordinate vector into a product-group element index.
    pub fn from_coords(&self, coords: &[usize]) -> Option<usize> {
        match &self.kind {
            Kind::Product { orders } => {
                if coords.len() != orders.len() {
                    return None;
                }
                let mut out = 0;
                for (c, n) in coords.iter().zip(orders) {
                    out = out * n + c % n;
                }
                Some(out)
            }
            Kind::Cayley { .. } => None,
        }
    }

    /// The direct product `G x Z_n`, with `Z_n` appended as the least
    /// significant factor: element `(g, k)` has index `g * n + k`.
    pub fn product_with_cyclic(&self, n: usize) -> Result<Group> {
        if n == 0 {
            return Err(GroupError::InvalidGroup {
                reason: "zero cyclic order".into(),
            });
        }
        match &self.kind {
            Kind::Product { orders } => {
                let mut orders = orders.clone();
                orders.push(n);
                Group::product(&orders)
            }
            Kind::Cayley { .. } => {
                let m = self.order * n;
                if m > MAX_CAYLEY_ORDER {
                    return Err(GroupError::SizeLimit {
                        size: m,
                        cap: MAX_CAYLEY_ORDER,
                    });
                }
                let mut table = vec![vec![0usize; m]; m];
                for g in 0..self.order {
                    for k in 0..n {
                        for h in 0..self.order {
                            for l in 0..n {
                                table[g * n + k][h * n + l] =
                                    self.mul(g, h) * n + (k + l) % n;
                            }
                        }
                    }
                }
                Group::cayley(&table)
            }
        }
    }
}

/// The symmetric group S3 as a Cayley table, built from permutation
/// composition. Useful as the smallest non-abelian test bed.
pub fn symmetric_group_s3() -> Group {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [0, 2, 1],
        [2, 1, 0],
        [1, 0, 2],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let mut table = vec![vec![0usize; 6]; 6];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let r = compose(p, q);
            let k = perms.iter().position(|s| *s == r).expect("closed");
            table[i][j] = k;
        }
    }
    Group::cayley(&table).expect("S3 table is a valid group")
}
