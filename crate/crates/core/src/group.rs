//! Multiplication-table representation of a finite group.
//!
//! A [`FiniteGroup`] owns an `n x n` table over element indices `0..n` and is
//! only constructed after exhaustive validation: the table must be a Latin
//! square, associative, possess a two-sided identity, and give every element
//! a two-sided inverse. All later algorithms may therefore assume group
//! axioms without re-checking them.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::vec;
use core::fmt;
use core::sync::atomic::{AtomicU32, Ordering};

/// Largest table order accepted by [`FiniteGroup::from_table`].
///
/// Exhaustive associativity validation is cubic in the order, so tables are
/// capped; larger groups are handled through coordinate arithmetic instead
/// (see the `heisenberg` module).
pub const MAX_TABLE_ORDER: usize = 4096;

static NEXT_GROUP_ID: AtomicU32 = AtomicU32::new(1);

/// Problems detected while validating a multiplication table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildError {
    /// Entry out of range, or a row/column repeats a value, so the table is
    /// not a permutation in each line.
    NotClosed { row: usize, col: usize },
    /// `(a * b) * c != a * (b * c)` for the named indices.
    NotAssociative { a: usize, b: usize, c: usize },
    /// No element acts as a two-sided identity.
    NoIdentity,
    /// The named element has no two-sided inverse.
    NoInverse { element: usize },
    /// Empty table or order above [`MAX_TABLE_ORDER`].
    BadOrder { order: usize },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BuildError::NotClosed { row, col } => {
                write!(f, "table is not a Latin square at row {row}, col {col}")
            }
            BuildError::NotAssociative { a, b, c } => {
                write!(f, "associativity fails on ({a}, {b}, {c})")
            }
            BuildError::NoIdentity => write!(f, "no two-sided identity element"),
            BuildError::NoInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            BuildError::BadOrder { order } => write!(f, "unsupported table order {order}"),
        }
    }
}

impl core::error::Error for BuildError {}

/// An element of a specific [`FiniteGroup`], carrying the owning group's id so
/// elements of different groups cannot be mixed silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    group: u32,
    index: u16,
}

impl GroupElement {
    /// Index of the element in the owning group's table.
    pub fn index(self) -> usize {
        self.index as usize
    }

    /// Id of the owning group, for cross-group validation in other modules.
    pub(crate) fn tag(self) -> u32 {
        self.group
    }
}

/// A finite group given by its validated multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    id: u32,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    identity: u16,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `table` as a group multiplication table and wraps it.
    ///
    /// `table[a][b]` is the index of the product `a * b`. Validation is
    /// exhaustive: Latin square, associativity over all triples, a two-sided
    /// identity, and a two-sided inverse for every element.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, BuildError> {
        let n = table.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(BuildError::BadOrder { order: n });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(BuildError::NotClosed { row: r, col: row.len().min(n) });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(BuildError::NotClosed { row: r, col: c });
                }
                flat.push(v as u16);
            }
        }
        Self::from_flat(flat, n, None)
    }

    /// Internal constructor from a row-major flat table.
    pub(crate) fn from_flat(
        flat: Vec<u16>,
        n: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self, BuildError> {
        debug_assert_eq!(flat.len(), n * n);
        // Latin square: each row and column is a permutation of 0..n.
        let mut seen_row = vec![u16::MAX; n];
        let mut seen_col = vec![u16::MAX; n];
        for a in 0..n {
            for s in seen_row.iter_mut() {
                *s = u16::MAX;
            }
            for b in 0..n {
                let v = flat[a * n + b] as usize;
                if seen_row[v] != u16::MAX {
                    return Err(BuildError::NotClosed { row: a, col: b });
                }
                seen_row[v] = b as u16;
            }
        }
        for b in 0..n {
            for s in seen_col.iter_mut() {
                *s = u16::MAX;
            }
            for a in 0..n {
                let v = flat[a * n + b] as usize;
                if seen_col[v] != u16::MAX {
                    return Err(BuildError::NotClosed { row: a, col: b });
                }
                seen_col[v] = a as u16;
            }
        }
        // Two-sided identity.
        let mut identity = None;
        'outer: for e in 0..n {
            for a in 0..n {
                if flat[e * n + a] != a as u16 || flat[a * n + e] != a as u16 {
                    continue 'outer;
                }
            }
            identity = Some(e as u16);
            break;
        }
        let identity = identity.ok_or(BuildError::NoIdentity)?;
        // Associativity over all triples.
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b] as usize;
                for c in 0..n {
                    let bc = flat[b * n + c] as usize;
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(BuildError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // Two-sided inverses.
        let mut inverse = vec![0u16; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if flat[a * n + b] == identity && flat[b * n + a] == identity {
                    found = Some(b as u16);
                    break;
                }
            }
            inverse[a] = found.ok_or(BuildError::NoInverse { element: a })?;
        }
        if let Some(ref l) = labels {
            assert_eq!(l.len(), n, "label count must match the group order");
        }
        Ok(FiniteGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            order: n,
            table: flat,
            inverse,
            identity,
            labels,
        })
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Stable id distinguishing this group instance from others in the process.
    pub fn group_id(&self) -> u32 {
        self.id
    }

    /// The element with table index `i`. Panics if out of range.
    pub fn element(&self, i: usize) -> GroupElement {
        assert!(i < self.order, "element index {i} out of range for order {}", self.order);
        GroupElement { group: self.id, index: i as u16 }
    }

    /// Iterator over all elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| GroupElement { group: self.id, index: i as u16 })
    }

    /// The identity element.
    pub fn identity(&self) -> GroupElement {
        GroupElement { group: self.id, index: self.identity }
    }

    fn check(&self, x: GroupElement) -> usize {
        assert!(
            x.group == self.id,
            "element of group #{} used with group #{}: cross-group element mixing",
            x.group,
            self.id
        );
        x.index as usize
    }

    /// Product `a * b`. Panics if either element belongs to another group.
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let (a, b) = (self.check(a), self.check(b));
        GroupElement { group: self.id, index: self.table[a * self.order + b] }
    }

    /// Inverse of `a`.
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        let a = self.check(a);
        GroupElement { group: self.id, index: self.inverse[a] }
    }

    /// Commutator `a b a^-1 b^-1`.
    pub fn commutator(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let (ia, ib) = (self.check(a), self.check(b));
        GroupElement { group: self.id, index: self.comm_idx(ia, ib) as u16 }
    }

    /// Multiplicative order of `a`.
    pub fn element_order(&self, a: GroupElement) -> usize {
        let a = self.check(a);
        self.order_idx(a)
    }

    /// True if every pair of elements commutes.
    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.table[a * n + b] != self.table[b * n + a] {
                    return false;
                }
            }
        }
        true
    }

    /// True if some element generates the whole group.
    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.order_idx(a) == self.order)
    }

    /// Optional display label of element `i`.
    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[i].as_str())
    }

    /// All labels, if the group carries them.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Replaces the label set. `labels` must have one entry per element.
    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.order, "label count must match the group order");
        self.labels = Some(labels);
    }

    /// Raw row-major table, exposed for serialization.
    pub fn table(&self) -> &[u16] {
        &self.table
    }

    // Index-level operations used by the hot loops in this crate.

    #[inline]
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub(crate) fn id_idx(&self) -> usize {
        self.identity as usize
    }

    #[inline]
    pub(crate) fn comm_idx(&self, a: usize, b: usize) -> usize {
        let ab = self.mul_idx(a, b);
        let ai = self.inv_idx(a);
        let bi = self.inv_idx(b);
        self.mul_idx(self.mul_idx(ab, ai), bi)
    }

    pub(crate) fn order_idx(&self, a: usize) -> usize {
        let e = self.id_idx();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul_idx(x, a);
            k += 1;
        }
        k
    }

    /// Conjugate `z a z^-1` at index level.
    #[inline]
    pub(crate) fn conj_idx(&self, z: usize, a: usize) -> usize {
        self.mul_idx(self.mul_idx(z, a), self.inv_idx(z))
    }
}
