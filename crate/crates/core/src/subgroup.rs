//! Subgroup enumeration, quotients, and structural predicates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::vec;

use crate::group::{FiniteGroup, GroupElement};

/// A subgroup of a specific group, stored as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgroupHandle {
    group: u32,
    members: Vec<u16>,
}

impl SubgroupHandle {
    fn new(group: &FiniteGroup, mut members: Vec<u16>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubgroupHandle { group: group.group_id(), members }
    }

    /// Number of elements in the subgroup.
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[u16] {
        &self.members
    }

    /// True when `x` (an element index of the owning group) belongs here.
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&(x as u16)).is_ok()
    }

    /// Member elements of the owning group, in index order.
    pub fn elements<'g>(&self, g: &'g FiniteGroup) -> Vec<GroupElement> {
        self.assert_owner(g);
        self.members.iter().map(|&i| g.element(i as usize)).collect()
    }

    fn assert_owner(&self, g: &FiniteGroup) {
        assert!(
            self.group == g.group_id(),
            "subgroup of group #{} used with group #{}: cross-group element mixing",
            self.group,
            g.group_id()
        );
    }

    /// True if the subgroup is closed under conjugation by every group element.
    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.assert_owner(g);
        for z in 0..g.order() {
            for &m in &self.members {
                if !self.contains(g.conj_idx(z, m as usize)) {
                    return false;
                }
            }
        }
        true
    }

    /// True if all members commute with each other.
    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.assert_owner(g);
        for &a in &self.members {
            for &b in &self.members {
                if g.mul_idx(a as usize, b as usize) != g.mul_idx(b as usize, a as usize) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn closure_idx(g: &FiniteGroup, seed: &[usize]) -> Vec<u16> {
    let e = g.id_idx();
    let mut in_set = vec![false; g.order()];
    in_set[e] = true;
    let mut members = vec![e as u16];
    let mut frontier: Vec<usize> = Vec::new();
    for &s in seed {
        if !in_set[s] {
            in_set[s] = true;
            members.push(s as u16);
            frontier.push(s);
        }
    }
    // Product closure; inverses follow from finiteness.
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = members.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                let p = g.mul_idx(a as usize, b as usize);
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p as u16);
                    changed = true;
                }
            }
        }
    }
    let _ = frontier;
    members.sort_unstable();
    members
}

/// Smallest subgroup containing the given elements.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[GroupElement]) -> SubgroupHandle {
    let seed: Vec<usize> = gens
        .iter()
        .map(|&x| {
            // Ownership check via mul with identity.
            let _ = g.mul(x, g.identity());
            x.index()
        })
        .collect();
    SubgroupHandle::new(g, closure_idx(g, &seed))
}

/// All subgroups, found by closing cyclic subgroups under single-generator
/// extension until no new subgroup appears. Sorted by (order, members).
pub fn all_subgroups(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    let n = g.order();
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut work: Vec<Vec<u16>> = Vec::new();
    let trivial = closure_idx(g, &[]);
    seen.insert(trivial.clone());
    work.push(trivial);
    for a in 0..n {
        let c = closure_idx(g, &[a]);
        if seen.insert(c.clone()) {
            work.push(c);
        }
    }
    while let Some(cur) = work.pop() {
        if cur.len() == n {
            continue;
        }
        for a in 0..n {
            if cur.binary_search(&(a as u16)).is_ok() {
                continue;
            }
            let mut seed: Vec<usize> = cur.iter().map(|&x| x as usize).collect();
            seed.push(a);
            let c = closure_idx(g, &seed);
            if seen.insert(c.clone()) {
                work.push(c);
            }
        }
    }
    let mut out: Vec<SubgroupHandle> = seen
        .into_iter()
        .map(|members| SubgroupHandle { group: g.group_id(), members })
        .collect();
    out.sort_by_key(|s| (s.order(), s.members.clone()));
    out
}

/// The normal subgroups, sorted by (order, members).
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    all_subgroups(g).into_iter().filter(|s| s.is_normal(g)).collect()
}

/// Elements commuting with everything.
pub fn center(g: &FiniteGroup) -> SubgroupHandle {
    let n = g.order();
    let members: Vec<u16> = (0..n)
        .filter(|&z| (0..n).all(|a| g.mul_idx(z, a) == g.mul_idx(a, z)))
        .map(|z| z as u16)
        .collect();
    SubgroupHandle::new(g, members)
}

/// Subgroup generated by all commutators.
pub fn derived_subgroup(g: &FiniteGroup) -> SubgroupHandle {
    let n = g.order();
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            let c = g.comm_idx(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    SubgroupHandle::new(g, closure_idx(g, &comms))
}

/// Error from [`quotient`] when the subgroup is not normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotNormal;

impl core::fmt::Display for NotNormal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "quotient requires a normal subgroup")
    }
}

impl core::error::Error for NotNormal {}

/// Quotient group `G / N`, with cosets labeled by their smallest
/// representative. Fails if `N` is not normal.
pub fn quotient(g: &FiniteGroup, n: &SubgroupHandle) -> Result<FiniteGroup, NotNormal> {
    n.assert_owner(g);
    if !n.is_normal(g) {
        return Err(NotNormal);
    }
    let order = g.order();
    // Map each element to its coset representative (smallest member index).
    let mut rep = vec![usize::MAX; order];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..order {
        if rep[a] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = n.members().iter().map(|&m| g.mul_idx(a, m as usize)).collect();
        coset.sort_unstable();
        let r = coset[0];
        for &c in &coset {
            rep[c] = r;
        }
        reps.push(r);
    }
    reps.sort_unstable();
    let coset_index: BTreeMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let q = reps.len();
    let mut flat = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            let p = rep[g.mul_idx(a, b)];
            flat.push(coset_index[&p] as u16);
        }
    }
    let labels: Vec<String> = reps
        .iter()
        .map(|&r| match g.label(r) {
            Some(l) => format!("[{l}]"),
            None => format!("[{r}]"),
        })
        .collect();
    Ok(FiniteGroup::from_flat(flat, q, Some(labels)).expect("quotient table is a group"))
}

/// Looks for a normal abelian subgroup with cyclic quotient.
///
/// Returns the witness subgroup, preferring larger ones (so for a dihedral
/// group the full rotation subgroup is reported). Always succeeds on abelian
/// groups with the group itself as witness.
pub fn cyclic_extension_of_abelian(g: &FiniteGroup) -> Option<SubgroupHandle> {
    let mut normals = normal_subgroups(g);
    normals.sort_by_key(|s| (core::cmp::Reverse(s.order()), s.members.clone()));
    for n in normals {
        if !n.is_abelian(g) {
            continue;
        }
        match quotient(g, &n) {
            Ok(q) if q.is_cyclic() => return Some(n),
            _ => {}
        }
    }
    None
}
