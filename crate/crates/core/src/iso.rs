//! Isomorphism testing and automorphism enumeration.
//!
//! Isomorphisms are searched by mapping a small generating set and extending
//! over products; a cheap structural fingerprint rules out most non-isomorphic
//! pairs before any search starts.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::vec;

use crate::group::FiniteGroup;
use crate::subgroup::{center, closure_idx, derived_subgroup};

/// Cheap isomorphism invariants. Equal fingerprints are necessary but not
/// sufficient for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted (element order, multiplicity) pairs.
    pub order_profile: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelian: bool,
}

impl core::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "o{}", self.order)?;
        f.write_str("-p")?;
        for (i, (ord, count)) in self.order_profile.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{ord}^{count}")?;
        }
        write!(
            f,
            "-z{}-d{}-{}",
            self.center_order,
            self.derived_order,
            if self.abelian { "ab" } else { "nab" }
        )
    }
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..g.order() {
        *counts.entry(g.order_idx(x)).or_insert(0) += 1;
    }
    Fingerprint {
        order: g.order(),
        order_profile: counts.into_iter().collect(),
        center_order: center(g).order(),
        derived_order: derived_subgroup(g).order(),
        abelian: g.is_abelian(),
    }
}

/// Rendered fingerprint, convenient for report fields.
pub fn fingerprint_string(g: &FiniteGroup) -> String {
    alloc::format!("{}", fingerprint(g))
}

/// A generating set of minimal greedy size: each step adds the element whose
/// inclusion grows the generated subgroup the most (ties to smallest index).
pub fn generating_set(g: &FiniteGroup) -> Vec<u16> {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = closure_idx(g, &gens);
    while cur.len() < n {
        let mut best: Option<(usize, usize)> = None;
        for x in 0..n {
            if cur.binary_search(&(x as u16)).is_ok() {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = closure_idx(g, &trial).len();
            if best.map_or(true, |(bs, _)| size > bs) {
                best = Some((size, x));
            }
        }
        let (_, x) = best.expect("group not exhausted but no element extends");
        gens.push(x);
        cur = closure_idx(g, &gens);
    }
    gens.into_iter().map(|x| x as u16).collect()
}

/// Extends `gens[i] -> imgs[i]` over the subgroup generated by `gens`.
///
/// Returns the partial map (usize::MAX outside the subgroup) if the extension
/// is well-defined and injective, together with the subgroup size.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[u16],
    imgs: &[u16],
) -> Option<(Vec<usize>, usize)> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; h.order()];
    map[g.id_idx()] = h.id_idx();
    used[h.id_idx()] = true;
    let mut queue = vec![g.id_idx()];
    let mut head = 0;
    let mut size = 1;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let ix = map[x];
        for (&gen, &img) in gens.iter().zip(imgs) {
            let y = g.mul_idx(x, gen as usize);
            let iy = h.mul_idx(ix, img as usize);
            if map[y] == usize::MAX {
                if used[iy] {
                    return None;
                }
                map[y] = iy;
                used[iy] = true;
                queue.push(y);
                size += 1;
            } else if map[y] != iy {
                return None;
            }
        }
    }
    Some((map, size))
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[u16],
    by_order: &BTreeMap<usize, Vec<u16>>,
    imgs: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
    limit: usize,
) {
    if imgs.len() == gens.len() {
        if let Some((map, size)) = extend(g, h, gens, imgs) {
            debug_assert_eq!(size, g.order());
            out.push(map.into_iter().map(|x| x as u16).collect());
        }
        return;
    }
    let want = g.order_idx(gens[imgs.len()] as usize);
    let Some(candidates) = by_order.get(&want) else { return };
    for &c in candidates {
        imgs.push(c);
        if extend(g, h, gens, imgs).is_some() {
            search(g, h, gens, by_order, imgs, out, limit);
        }
        imgs.pop();
        if out.len() >= limit {
            return;
        }
    }
}

fn isomorphisms(g: &FiniteGroup, h: &FiniteGroup, limit: usize) -> Vec<Vec<u16>> {
    if g.order() != h.order() {
        return Vec::new();
    }
    let mut by_order: BTreeMap<usize, Vec<u16>> = BTreeMap::new();
    for x in 0..h.order() {
        by_order.entry(h.order_idx(x)).or_default().push(x as u16);
    }
    let gens = generating_set(g);
    let mut out = Vec::new();
    search(g, h, &gens, &by_order, &mut Vec::new(), &mut out, limit);
    out.sort_unstable();
    out
}

/// True when the two groups are isomorphic.
pub fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if fingerprint(g) != fingerprint(h) {
        return false;
    }
    !isomorphisms(g, h, 1).is_empty()
}

/// All automorphisms as index maps, sorted. The identity map is always first.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<u16>> {
    isomorphisms(g, g, usize::MAX)
}

/// `compose(outer, inner)[x] = outer[inner[x]]`.
pub(crate) fn compose_maps(outer: &[u16], inner: &[u16]) -> Vec<u16> {
    inner.iter().map(|&x| outer[x as usize]).collect()
}

pub(crate) fn identity_map(n: usize) -> Vec<u16> {
    (0..n as u16).collect()
}

/// `f` iterated `k` times.
pub(crate) fn map_pow(f: &[u16], k: usize) -> Vec<u16> {
    let mut acc = identity_map(f.len());
    for _ in 0..k {
        acc = compose_maps(f, &acc);
    }
    acc
}
