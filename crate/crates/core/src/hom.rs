//! Homomorphisms from a surface group into a finite group.
//!
//! A [`SurfaceHom`] is determined by the images of the standard generators
//! `x1, y1, ..., xg, yg`; it is a valid homomorphism exactly when the surface
//! relator maps to the identity. Enumeration streams every such image tuple
//! for a given target, using commutator buckets so the relator constraint
//! prunes the last generator pair instead of being checked per candidate.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::group::{FiniteGroup, GroupElement};
use crate::subgroup;
use crate::twist::TwistAutomorphism;
use crate::word::SurfaceWord;

/// Rejected image tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomError {
    /// `2 * genus` images are required.
    WrongImageCount { expected: usize, got: usize },
    /// The image at `slot` belongs to a different group than the target.
    CrossGroupImage { slot: usize },
    /// The product of commutators of the image pairs is not the identity.
    RelatorNotSatisfied,
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HomError::WrongImageCount { expected, got } => {
                write!(f, "expected {expected} generator images, got {got}")
            }
            HomError::CrossGroupImage { slot } => {
                write!(f, "image in slot {slot} belongs to a different group")
            }
            HomError::RelatorNotSatisfied => {
                write!(f, "surface relator does not map to the identity")
            }
        }
    }
}

impl core::error::Error for HomError {}

/// Enumeration stopped because it would exceed the configured budget.
///
/// Callers must treat this as a refusal: no partial list is returned, so a
/// truncated enumeration can never masquerade as a complete one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded {
    /// The limit that would have been crossed.
    pub budget: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "enumeration exceeds the budget of {} homomorphisms", self.budget)
    }
}

impl core::error::Error for BudgetExceeded {}

/// A homomorphism from the genus-`g` surface group into a fixed finite group,
/// stored as the image indices of `x1, y1, ..., xg, yg`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceHom {
    genus: usize,
    group: u32,
    images: Vec<u16>,
}

impl SurfaceHom {
    /// Builds a hom after validating image count, ownership, and the relator.
    pub fn new(
        group: &FiniteGroup,
        genus: usize,
        images: &[GroupElement],
    ) -> Result<Self, HomError> {
        assert!(genus >= 1, "surface genus must be at least 1");
        if images.len() != 2 * genus {
            return Err(HomError::WrongImageCount { expected: 2 * genus, got: images.len() });
        }
        for (slot, &im) in images.iter().enumerate() {
            if im.tag() != group.group_id() {
                return Err(HomError::CrossGroupImage { slot });
            }
        }
        let idx: Vec<u16> = images.iter().map(|e| e.index() as u16).collect();
        if !relator_holds(group, &idx) {
            return Err(HomError::RelatorNotSatisfied);
        }
        Ok(SurfaceHom { genus, group: group.group_id(), images: idx })
    }

    /// Genus of the domain surface group.
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Image indices in generator order `x1, y1, ..., xg, yg`.
    pub fn indices(&self) -> &[u16] {
        &self.images
    }

    fn check(&self, group: &FiniteGroup) {
        assert!(
            self.group == group.group_id(),
            "hom built for group #{} used with group #{}",
            self.group,
            group.group_id()
        );
    }

    /// Image of the generator in `slot` (`2k` is `x_{k+1}`, `2k+1` is `y_{k+1}`).
    pub fn image(&self, group: &FiniteGroup, slot: usize) -> GroupElement {
        self.check(group);
        group.element(self.images[slot] as usize)
    }

    /// Image of `word` under generator substitution.
    ///
    /// The word's genus may be smaller than the hom's (its letters then only
    /// touch the leading generators) but never larger.
    pub fn evaluate(&self, group: &FiniteGroup, word: &SurfaceWord) -> GroupElement {
        self.check(group);
        assert!(
            word.genus() <= self.genus,
            "word of genus {} evaluated under a genus-{} hom",
            word.genus(),
            self.genus
        );
        let mut acc = group.id_idx();
        for &l in word.letters() {
            let slot = (l.unsigned_abs() as usize) - 1;
            let im = self.images[slot] as usize;
            let factor = if l > 0 { im } else { group.inv_idx(im) };
            acc = group.mul_idx(acc, factor);
        }
        group.element(acc)
    }

    /// True if the images generate the whole target group.
    pub fn is_surjective(&self, group: &FiniteGroup) -> bool {
        self.check(group);
        generates_all(group, &self.images)
    }

    /// The hom `w -> z * self(w) * z^-1`.
    pub fn conjugate(&self, group: &FiniteGroup, z: GroupElement) -> Self {
        self.check(group);
        let zi = z.index();
        let images = self.images.iter().map(|&im| group.conj_idx(zi, im as usize) as u16).collect();
        SurfaceHom { genus: self.genus, group: self.group, images }
    }

    /// Lexicographically least image tuple over all simultaneous conjugations.
    ///
    /// Two homs are conjugate iff their canonical classes are equal, and a
    /// hom's kernel depends only on its class, so orbit searches work on
    /// canonical forms throughout.
    pub fn canonical_class(&self, group: &FiniteGroup) -> Self {
        self.check(group);
        let mut images = self.images.clone();
        canonicalize(group, &mut images);
        SurfaceHom { genus: self.genus, group: self.group, images }
    }

    /// Precomposes with a twist: slot by slot, the new image is the twist's
    /// generator image evaluated under `self`.
    pub fn apply_twist(&self, group: &FiniteGroup, twist: &TwistAutomorphism) -> Self {
        self.check(group);
        assert_eq!(twist.genus(), self.genus, "twist and hom genus must agree");
        let images: Vec<u16> = twist
            .images()
            .iter()
            .map(|w| self.evaluate(group, w).index() as u16)
            .collect();
        debug_assert!(relator_holds(group, &images));
        SurfaceHom { genus: self.genus, group: self.group, images }
    }

    /// Renders as `x1=i y1=j ...` using element indices.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (slot, &im) in self.images.iter().enumerate() {
            if slot > 0 {
                out.push(' ');
            }
            let gen = if slot % 2 == 0 { 'x' } else { 'y' };
            let _ = write!(out, "{gen}{}={im}", slot / 2 + 1);
        }
        out
    }
}

/// True when the image indices generate the whole group.
pub(crate) fn generates_all(group: &FiniteGroup, images: &[u16]) -> bool {
    let seed: Vec<usize> = images.iter().map(|&i| i as usize).collect();
    subgroup::closure_idx(group, &seed).len() == group.order()
}

/// Surjectivity check memoized on the sorted set of distinct images.
fn surjective_memo(
    group: &FiniteGroup,
    hom: &SurfaceHom,
    memo: &mut alloc::collections::BTreeMap<Vec<u16>, bool>,
) -> bool {
    let mut key: Vec<u16> = hom.indices().to_vec();
    key.sort_unstable();
    key.dedup();
    *memo.entry(key).or_insert_with(|| generates_all(group, hom.indices()))
}

/// True when the product of commutators of consecutive image pairs is trivial.
fn relator_holds(group: &FiniteGroup, images: &[u16]) -> bool {
    let mut acc = group.id_idx();
    for pair in images.chunks_exact(2) {
        let c = group.comm_idx(pair[0] as usize, pair[1] as usize);
        acc = group.mul_idx(acc, c);
    }
    acc == group.id_idx()
}

/// Replaces `images` with its lexicographically least simultaneous conjugate.
pub(crate) fn canonicalize(group: &FiniteGroup, images: &mut Vec<u16>) {
    let n = group.order();
    let orig = images.clone();
    let mut buf = vec![0u16; orig.len()];
    for z in 0..n {
        for (s, &im) in orig.iter().enumerate() {
            buf[s] = group.conj_idx(z, im as usize) as u16;
        }
        if buf.as_slice() < images.as_slice() {
            images.copy_from_slice(&buf);
        }
    }
}

/// Streams every hom of the given genus into `group`, in a deterministic
/// order, calling `f` once per hom. Returns the number emitted.
///
/// `limit` bounds the number of homs; crossing it aborts the whole run with
/// [`BudgetExceeded`] rather than returning a silently truncated stream.
///
/// Genus 1 homs are the commuting pairs. For genus >= 2, pairs are bucketed
/// by commutator value so the final pair is drawn only from the bucket that
/// closes the relator; the work is `O(n^(2g-2) + emitted)` for order `n`.
pub fn for_each_hom<F: FnMut(&SurfaceHom)>(
    group: &FiniteGroup,
    genus: usize,
    limit: Option<u64>,
    mut f: F,
) -> Result<u64, BudgetExceeded> {
    assert!(genus >= 1, "surface genus must be at least 1");
    let n = group.order();
    let mut emitted = 0u64;

    if genus == 1 {
        for a in 0..n {
            for b in 0..n {
                if group.mul_idx(a, b) == group.mul_idx(b, a) {
                    if Some(emitted) == limit {
                        return Err(BudgetExceeded { budget: limit.unwrap() });
                    }
                    emitted += 1;
                    f(&SurfaceHom {
                        genus,
                        group: group.group_id(),
                        images: vec![a as u16, b as u16],
                    });
                }
            }
        }
        return Ok(emitted);
    }

    // buckets[v] holds every pair (a, b) with commutator a b a^-1 b^-1 = v.
    let mut buckets: Vec<Vec<(u16, u16)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            buckets[group.comm_idx(a, b)].push((a as u16, b as u16));
        }
    }

    let mut images = vec![0u16; 2 * genus];
    // DFS over the first genus-1 pairs; `acc` is the running product of
    // their commutators.
    fn rec<F: FnMut(&SurfaceHom)>(
        group: &FiniteGroup,
        genus: usize,
        buckets: &[Vec<(u16, u16)>],
        images: &mut Vec<u16>,
        pair: usize,
        acc: usize,
        limit: Option<u64>,
        emitted: &mut u64,
        f: &mut F,
    ) -> Result<(), BudgetExceeded> {
        if pair == genus - 1 {
            for &(c, d) in &buckets[group.inv_idx(acc)] {
                if Some(*emitted) == limit {
                    return Err(BudgetExceeded { budget: limit.unwrap() });
                }
                *emitted += 1;
                images[2 * pair] = c;
                images[2 * pair + 1] = d;
                f(&SurfaceHom { genus, group: group.group_id(), images: images.clone() });
            }
            return Ok(());
        }
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                images[2 * pair] = a as u16;
                images[2 * pair + 1] = b as u16;
                let next = group.mul_idx(acc, group.comm_idx(a, b));
                rec(group, genus, buckets, images, pair + 1, next, limit, emitted, f)?;
            }
        }
        Ok(())
    }
    rec(group, genus, &buckets, &mut images, 0, group.id_idx(), limit, &mut emitted, &mut f)?;
    Ok(emitted)
}

/// Collects every hom (optionally only the surjective ones) into a vector.
///
/// Surjectivity is memoized on the sorted set of distinct images, since many
/// tuples share a generating set.
pub fn enumerate_homs(
    group: &FiniteGroup,
    genus: usize,
    surjective_only: bool,
    limit: Option<u64>,
) -> Result<Vec<SurfaceHom>, BudgetExceeded> {
    let mut memo: alloc::collections::BTreeMap<Vec<u16>, bool> = alloc::collections::BTreeMap::new();
    let mut out = Vec::new();
    for_each_hom(group, genus, limit, |hom| {
        if surjective_only && !surjective_memo(group, hom, &mut memo) {
            return;
        }
        out.push(hom.clone());
    })?;
    Ok(out)
}

/// Enumerates canonical conjugation classes of homs, sorted by image tuple.
///
/// `limit` budgets the underlying raw enumeration, not the class count.
pub fn enumerate_hom_classes(
    group: &FiniteGroup,
    genus: usize,
    surjective_only: bool,
    limit: Option<u64>,
) -> Result<Vec<SurfaceHom>, BudgetExceeded> {
    let mut classes: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut memo: alloc::collections::BTreeMap<Vec<u16>, bool> = alloc::collections::BTreeMap::new();
    for_each_hom(group, genus, limit, |hom| {
        if surjective_only && !surjective_memo(group, hom, &mut memo) {
            return;
        }
        let mut images = hom.indices().to_vec();
        canonicalize(group, &mut images);
        classes.insert(images);
    })?;
    Ok(classes
        .into_iter()
        .map(|images| SurfaceHom { genus, group: group.group_id(), images })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use proptest::prelude::*;

    #[test]
    fn z2_genus_two_counts() {
        let g = construct::cyclic(2);
        let all = enumerate_homs(&g, 2, false, None).unwrap();
        assert_eq!(all.len(), 16);
        let onto = enumerate_homs(&g, 2, true, None).unwrap();
        assert_eq!(onto.len(), 15);
    }

    #[test]
    fn klein_genus_one_counts() {
        let g = construct::klein_four();
        let all = enumerate_homs(&g, 1, false, None).unwrap();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn s3_genus_one_matches_brute_force() {
        let g = construct::symmetric(3);
        let all = enumerate_homs(&g, 1, false, None).unwrap();
        // Independent count: scan all 36 pairs for commuting ones.
        let mut commuting = 0;
        for a in 0..6 {
            for b in 0..6 {
                let (a, b) = (g.element(a), g.element(b));
                if g.mul(a, b) == g.mul(b, a) {
                    commuting += 1;
                }
            }
        }
        assert_eq!(commuting, 18);
        assert_eq!(all.len(), 18);
    }

    #[test]
    fn s3_genus_one_canonical_classes() {
        let g = construct::symmetric(3);
        let classes = enumerate_hom_classes(&g, 1, false, None).unwrap();
        // Independent count: conjugation orbits of commuting pairs, by
        // orbit-enumeration over explicit pair sets.
        let mut seen: alloc::collections::BTreeSet<(usize, usize)> = Default::default();
        let mut orbits = 0;
        for a in 0..6 {
            for b in 0..6 {
                let (ea, eb) = (g.element(a), g.element(b));
                if g.mul(ea, eb) != g.mul(eb, ea) || seen.contains(&(a, b)) {
                    continue;
                }
                orbits += 1;
                for z in g.elements() {
                    let ca = g.mul(g.mul(z, ea), g.inv(z)).index();
                    let cb = g.mul(g.mul(z, eb), g.inv(z)).index();
                    seen.insert((ca, cb));
                }
            }
        }
        assert_eq!(orbits, 8);
        assert_eq!(classes.len(), 8);
    }

    #[test]
    fn s3_genus_two_matches_brute_force() {
        let g = construct::symmetric(3);
        let all = enumerate_homs(&g, 2, false, None).unwrap();
        // Independent count: check the relator on all 6^4 tuples directly.
        let mut expected = 0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    for d in 0..6 {
                        let (a, b) = (g.element(a), g.element(b));
                        let (c, d) = (g.element(c), g.element(d));
                        let r = g.mul(g.commutator(a, b), g.commutator(c, d));
                        if r == g.identity() {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(expected, 486);
        assert_eq!(all.len(), 486);
    }

    #[test]
    fn genus_three_abelian_counts() {
        let g = construct::cyclic(2);
        let all = enumerate_homs(&g, 3, false, None).unwrap();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn invalid_tuples_rejected() {
        let g = construct::symmetric(3);
        // A transposition and a 3-cycle never commute in S3.
        let t = g
            .elements()
            .find(|&e| g.element_order(e) == 2)
            .unwrap();
        let r = g
            .elements()
            .find(|&e| g.element_order(e) == 3)
            .unwrap();
        assert_eq!(SurfaceHom::new(&g, 1, &[t, r]), Err(HomError::RelatorNotSatisfied));
        assert_eq!(
            SurfaceHom::new(&g, 2, &[t, t]),
            Err(HomError::WrongImageCount { expected: 4, got: 2 })
        );
        let h = construct::cyclic(2);
        assert_eq!(
            SurfaceHom::new(&g, 1, &[h.element(0), h.element(1)]),
            Err(HomError::CrossGroupImage { slot: 0 })
        );
    }

    #[test]
    fn budget_refusal_is_total() {
        let g = construct::klein_four();
        let err = enumerate_homs(&g, 2, false, Some(10)).unwrap_err();
        assert_eq!(err, BudgetExceeded { budget: 10 });
        // The same enumeration fits a larger budget exactly.
        let all = enumerate_homs(&g, 2, false, Some(256)).unwrap();
        assert_eq!(all.len(), 256);
    }

    #[test]
    fn conjugates_share_canonical_class() {
        let g = construct::symmetric(3);
        let homs = enumerate_homs(&g, 1, false, None).unwrap();
        for hom in &homs {
            let canon = hom.canonical_class(&g);
            assert_eq!(canon.canonical_class(&g), canon);
            for z in g.elements() {
                assert_eq!(hom.conjugate(&g, z).canonical_class(&g), canon);
            }
        }
    }

    #[test]
    fn twists_preserve_relator_and_classes() {
        let g = construct::symmetric(3);
        let set = crate::twist::twist_set(2);
        let homs = enumerate_homs(&g, 2, false, None).unwrap();
        for hom in &homs {
            for t in set.twists() {
                let moved = hom.apply_twist(&g, t);
                assert_eq!(moved.evaluate(&g, &SurfaceWord::relator(2)), g.identity());
            }
        }
        // canonical_class(apply(t, hom)) depends only on canonical_class(hom).
        for hom in homs.iter().take(60) {
            let canon = hom.canonical_class(&g);
            for t in set.twists() {
                let a = hom.apply_twist(&g, t).canonical_class(&g);
                let b = canon.apply_twist(&g, t).canonical_class(&g);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn twist_then_inverse_fixes_class() {
        let g = construct::symmetric(3);
        let set = crate::twist::twist_set(2);
        let homs = enumerate_homs(&g, 2, false, None).unwrap();
        for hom in homs.iter().step_by(7) {
            let canon = hom.canonical_class(&g);
            for t in set.twists() {
                let back = set.by_name(t.inverse_name()).unwrap();
                let round = hom.apply_twist(&g, t).apply_twist(&g, back);
                assert_eq!(round.canonical_class(&g), canon);
            }
        }
    }

    #[test]
    fn render_format() {
        let g = construct::klein_four();
        let hom = SurfaceHom::new(&g, 1, &[g.element(1), g.element(2)]).unwrap();
        assert_eq!(hom.render(), "x1=1 y1=2");
    }

    #[test]
    fn central_tuple_is_its_own_class() {
        let g = construct::quaternion8();
        let z = crate::subgroup::center(&g);
        let members: Vec<_> = z.members().to_vec();
        assert_eq!(members.len(), 2);
        let c = g.element(members[1] as usize);
        let hom = SurfaceHom::new(&g, 1, &[c, c]).unwrap();
        assert_eq!(hom.canonical_class(&g), hom);
    }

    proptest! {
        #[test]
        fn evaluate_is_a_homomorphism(
            u in proptest::collection::vec((0usize..4, any::<bool>()), 0..10),
            v in proptest::collection::vec((0usize..4, any::<bool>()), 0..10),
            pick in 0usize..486,
        ) {
            let g = construct::symmetric(3);
            let homs = enumerate_homs(&g, 2, false, None).unwrap();
            let hom = &homs[pick % homs.len()];
            let build = |ls: &[(usize, bool)]| {
                let mut w = SurfaceWord::identity(2);
                for &(slot, inv) in ls {
                    w = w.concat(&SurfaceWord::letter(2, slot, inv));
                }
                w
            };
            let wu = build(&u);
            let wv = build(&v);
            let lhs = hom.evaluate(&g, &wu.concat(&wv));
            let rhs = g.mul(hom.evaluate(&g, &wu), hom.evaluate(&g, &wv));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
