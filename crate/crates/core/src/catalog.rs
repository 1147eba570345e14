//! A complete catalog of finite groups of small order, up to isomorphism.
//!
//! Every group of order below 32 is solvable, hence has a normal subgroup of
//! prime index. The catalog is therefore built bottom-up: each group of order
//! `n` arises as an extension of some already-cataloged `N` of order `n/p` by
//! a cyclic group of prime order `p`. Extensions are parameterized by an
//! automorphism `α` of `N` and an element `z` with `α(z) = z` and `α^p`
//! equal to conjugation by `z`; these two conditions are checked up front, so
//! a candidate table that later fails group validation is a bug, not data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::construct::cyclic;
use crate::group::FiniteGroup;
use crate::iso::{automorphisms, fingerprint, isomorphic, map_pow, Fingerprint};
use crate::subgroup::{cyclic_extension_of_abelian, SubgroupHandle};

/// One isomorphism class in the catalog.
pub struct CatalogEntry {
    pub group: FiniteGroup,
    pub order: usize,
    /// Index among the classes of the same order (sort is deterministic).
    pub position: usize,
    pub fingerprint: Fingerprint,
    /// How the representative was first constructed, e.g.
    /// `"C2 over 12#3 aut5 z0"`.
    pub provenance: String,
}

impl CatalogEntry {
    /// Short stable name like `"24#14"`.
    pub fn name(&self) -> String {
        format!("{}#{}", self.order, self.position)
    }
}

fn prime_divisors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            out.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

fn inner_map(g: &FiniteGroup, z: usize) -> Vec<u16> {
    (0..g.order()).map(|x| g.conj_idx(z, x) as u16).collect()
}

/// Extension of `n` by a cyclic group of order `p`, twisting by `alpha` with
/// `t^p = z`. The caller must have checked `alpha(z) = z` and
/// `alpha^p = conj(z)`; the resulting table is validated and a failure
/// panics.
fn cyclic_extension(n: &FiniteGroup, p: usize, alpha: &[u16], z: usize) -> FiniteGroup {
    let m = n.order();
    let total = m * p;
    let mut alpha_pows: Vec<Vec<u16>> = Vec::with_capacity(p);
    alpha_pows.push(crate::iso::identity_map(m));
    for i in 1..p {
        alpha_pows.push(crate::iso::compose_maps(alpha, &alpha_pows[i - 1]));
    }
    let mut flat = vec![0u16; total * total];
    for i in 0..p {
        for a in 0..m {
            let row = i * m + a;
            for j in 0..p {
                for b in 0..m {
                    let col = j * m + b;
                    let mut part = n.mul_idx(a, alpha_pows[i][b] as usize);
                    if i + j >= p {
                        part = n.mul_idx(part, z);
                    }
                    flat[row * total + col] = (((i + j) % p) * m + part) as u16;
                }
            }
        }
    }
    FiniteGroup::from_flat(flat, total, None).expect("compatible cyclic extension is a group")
}

/// Builds all isomorphism classes of groups of order `1..=max_order`.
///
/// Entries are sorted by order, then by fingerprint, then by multiplication
/// table, so positions are stable across runs.
pub fn build_catalog(max_order: usize) -> Vec<CatalogEntry> {
    assert!(max_order >= 1);
    assert!(max_order < 60, "completeness argument needs solvable orders");
    let mut by_order: Vec<Vec<(FiniteGroup, Fingerprint, String)>> = Vec::new();
    by_order.resize_with(max_order + 1, Vec::new);
    if max_order >= 1 {
        by_order[1].push((cyclic(1), fingerprint(&cyclic(1)), String::from("trivial")));
    }
    for order in 2..=max_order {
        let mut found: Vec<(FiniteGroup, Fingerprint, String)> = Vec::new();
        for p in prime_divisors(order) {
            let m = order / p;
            for pos in 0..by_order[m].len() {
                let auts = automorphisms(&by_order[m][pos].0);
                for (ai, alpha) in auts.iter().enumerate() {
                    let alpha_p = map_pow(alpha, p);
                    for z in 0..m {
                        let parent = &by_order[m][pos].0;
                        if alpha[z] as usize != z || alpha_p != inner_map(parent, z) {
                            continue;
                        }
                        let g = cyclic_extension(parent, p, alpha, z);
                        let fp = fingerprint(&g);
                        let known = found
                            .iter()
                            .any(|(h, hfp, _)| *hfp == fp && isomorphic(h, &g));
                        if !known {
                            let provenance = format!("C{p} over {m}#{pos} aut{ai} z{z}");
                            found.push((g, fp, provenance));
                        }
                    }
                }
            }
        }
        found.sort_by(|(ga, fa, _), (gb, fb, _)| {
            fa.cmp(fb).then_with(|| ga.table().cmp(gb.table()))
        });
        by_order[order] = found;
    }
    let mut out = Vec::new();
    for (order, level) in by_order.into_iter().enumerate().skip(1) {
        for (position, (group, fingerprint, provenance)) in level.into_iter().enumerate() {
            out.push(CatalogEntry { group, order, position, fingerprint, provenance });
        }
    }
    out
}

/// Class counts per order.
pub fn group_counts(catalog: &[CatalogEntry]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for e in catalog {
        *counts.entry(e.order).or_insert(0) += 1;
    }
    counts
}

/// Catalog split by whether a group is an extension of an abelian group by a
/// cyclic group.
pub struct CeaClassification<'a> {
    /// Entries admitting a normal abelian subgroup with cyclic quotient,
    /// with the witness subgroup.
    pub extensions: Vec<(&'a CatalogEntry, SubgroupHandle)>,
    /// Entries admitting none.
    pub exceptions: Vec<&'a CatalogEntry>,
}

pub fn classify_cyclic_extensions(catalog: &[CatalogEntry]) -> CeaClassification<'_> {
    let mut extensions = Vec::new();
    let mut exceptions = Vec::new();
    for e in catalog {
        match cyclic_extension_of_abelian(&e.group) {
            Some(witness) => extensions.push((e, witness)),
            None => exceptions.push(e),
        }
    }
    CeaClassification { extensions, exceptions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{dihedral, quaternion8, sl2_z3, symmetric};

    /// Classes per order 2..=31 from the classical census of small groups.
    const KNOWN_COUNTS: [usize; 30] = [
        1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1,
    ];

    #[test]
    fn counts_match_census() {
        let catalog = build_catalog(31);
        let counts = group_counts(&catalog);
        for (i, &expected) in KNOWN_COUNTS.iter().enumerate() {
            let order = i + 2;
            assert_eq!(counts[&order], expected, "order {order}");
        }
        assert_eq!(catalog.len(), 93); // trivial group plus 92 classes
    }

    #[test]
    fn entries_are_consistent() {
        let catalog = build_catalog(16);
        for e in &catalog {
            assert_eq!(e.group.order(), e.order);
            assert_eq!(fingerprint(&e.group), e.fingerprint);
        }
        // Spot-check order 8: cyclic, two mixed abelian, dihedral, quaternion.
        let eights: Vec<_> = catalog.iter().filter(|e| e.order == 8).collect();
        assert_eq!(eights.len(), 5);
        assert!(eights.iter().any(|e| isomorphic(&e.group, &cyclic(8))));
        assert!(eights.iter().any(|e| isomorphic(&e.group, &dihedral(4))));
        assert!(eights.iter().any(|e| isomorphic(&e.group, &quaternion8())));
    }

    #[test]
    fn positions_are_stable() {
        let a = build_catalog(12);
        let b = build_catalog(12);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name(), y.name());
            assert_eq!(x.group.table(), y.group.table());
            assert_eq!(x.provenance, y.provenance);
        }
    }

    #[test]
    fn exactly_two_exceptions_to_cyclic_extension_structure() {
        let catalog = build_catalog(31);
        let classes = classify_cyclic_extensions(&catalog);
        assert_eq!(classes.exceptions.len(), 2);
        for e in &classes.exceptions {
            assert_eq!(e.order, 24);
        }
        assert!(classes.exceptions.iter().any(|e| isomorphic(&e.group, &sl2_z3())));
        assert!(classes.exceptions.iter().any(|e| isomorphic(&e.group, &symmetric(4))));
        assert_eq!(classes.extensions.len() + classes.exceptions.len(), catalog.len());
    }

    /// Exhaustive search over multiplication tables, independent of the
    /// extension machinery above, used to cross-check small counts.
    mod oracle {
        const UNSET: u16 = u16::MAX;

        fn divisors(n: usize) -> Vec<usize> {
            (1..=n).filter(|d| n % d == 0).collect()
        }

        fn largest_prime_factor(n: usize) -> usize {
            let mut rest = n;
            let mut best = 1;
            let mut d = 2;
            while d * d <= rest {
                while rest % d == 0 {
                    best = d;
                    rest /= d;
                }
                d += 1;
            }
            if rest > 1 {
                best = rest;
            }
            best
        }

        struct Search {
            n: usize,
            max_order: usize,
            table: Vec<u16>,
            row_mask: Vec<u32>,
            col_mask: Vec<u32>,
            pairs_by_value: Vec<Vec<(u16, u16)>>,
            free_cells: Vec<(usize, usize)>,
            found: Vec<Vec<u16>>,
        }

        impl Search {
            fn at(&self, a: usize, b: usize) -> u16 {
                self.table[a * self.n + b]
            }

            fn pin(&mut self, r: usize, s: usize, v: usize) {
                self.table[r * self.n + s] = v as u16;
                self.row_mask[r] |= 1 << v;
                self.col_mask[s] |= 1 << v;
                self.pairs_by_value[v].push((r as u16, s as u16));
            }

            /// Checks every associativity triple whose four table cells just
            /// became complete with the assignment `(r, s) = v`.
            fn assoc_ok(&self, r: usize, s: usize, v: usize) -> bool {
                let n = self.n;
                // (r s) c = r (s c)
                for c in 0..n {
                    let sc = self.at(s, c);
                    if sc == UNSET {
                        continue;
                    }
                    let vc = self.at(v, c);
                    let r_sc = self.at(r, sc as usize);
                    if vc != UNSET && r_sc != UNSET && vc != r_sc {
                        return false;
                    }
                }
                // a (r s) = (a r) s
                for a in 0..n {
                    let av = self.at(a, v);
                    if av == UNSET {
                        continue;
                    }
                    let ar = self.at(a, r);
                    if ar == UNSET {
                        continue;
                    }
                    let ar_s = self.at(ar as usize, s);
                    if ar_s != UNSET && av != ar_s {
                        return false;
                    }
                }
                // (a b) s = a (b s) for every pair with a b = r
                for &(a, b) in &self.pairs_by_value[r] {
                    let bs = self.at(b as usize, s);
                    if bs == UNSET {
                        continue;
                    }
                    let a_bs = self.at(a as usize, bs as usize);
                    if a_bs != UNSET && a_bs != v as u16 {
                        return false;
                    }
                }
                // (r b) c = r (b c) for every pair with b c = s
                for &(b, c) in &self.pairs_by_value[s] {
                    let rb = self.at(r, b as usize);
                    if rb == UNSET {
                        continue;
                    }
                    let rb_c = self.at(rb as usize, c as usize);
                    if rb_c != UNSET && rb_c != v as u16 {
                        return false;
                    }
                }
                true
            }

            fn element_orders_bounded(&self) -> bool {
                for x in 0..self.n {
                    let mut acc = x;
                    let mut ord = 1;
                    while acc != 0 {
                        acc = self.at(acc, x) as usize;
                        ord += 1;
                        if ord > self.max_order {
                            return false;
                        }
                    }
                }
                true
            }

            /// Walks the power chain of `x` through assigned cells; prunes
            /// once the chain proves an order beyond `max_order` or one not
            /// dividing the group order.
            fn order_chain_ok(&self, x: usize) -> bool {
                let mut acc = x;
                let mut ord = 1;
                while acc != 0 {
                    let next = self.at(acc, x);
                    if next == UNSET {
                        return true;
                    }
                    acc = next as usize;
                    ord += 1;
                    if ord > self.max_order {
                        return false;
                    }
                }
                self.n % ord == 0
            }

            fn dfs(&mut self, i: usize) {
                if i == self.free_cells.len() {
                    if self.element_orders_bounded() {
                        self.found.push(self.table.clone());
                    }
                    return;
                }
                let (r, s) = self.free_cells[i];
                let taken = self.row_mask[r] | self.col_mask[s];
                for v in 0..self.n {
                    if taken & (1 << v) != 0 {
                        continue;
                    }
                    self.pin(r, s, v);
                    if self.assoc_ok(r, s, v) && self.order_chain_ok(s) {
                        self.dfs(i + 1);
                    }
                    self.table[r * self.n + s] = UNSET;
                    self.row_mask[r] &= !(1 << v);
                    self.col_mask[s] &= !(1 << v);
                    self.pairs_by_value[v].pop();
                }
            }
        }

        /// All tables of order `n` whose maximal element order is `o`, with
        /// identity pinned at 0 and element 1 of order `o` pinned so that
        /// `1^j` is labeled `j`. Labels outside the pinned cyclic block are
        /// not canonicalized, so one isomorphism class yields many tables.
        fn tables_with_max_order(n: usize, o: usize) -> Vec<Vec<u16>> {
            let mut search = Search {
                n,
                max_order: o,
                table: vec![UNSET; n * n],
                row_mask: vec![0; n],
                col_mask: vec![0; n],
                pairs_by_value: vec![Vec::new(); n],
                free_cells: Vec::new(),
                found: Vec::new(),
            };
            for j in 0..o {
                for k in 0..o {
                    search.pin(j, k, (j + k) % o);
                }
            }
            for x in o..n {
                search.pin(0, x, x);
                search.pin(x, 0, x);
            }
            for r in 1..n {
                for s in 1..n {
                    if r < o && s < o {
                        continue;
                    }
                    search.free_cells.push((r, s));
                }
            }
            search.dfs(0);
            search.found
        }

        fn closure(n: usize, t: &[u16], seed: &[usize]) -> Vec<usize> {
            let mut in_set = vec![false; n];
            let mut members = Vec::new();
            let identity = (0..n)
                .find(|&e| (0..n).all(|x| t[e * n + x] as usize == x && t[x * n + e] as usize == x))
                .expect("oracle tables have an identity");
            in_set[identity] = true;
            members.push(identity);
            for &s in seed {
                if !in_set[s] {
                    in_set[s] = true;
                    members.push(s);
                }
            }
            let mut changed = true;
            while changed {
                changed = false;
                for i in 0..members.len() {
                    for j in 0..members.len() {
                        let p = t[members[i] * n + members[j]] as usize;
                        if !in_set[p] {
                            in_set[p] = true;
                            members.push(p);
                            changed = true;
                        }
                    }
                }
            }
            members.sort_unstable();
            members
        }

        fn generating_set(n: usize, t: &[u16]) -> Vec<usize> {
            fn rec(n: usize, t: &[u16], size: usize, start: usize, cur: &mut Vec<usize>) -> bool {
                if cur.len() == size {
                    return closure(n, t, cur).len() == n;
                }
                for x in start..n {
                    cur.push(x);
                    if rec(n, t, size, x + 1, cur) {
                        return true;
                    }
                    cur.pop();
                }
                false
            }
            for size in 0..=4 {
                let mut cur = Vec::new();
                if rec(n, t, size, 0, &mut cur) {
                    return cur;
                }
            }
            panic!("no generating set of size <= 4 for order {n}");
        }

        fn element_order(n: usize, t: &[u16], identity: usize, x: usize) -> usize {
            let mut acc = x;
            let mut ord = 1;
            while acc != identity {
                acc = t[acc * n + x] as usize;
                ord += 1;
            }
            ord
        }

        fn extend(
            n: usize,
            ta: &[u16],
            tb: &[u16],
            ea: usize,
            eb: usize,
            gens: &[usize],
            imgs: &[usize],
        ) -> bool {
            let mut map = vec![UNSET; n];
            let mut used = vec![false; n];
            map[ea] = eb as u16;
            used[eb] = true;
            let mut queue = vec![ea];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for (&g, &h) in gens.iter().zip(imgs) {
                    let y = ta[x * n + g] as usize;
                    let iy = tb[map[x] as usize * n + h] as usize;
                    if map[y] == UNSET {
                        if used[iy] {
                            return false;
                        }
                        map[y] = iy as u16;
                        used[iy] = true;
                        queue.push(y);
                    } else if map[y] as usize != iy {
                        return false;
                    }
                }
            }
            queue.len() == n
        }

        fn tables_isomorphic(n: usize, ta: &[u16], tb: &[u16]) -> bool {
            let ea = closure(n, ta, &[])[0];
            let eb = closure(n, tb, &[])[0];
            let mut profile_a: Vec<usize> = (0..n).map(|x| element_order(n, ta, ea, x)).collect();
            let orders_b: Vec<usize> = (0..n).map(|x| element_order(n, tb, eb, x)).collect();
            let mut profile_b = orders_b.clone();
            profile_a.sort_unstable();
            profile_b.sort_unstable();
            if profile_a != profile_b {
                return false;
            }
            let gens = generating_set(n, ta);
            let gen_orders: Vec<usize> =
                gens.iter().map(|&g| element_order(n, ta, ea, g)).collect();
            let mut imgs = vec![0usize; gens.len()];
            fn rec(
                n: usize,
                ta: &[u16],
                tb: &[u16],
                ea: usize,
                eb: usize,
                gens: &[usize],
                gen_orders: &[usize],
                orders_b: &[usize],
                imgs: &mut [usize],
                depth: usize,
            ) -> bool {
                if depth == gens.len() {
                    return extend(n, ta, tb, ea, eb, gens, imgs);
                }
                for c in 0..n {
                    if orders_b[c] != gen_orders[depth] {
                        continue;
                    }
                    imgs[depth] = c;
                    if rec(n, ta, tb, ea, eb, gens, gen_orders, orders_b, imgs, depth + 1) {
                        return true;
                    }
                }
                false
            }
            rec(n, ta, tb, ea, eb, &gens, &gen_orders, &orders_b, &mut imgs, 0)
        }

        /// Number of groups of order `n` up to isomorphism, by exhaustive
        /// canonical table search.
        pub fn count_groups(n: usize) -> usize {
            if n == 1 {
                return 1;
            }
            let floor = largest_prime_factor(n).max(2);
            let mut total = 0;
            for o in divisors(n) {
                if o < floor {
                    continue;
                }
                let tables = tables_with_max_order(n, o);
                let mut reps: Vec<Vec<u16>> = Vec::new();
                for t in tables {
                    if !reps.iter().any(|r| tables_isomorphic(n, r, &t)) {
                        reps.push(t);
                    }
                }
                total += reps.len();
            }
            total
        }
    }

    #[test]
    fn oracle_agrees_on_small_orders() {
        let catalog = build_catalog(11);
        let counts = group_counts(&catalog);
        for n in 2..=11 {
            assert_eq!(oracle::count_groups(n), counts[&n], "order {n}");
        }
    }
}
