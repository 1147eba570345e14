//! Constructors for commonly used finite groups.
//!
//! Everything funnels through [`FiniteGroup::from_flat`], so every construction
//! is re-validated exhaustively; a constructor producing an invalid table is a
//! bug and panics loudly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::vec;

use crate::group::FiniteGroup;

/// Cyclic group of order `n` with elements labeled by residues.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs order >= 1");
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(((a + b) % n) as u16);
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_flat(flat, n, Some(labels)).expect("cyclic table is a group")
}

/// Klein four-group `Z2 x Z2`.
pub fn klein_four() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

/// Direct product `G x H` with pair labels when both factors are labeled.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order(), h.order());
    let order = n * m;
    let mut flat = Vec::with_capacity(order * order);
    // Element i = (i % n, i / n).
    for a in 0..order {
        let (ga, ha) = (a % n, a / n);
        for b in 0..order {
            let (gb, hb) = (b % n, b / n);
            let gp = g.mul(g.element(ga), g.element(gb)).index();
            let hp = h.mul(h.element(ha), h.element(hb)).index();
            flat.push((hp * n + gp) as u16);
        }
    }
    let labels = pair_labels(g, h);
    FiniteGroup::from_flat(flat, order, labels).expect("direct product table is a group")
}

fn pair_labels(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<String>> {
    let (n, m) = (g.order(), h.order());
    let mut labels = Vec::with_capacity(n * m);
    for i in 0..n * m {
        let (gi, hi) = (i % n, i / n);
        match (g.label(gi), h.label(hi)) {
            (Some(a), Some(b)) => labels.push(format!("({a},{b})")),
            _ => return None,
        }
    }
    Some(labels)
}

/// Semidirect product `N x| H` for a right split extension.
///
/// `action[h]` lists the image under the automorphism attached to `h` of each
/// element of `N`; the product rule is `(n1, h1)(n2, h2) =
/// (n1 * action[h1](n2), h1 h2)`. The action is validated: every `action[h]`
/// must be an automorphism of `N` and `h -> action[h]` a homomorphism.
pub fn semidirect_product(n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>]) -> FiniteGroup {
    let (nn, nh) = (n.order(), h.order());
    assert_eq!(action.len(), nh, "one automorphism per element of the acting group");
    for (hi, perm) in action.iter().enumerate() {
        assert_eq!(perm.len(), nn, "automorphism {hi} must cover the normal subgroup");
        let mut seen = vec![false; nn];
        for &img in perm {
            assert!(img < nn && !seen[img], "action of element {hi} is not a bijection");
            seen[img] = true;
        }
        for a in 0..nn {
            for b in 0..nn {
                let ab = n.mul(n.element(a), n.element(b)).index();
                let pa = n.element(perm[a]);
                let pb = n.element(perm[b]);
                assert_eq!(
                    perm[ab],
                    n.mul(pa, pb).index(),
                    "action of element {hi} is not an automorphism"
                );
            }
        }
    }
    let he = h.identity().index();
    for a in 0..nn {
        assert_eq!(action[he][a], a, "identity of the acting group must act trivially");
    }
    for h1 in 0..nh {
        let h2_range = 0..nh;
        for h2 in h2_range {
            let h12 = h.mul(h.element(h1), h.element(h2)).index();
            for a in 0..nn {
                assert_eq!(
                    action[h12][a],
                    action[h1][action[h2][a]],
                    "action is not a homomorphism at ({h1}, {h2})"
                );
            }
        }
    }
    let order = nn * nh;
    let mut flat = Vec::with_capacity(order * order);
    for x in 0..order {
        let (n1, h1) = (x % nn, x / nn);
        for y in 0..order {
            let (n2, h2) = (y % nn, y / nn);
            let np = n.mul(n.element(n1), n.element(action[h1][n2])).index();
            let hp = h.mul(h.element(h1), h.element(h2)).index();
            flat.push((hp * nn + np) as u16);
        }
    }
    let labels = pair_labels(n, h);
    FiniteGroup::from_flat(flat, order, labels).expect("semidirect table is a group")
}

/// Quaternion group of order 8 with labels `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> FiniteGroup {
    // Indices: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k.
    const NEG: [usize; 8] = [1, 0, 3, 2, 5, 4, 7, 6];
    // Base products on {1, i, j, k} with signs: i*i = -1, i*j = k, j*i = -k, ...
    fn base_mul(a: usize, b: usize) -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (1, 1) => (0, true),
            (2, 2) => (0, true),
            (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let mut flat = Vec::with_capacity(64);
    for x in 0..8 {
        let (bx, sx) = (x / 2, x % 2 == 1);
        for y in 0..8 {
            let (by, sy) = (y / 2, y % 2 == 1);
            let (bz, sz) = base_mul(bx, by);
            let idx = if sx ^ sy ^ sz { NEG[bz * 2] } else { bz * 2 };
            flat.push(idx as u16);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_flat(flat, 8, Some(labels)).expect("quaternion table is a group")
}

/// Symmetric group on `n` letters as a permutation composition table.
///
/// Elements are permutations of `0..n` in lexicographic order; composition is
/// `(p * q)(x) = p(q(x))`. Capped at `n <= 6` to keep tables small.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=6).contains(&n), "symmetric group supported for 1 <= n <= 6");
    let perms = permutations(n);
    let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let order = perms.len();
    let mut flat = Vec::with_capacity(order * order);
    let mut comp = vec![0usize; n];
    for p in &perms {
        for q in &perms {
            for x in 0..n {
                comp[x] = p[q[x]];
            }
            flat.push(index_of(&comp) as u16);
        }
    }
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    FiniteGroup::from_flat(flat, order, Some(labels)).expect("symmetric table is a group")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // Next permutation in lexicographic order.
        let mut i = n.wrapping_sub(1);
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn cycle_label(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
            if x == start {
                break;
            }
            out.push(' ');
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("e");
    }
    out
}

/// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral group needs n >= 1");
    let order = 2 * n;
    // Element r^a s^b with index b*n + a; s r s = r^-1.
    let mut flat = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a1, b1) = (x % n, x / n);
        for y in 0..order {
            let (a2, b2) = (y % n, y / n);
            let a = if b1 == 0 { (a1 + a2) % n } else { (a1 + n - a2 % n) % n };
            let b = (b1 + b2) % 2;
            flat.push((b * n + a) as u16);
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            match (a, b) {
                (0, 0) => "e".to_string(),
                (a, 0) => format!("r{a}"),
                (0, _) => "s".to_string(),
                (a, _) => format!("r{a}s"),
            }
        })
        .collect();
    FiniteGroup::from_flat(flat, order, Some(labels)).expect("dihedral table is a group")
}

/// The special linear group `SL(2, Z3)` of order 24, realized as the
/// quaternion group extended by a cyclic group of order 3 cycling `i -> j ->
/// k -> i`.
pub fn sl2_z3() -> FiniteGroup {
    let q8 = quaternion8();
    let z3 = cyclic(3);
    // Base cycle i -> j -> k with signs preserved; 1 and -1 fixed.
    let rot: Vec<usize> = vec![0, 1, 4, 5, 6, 7, 2, 3];
    let mut action = Vec::with_capacity(3);
    let mut cur: Vec<usize> = (0..8).collect();
    for _ in 0..3 {
        action.push(cur.clone());
        cur = cur.iter().map(|&x| rot[x]).collect();
    }
    semidirect_product(&q8, &z3, &action)
}

/// The symmetric group on four letters built as the Klein four-group extended
/// by `S3` permuting its three involutions.
pub fn s4_as_extension() -> FiniteGroup {
    let k4 = klein_four();
    let s3 = symmetric(3);
    // Nonzero elements of K4 sit at indices 1, 2, 3; a permutation p of
    // {0,1,2} acts by sending slot i+... index (i+1) to p-image.
    let mut action = Vec::with_capacity(6);
    for p in permutations(3) {
        let mut perm = vec![0usize; 4];
        for i in 0..3 {
            perm[i + 1] = p[i] + 1;
        }
        action.push(perm);
    }
    semidirect_product(&k4, &s3, &action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders() {
        for n in 1..=12 {
            let g = cyclic(n);
            assert_eq!(g.order(), n);
            assert!(g.is_cyclic());
        }
    }

    #[test]
    fn klein_four_not_cyclic() {
        let g = klein_four();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(!g.is_cyclic());
    }

    #[test]
    fn direct_product_z2_z3_is_cyclic() {
        let g = direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(g.order(), 6);
        assert!(g.is_cyclic());
    }

    #[test]
    fn quaternion_relations() {
        let g = quaternion8();
        let (m1, i, j, k) = (g.element(1), g.element(2), g.element(4), g.element(6));
        assert_eq!(g.mul(i, i), m1);
        assert_eq!(g.mul(j, j), m1);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), g.inv(k));
        assert_eq!(g.element_order(m1), 2);
        assert_eq!(g.element_order(i), 4);
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(4).order(), 24);
        assert!(!symmetric(3).is_abelian());
    }

    #[test]
    fn dihedral_relations() {
        let g = dihedral(4);
        assert_eq!(g.order(), 8);
        let r = g.element(1);
        let s = g.element(4);
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        // s r s^-1 = r^-1
        let c = g.mul(g.mul(s, r), g.inv(s));
        assert_eq!(c, g.inv(r));
    }

    #[test]
    fn sl2_z3_shape() {
        let g = sl2_z3();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        // Unique element of order 2 (the central -1).
        let twos: Vec<_> =
            g.elements().filter(|&x| g.element_order(x) == 2).collect();
        assert_eq!(twos.len(), 1);
        // That element is central.
        let m1 = twos[0];
        assert!(g.elements().all(|x| g.mul(m1, x) == g.mul(x, m1)));
    }

    #[test]
    fn s4_extension_shape() {
        let g = s4_as_extension();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        // S4 has 9 elements of order 2.
        let twos = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(twos, 9);
    }

    #[test]
    #[should_panic(expected = "not an automorphism")]
    fn semidirect_rejects_non_automorphism() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        // Swapping 1 and 2 is a bijection but not an automorphism of Z4.
        let action = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]];
        let _ = semidirect_product(&z4, &z2, &action);
    }
}
