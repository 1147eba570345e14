//! Heisenberg-type central extensions of the mod-k homology of a surface.
//!
//! For `k >= 2` and genus `g >= 2` the group `H(k, g)` has elements
//! `(a1, b1, ..., ag, bg; e)` with all coordinates mod `k`, multiplied by
//! adding coordinates while the central coordinate picks up the twisted term
//! `sum_i b_i * a'_i`. Commutators land in the center and compute exactly the
//! symplectic intersection pairing of the coordinate vectors, which is what
//! makes the standard surface hom into `H(k, g)` kill no simple closed curve:
//! a primitive homology class always pairs nontrivially with something, and
//! null-homologous simple curves evaluate to a nonzero central element.
//!
//! Elements are plain coordinate tuples, so arithmetic works at any order;
//! [`HeisenbergGroup::to_finite_group`] additionally materializes a validated
//! multiplication table when the order is small enough.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigUint;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::group::{BuildError, FiniteGroup, MAX_TABLE_ORDER};
use crate::hom::SurfaceHom;
use crate::homology;
use crate::word::SurfaceWord;

/// An element `(a1, b1, ..., ag, bg; e)`; coordinates are kept reduced mod k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergElement {
    coords: Vec<u32>,
    eps: u32,
}

impl HeisenbergElement {
    /// The `2g` homology coordinates.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// The central coordinate.
    pub fn eps(&self) -> u32 {
        self.eps
    }

    /// Renders as `(a1,b1,...,ag,bg;e)`.
    pub fn render(&self) -> String {
        let mut s = String::from("(");
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        let _ = write!(s, ";{})", self.eps);
        s
    }
}

/// The central extension of `(Z_k)^{2g}` by `Z_k` with cocycle
/// `sum_i b_i * a'_i`, of order `k^(2g+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisenbergGroup {
    k: u32,
    genus: usize,
}

impl HeisenbergGroup {
    /// Builds the group descriptor. Requires `k >= 2` and `genus >= 2`: the
    /// genus-1 relator would force the commutator of the two standard images
    /// to vanish, which it never does here.
    pub fn new(k: u32, genus: usize) -> Self {
        assert!(k >= 2, "modulus must be at least 2");
        assert!(genus >= 2, "genus must be at least 2");
        HeisenbergGroup { k, genus }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `k^(2g+1)`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.k).pow(2 * self.genus as u32 + 1)
    }

    /// The order as a `usize` when it fits, for table-backed uses.
    pub fn small_order(&self) -> Option<usize> {
        let mut acc: usize = 1;
        for _ in 0..(2 * self.genus + 1) {
            acc = acc.checked_mul(self.k as usize)?;
        }
        Some(acc)
    }

    pub fn identity(&self) -> HeisenbergElement {
        HeisenbergElement { coords: vec![0; 2 * self.genus], eps: 0 }
    }

    /// Wraps raw coordinates, reducing them mod k.
    pub fn element(&self, coords: &[u32], eps: u32) -> HeisenbergElement {
        assert_eq!(coords.len(), 2 * self.genus, "need 2*genus coordinates");
        HeisenbergElement {
            coords: coords.iter().map(|&c| c % self.k).collect(),
            eps: eps % self.k,
        }
    }

    /// The generator with `a_i = 1` (slots are 1-based).
    pub fn generator_a(&self, i: usize) -> HeisenbergElement {
        assert!((1..=self.genus).contains(&i));
        let mut e = self.identity();
        e.coords[2 * (i - 1)] = 1;
        e
    }

    /// The generator with `b_i = 1`.
    pub fn generator_b(&self, i: usize) -> HeisenbergElement {
        assert!((1..=self.genus).contains(&i));
        let mut e = self.identity();
        e.coords[2 * (i - 1) + 1] = 1;
        e
    }

    /// Product: coordinates add; the center gains `sum_i b_i * a'_i`.
    pub fn mul(&self, p: &HeisenbergElement, q: &HeisenbergElement) -> HeisenbergElement {
        let k = self.k;
        let mut coords = Vec::with_capacity(2 * self.genus);
        let mut eps = (p.eps + q.eps) % k;
        for i in 0..self.genus {
            let (a, b) = (p.coords[2 * i], p.coords[2 * i + 1]);
            let (a2, b2) = (q.coords[2 * i], q.coords[2 * i + 1]);
            coords.push((a + a2) % k);
            coords.push((b + b2) % k);
            eps = (eps + b * a2 % k) % k;
        }
        HeisenbergElement { coords, eps }
    }

    pub fn inv(&self, p: &HeisenbergElement) -> HeisenbergElement {
        let k = self.k;
        let mut coords: Vec<u32> = p.coords.iter().map(|&c| (k - c % k) % k).collect();
        // (x * x^-1) must cancel the cocycle term sum_i b_i * (-a_i).
        let mut eps = (k - p.eps % k) % k;
        for i in 0..self.genus {
            let (a, b) = (p.coords[2 * i], p.coords[2 * i + 1]);
            let minus_a = (k - a % k) % k;
            eps = (eps + k - (b * minus_a % k)) % k;
        }
        let e = HeisenbergElement { coords: core::mem::take(&mut coords), eps };
        debug_assert_eq!(self.mul(p, &e), self.identity());
        debug_assert_eq!(self.mul(&e, p), self.identity());
        e
    }

    /// `p q p^-1 q^-1`; always central, with `eps` the intersection pairing.
    pub fn commutator(&self, p: &HeisenbergElement, q: &HeisenbergElement) -> HeisenbergElement {
        let pq = self.mul(p, q);
        let pi = self.inv(p);
        let qi = self.inv(q);
        self.mul(&self.mul(&pq, &pi), &qi)
    }

    /// The symplectic pairing `sum_i (b_i a'_i - b'_i a_i)` mod k of the
    /// coordinate parts.
    pub fn pairing(&self, p: &HeisenbergElement, q: &HeisenbergElement) -> u32 {
        let k = self.k;
        let mut acc = 0u32;
        for i in 0..self.genus {
            let (a, b) = (p.coords[2 * i], p.coords[2 * i + 1]);
            let (a2, b2) = (q.coords[2 * i], q.coords[2 * i + 1]);
            acc = (acc + b * a2 % k + k - b2 * a % k) % k;
        }
        acc
    }

    /// Images of `x1, y1, ..., xg, yg` under the standard hom: `x_i` goes to
    /// the `a_i` unit, `y_i` to the `b_i` unit.
    pub fn standard_images(&self) -> Vec<HeisenbergElement> {
        let mut images = Vec::with_capacity(2 * self.genus);
        for i in 1..=self.genus {
            images.push(self.generator_a(i));
            images.push(self.generator_b(i));
        }
        images
    }

    /// Evaluates a surface word under generator images, in coordinates.
    pub fn evaluate(&self, word: &SurfaceWord, images: &[HeisenbergElement]) -> HeisenbergElement {
        assert!(word.genus() <= self.genus, "word genus exceeds group genus");
        assert_eq!(images.len(), 2 * self.genus, "need one image per generator");
        let mut acc = self.identity();
        for &l in word.letters() {
            let im = &images[(l.unsigned_abs() as usize) - 1];
            if l > 0 {
                acc = self.mul(&acc, im);
            } else {
                acc = self.mul(&acc, &self.inv(im));
            }
        }
        acc
    }

    /// Index of an element in the lexicographic coordinate order used by
    /// [`to_finite_group`]; the identity is index 0.
    pub fn element_index(&self, e: &HeisenbergElement) -> usize {
        let k = self.k as usize;
        let mut idx = 0usize;
        for &c in &e.coords {
            idx = idx * k + c as usize;
        }
        idx * k + e.eps as usize
    }

    /// Materializes the multiplication table as a validated [`FiniteGroup`]
    /// with tuple labels. Fails when `k^(2g+1)` exceeds the table cap; note
    /// that validation is cubic in the order, so callers should keep this to
    /// a few hundred elements.
    pub fn to_finite_group(&self) -> Result<FiniteGroup, BuildError> {
        let n = match self.small_order() {
            Some(n) if n <= MAX_TABLE_ORDER => n,
            _ => return Err(BuildError::BadOrder { order: usize::MAX }),
        };
        let elems: Vec<HeisenbergElement> = (0..n).map(|i| self.element_at(i)).collect();
        let mut flat = vec![0u16; n * n];
        for (i, p) in elems.iter().enumerate() {
            for (j, q) in elems.iter().enumerate() {
                flat[i * n + j] = self.element_index(&self.mul(p, q)) as u16;
            }
        }
        let labels = elems.iter().map(|e| e.render()).collect();
        FiniteGroup::from_flat(flat, n, Some(labels))
    }

    /// Inverse of [`element_index`].
    pub fn element_at(&self, mut idx: usize) -> HeisenbergElement {
        let k = self.k as usize;
        let eps = (idx % k) as u32;
        idx /= k;
        let mut coords = vec![0u32; 2 * self.genus];
        for slot in (0..2 * self.genus).rev() {
            coords[slot] = (idx % k) as u32;
            idx /= k;
        }
        HeisenbergElement { coords, eps }
    }

    /// The standard hom as a [`SurfaceHom`] into a table built by
    /// [`to_finite_group`].
    pub fn standard_hom(&self, table: &FiniteGroup) -> SurfaceHom {
        assert_eq!(Some(table.order()), self.small_order(), "table order mismatch");
        let images: Vec<_> = self
            .standard_images()
            .iter()
            .map(|e| table.element(self.element_index(e)))
            .collect();
        SurfaceHom::new(table, self.genus, &images).expect("standard images satisfy the relator")
    }

    /// Verifies `[p, q] = (0, ..., 0; pairing(p, q))`.
    ///
    /// All pairs are checked when `order^2 <= max_exhaustive_pairs`;
    /// otherwise `samples` seeded random pairs are drawn. Returns false on
    /// the first violation.
    pub fn commutator_identity_check(
        &self,
        max_exhaustive_pairs: u64,
        samples: u64,
        seed: u64,
    ) -> bool {
        let holds = |p: &HeisenbergElement, q: &HeisenbergElement| -> bool {
            let c = self.commutator(p, q);
            c.coords.iter().all(|&v| v == 0) && c.eps == self.pairing(p, q)
        };
        let exhaustive = self
            .small_order()
            .and_then(|n| (n as u64).checked_mul(n as u64))
            .is_some_and(|pairs| pairs <= max_exhaustive_pairs);
        if exhaustive {
            let n = self.small_order().unwrap();
            for i in 0..n {
                let p = self.element_at(i);
                for j in 0..n {
                    if !holds(&p, &self.element_at(j)) {
                        return false;
                    }
                }
            }
            true
        } else {
            let mut rng = SmallRng::seed_from_u64(seed);
            let random = |rng: &mut SmallRng| {
                let coords: Vec<u32> =
                    (0..2 * self.genus).map(|_| rng.gen_range(0..self.k)).collect();
                HeisenbergElement { coords, eps: rng.gen_range(0..self.k) }
            };
            (0..samples).all(|_| {
                let p = random(&mut rng);
                let q = random(&mut rng);
                holds(&p, &q)
            })
        }
    }

    /// Verifies that commutators of evaluated words read off the homology
    /// intersection form: for words `u, v`, the commutator of their images
    /// under the standard hom is central with `eps` equal to the mod-k
    /// intersection number of their homology classes.
    ///
    /// Checks all pairs of single-generator words, then `random_pairs`
    /// seeded random word pairs of length at most 12.
    pub fn intersection_formula_check(&self, random_pairs: u64, seed: u64) -> bool {
        let images = self.standard_images();
        let holds = |u: &SurfaceWord, v: &SurfaceWord| -> bool {
            let c = self.commutator(&self.evaluate(u, &images), &self.evaluate(v, &images));
            let expected = homology::intersection(
                &homology::homology_class(u, self.k),
                &homology::homology_class(v, self.k),
                self.k,
            );
            c.coords.iter().all(|&x| x == 0) && c.eps == expected
        };

        for s in 0..2 * self.genus {
            for t in 0..2 * self.genus {
                let u = SurfaceWord::letter(self.genus, s, false);
                let v = SurfaceWord::letter(self.genus, t, false);
                if !holds(&u, &v) {
                    return false;
                }
            }
        }

        let mut rng = SmallRng::seed_from_u64(seed);
        let random_word = |rng: &mut SmallRng| {
            let len = rng.gen_range(0..=12usize);
            let mut w = SurfaceWord::identity(self.genus);
            for _ in 0..len {
                let slot = rng.gen_range(0..2 * self.genus);
                let inv = rng.gen_bool(0.5);
                w = w.concat(&SurfaceWord::letter(self.genus, slot, inv));
            }
            w
        };
        (0..random_pairs).all(|_| {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            holds(&u, &v)
        })
    }
}
