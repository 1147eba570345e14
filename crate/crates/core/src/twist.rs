//! Relator-preserving substitutions generating the twist action on surface
//! words.
//!
//! A closed genus-`g` surface is the double cover of a disk branched over
//! `2g+2` points. Half-twists of neighboring branch points act on the free
//! group of the punctured disk; rewriting that action on the index-2 subgroup
//! and capping the two boundary circles turns each half-twist into a Dehn
//! twist of the closed surface, expressed as a substitution on the standard
//! generators that carries the defining relator to a conjugate of itself.
//! Genus 1 is handled directly with the two twists along the core curves.
//!
//! For genus 1 and 2 the resulting set generates the full twist group; from
//! genus 3 on, the chain of `2g+1` twists is a proper subgroup, and the set
//! is marked accordingly so callers can refuse to certify negatives.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::word::{free_conjugate, SurfaceWord};

/// One invertible substitution on the standard generators, paired with its
/// inverse by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistAutomorphism {
    name: String,
    inverse_name: String,
    genus: usize,
    images: Vec<SurfaceWord>,
}

impl TwistAutomorphism {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inverse_name(&self) -> &str {
        &self.inverse_name
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Image of each generator slot, in slot order.
    pub fn images(&self) -> &[SurfaceWord] {
        &self.images
    }

    pub fn apply(&self, w: &SurfaceWord) -> SurfaceWord {
        w.substitute(&self.images)
    }
}

/// The twists available at a fixed genus, inverses included.
#[derive(Debug, Clone)]
pub struct TwistSet {
    genus: usize,
    twists: Vec<TwistAutomorphism>,
    known_complete: bool,
}

impl TwistSet {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn twists(&self) -> &[TwistAutomorphism] {
        &self.twists
    }

    /// Whether the set is known to generate the whole twist group. True for
    /// genus 1 and 2; the longer chains only generate the subgroup commuting
    /// with the covering involution.
    pub fn known_complete(&self) -> bool {
        self.known_complete
    }

    pub fn by_name(&self, name: &str) -> Option<&TwistAutomorphism> {
        self.twists.iter().find(|t| t.name == name)
    }
}

// Words over an arbitrary positive letter alphabet, freely reduced. Letter
// `+j` is the j-th symbol, `-j` its inverse.

fn push_red(out: &mut Vec<i16>, l: i16) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn reduce(w: &[i16]) -> Vec<i16> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        push_red(&mut out, l);
    }
    out
}

fn invert(w: &[i16]) -> Vec<i16> {
    w.iter().rev().map(|&l| -l).collect()
}

fn substitute(w: &[i16], images: &BTreeMap<i16, Vec<i16>>) -> Vec<i16> {
    let mut out = Vec::new();
    for &l in w {
        let img = &images[&l.abs()];
        if l > 0 {
            for &m in img {
                push_red(&mut out, m);
            }
        } else {
            for &m in invert(img).iter() {
                push_red(&mut out, m);
            }
        }
    }
    out
}

fn cyclic_core(w: &[i16]) -> Vec<i16> {
    let mut v = reduce(w);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

fn conjugate_words(a: &[i16], b: &[i16]) -> bool {
    let ca = cyclic_core(a);
    let cb = cyclic_core(b);
    if ca.len() != cb.len() {
        return false;
    }
    if ca.is_empty() {
        return true;
    }
    let doubled: Vec<i16> = cb.iter().chain(cb.iter()).copied().collect();
    doubled.windows(ca.len()).any(|win| win == ca.as_slice())
}

/// The covering involution negates every branched-cover generator.
fn flip(w: &[i16]) -> Vec<i16> {
    w.iter().map(|&l| -l).collect()
}

/// Action of the half-twist swapping punctures `i` and `i+1` on the free
/// group of the `n`-punctured disk (1-based letters).
fn half_twist(n: usize, i: usize, inverse: bool) -> BTreeMap<i16, Vec<i16>> {
    let mut images: BTreeMap<i16, Vec<i16>> = (1..=n as i16).map(|j| (j, vec![j])).collect();
    let a = i as i16;
    let b = a + 1;
    if inverse {
        images.insert(a, vec![b]);
        images.insert(b, vec![-b, a, b]);
    } else {
        images.insert(a, vec![a, b, -a]);
        images.insert(b, vec![a]);
    }
    images
}

/// Rewrites an even word in the puncture generators as a word in the
/// branched double cover's free basis `v2..vn`, where `vj` lifts `g1 gj`.
/// The two cover sheets alternate per letter; the lift of `g1^2` bounds a
/// disk upstairs and is dropped.
fn rewrite_to_cover(gword: &[i16]) -> Vec<i16> {
    let mut out = Vec::new();
    let mut odd_sheet = false;
    for &l in gword {
        let j = l.abs();
        if j != 1 {
            push_red(&mut out, if odd_sheet { j } else { -j });
        }
        odd_sheet = !odd_sheet;
    }
    assert!(!odd_sheet, "cover rewriting needs words of even puncture degree");
    out
}

/// Boundary circle of the cover on the sheet-swapping side: `v2^-1 v3 v4^-1
/// ... vn^-1` for even `n`.
fn boundary_swapped(n: usize) -> Vec<i16> {
    (2..=n as i16).map(|j| if j % 2 == 0 { -j } else { j }).collect()
}

/// Lift of a punctured-disk substitution to the branched cover basis,
/// normalized with the covering involution so that each boundary circle maps
/// to a conjugate of itself.
fn lift_to_cover(n: usize, braid: &BTreeMap<i16, Vec<i16>>) -> BTreeMap<i16, Vec<i16>> {
    let mut images = BTreeMap::new();
    for j in 2..=n as i16 {
        let upstairs = substitute(&reduce(&[1, j]), braid);
        images.insert(j, rewrite_to_cover(&upstairs));
    }
    let delta = boundary_swapped(n);
    if !conjugate_words(&substitute(&delta, &images), &delta) {
        for w in images.values_mut() {
            *w = flip(w);
        }
    }
    assert!(
        conjugate_words(&substitute(&delta, &images), &delta),
        "lifted twist must fix each boundary circle"
    );
    images
}

/// Caps the sheet-swapping boundary circle: `vn` becomes `v2^-1 v3 ...
/// v(n-1)`, leaving a free basis `v2..v(n-1)` for the once-holed surface.
fn cap(n: usize, w: &[i16]) -> Vec<i16> {
    let vn: Vec<i16> =
        (2..n as i16).map(|j| if j % 2 == 0 { -j } else { j }).collect();
    let mut images: BTreeMap<i16, Vec<i16>> = (2..n as i16).map(|j| (j, vec![j])).collect();
    images.insert(n as i16, vn);
    substitute(w, &images)
}

/// Translates a capped cover word to standard-rank letters: cover basis
/// element `vj` is the `(j-1)`-th chain letter, inverted on odd `j` so the
/// capped boundary reads as a positive chain word.
fn cover_to_chain(genus: usize, w: &[i16]) -> SurfaceWord {
    let letters: Vec<i16> = w
        .iter()
        .map(|&l| {
            let j = l.abs();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            (j - 1) * l.signum() * sign
        })
        .collect();
    SurfaceWord::from_letters(genus, &letters)
}

/// Standard generators written in the chain letters `a1..a2g`: `xk` is
/// `a(2k-1) a(2k)` and `yk` is `a(2k+1) ... a(2g) a(2k)`.
fn chain_basis_images(genus: usize) -> Vec<SurfaceWord> {
    let mut images = Vec::with_capacity(2 * genus);
    for k in 1..=genus {
        let xk = [(2 * k - 1) as i16, (2 * k) as i16];
        images.push(SurfaceWord::from_letters(genus, &xk));
        let mut yk: Vec<i16> = ((2 * k + 1)..=(2 * genus)).map(|m| m as i16).collect();
        yk.push((2 * k) as i16);
        images.push(SurfaceWord::from_letters(genus, &yk));
    }
    images
}

/// Inverse of [`chain_basis_images`]: chain letter images in the standard
/// generators.
fn chain_basis_inverse(genus: usize) -> Vec<SurfaceWord> {
    let mut images = Vec::with_capacity(2 * genus);
    let x = |k: usize| (2 * k - 1) as i16;
    let y = |k: usize| (2 * k) as i16;
    for k in 1..=genus {
        let mut odd: Vec<i16> = vec![x(k), -y(k)];
        odd.extend((k + 1..=genus).map(x));
        images.push(SurfaceWord::from_letters(genus, &odd));
        let mut even: Vec<i16> = (k + 1..=genus).rev().map(|m| -x(m)).collect();
        even.push(y(k));
        images.push(SurfaceWord::from_letters(genus, &even));
    }
    images
}

/// The word the capped chain letters spell for the surface relator:
/// `a1 a2 ... a2g a1^-1 a2^-1 ... a2g^-1`.
fn chain_relator(genus: usize) -> SurfaceWord {
    let mut letters: Vec<i16> = (1..=2 * genus as i16).collect();
    letters.extend(1..=2 * genus as i16);
    let n = 2 * genus;
    for l in letters[n..].iter_mut() {
        *l = -*l;
    }
    SurfaceWord::from_letters(genus, &letters)
}

fn genus_one_twists() -> Vec<TwistAutomorphism> {
    let x = SurfaceWord::x(1, 1);
    let y = SurfaceWord::y(1, 1);
    let make = |name: &str, inverse_name: &str, images: Vec<SurfaceWord>| TwistAutomorphism {
        name: String::from(name),
        inverse_name: String::from(inverse_name),
        genus: 1,
        images,
    };
    vec![
        make("t1", "t1^-1", vec![x.clone(), y.concat(&x)]),
        make("t1^-1", "t1", vec![x.clone(), y.concat(&x.inverse())]),
        make("t2", "t2^-1", vec![x.concat(&y.inverse()), y.clone()]),
        make("t2^-1", "t2", vec![x.concat(&y), y.clone()]),
    ]
}

/// Builds the twists for the given genus. Every returned substitution is
/// checked to carry the relator to a conjugate of itself.
pub fn twist_set(genus: usize) -> TwistSet {
    assert!(genus >= 1, "genus must be at least 1");
    let twists = if genus == 1 { genus_one_twists() } else { chain_twists(genus) };
    let relator = SurfaceWord::relator(genus);
    for t in &twists {
        assert_eq!(t.images.len(), 2 * genus);
        assert!(
            free_conjugate(&t.apply(&relator), &relator),
            "twist {} must preserve the relator class",
            t.name
        );
    }
    TwistSet { genus, twists, known_complete: genus <= 2 }
}

fn chain_twists(genus: usize) -> Vec<TwistAutomorphism> {
    let n = 2 * genus + 2;
    let psi = chain_basis_images(genus);
    let psi_inv = chain_basis_inverse(genus);
    // The two base changes must invert each other and carry the relator
    // exactly onto the capped boundary word.
    for slot in 0..2 * genus {
        let gen = SurfaceWord::letter(genus, slot, false);
        assert_eq!(psi[slot].substitute(&psi_inv), gen, "basis change inverse (slot {slot})");
        assert_eq!(psi_inv[slot].substitute(&psi), gen, "basis change inverse (slot {slot})");
    }
    assert_eq!(
        SurfaceWord::relator(genus).substitute(&psi),
        chain_relator(genus),
        "basis change must align the relator with the capped boundary"
    );

    let mut twists = Vec::with_capacity(2 * (n - 1));
    for i in 1..n {
        for inverse in [false, true] {
            let braid = half_twist(n, i, inverse);
            let cover = lift_to_cover(n, &braid);
            // Chain letter a_m is v(m+1), inverted on even m; build its
            // capped image and conjugate back to the standard basis.
            let mut chain_images = Vec::with_capacity(2 * genus);
            for m in 1..=2 * genus {
                let j = (m + 1) as i16;
                let img = cover_to_chain(genus, &cap(n, &cover[&j]));
                chain_images.push(if m % 2 == 0 { img.inverse() } else { img });
            }
            let images: Vec<SurfaceWord> = psi
                .iter()
                .map(|w| w.substitute(&chain_images).substitute(&psi_inv))
                .collect();
            let (name, inverse_name) = if inverse {
                (format!("t{i}^-1"), format!("t{i}"))
            } else {
                (format!("t{i}"), format!("t{i}^-1"))
            };
            twists.push(TwistAutomorphism { name, inverse_name, genus, images });
        }
    }
    twists
}
