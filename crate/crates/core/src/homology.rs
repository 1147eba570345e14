//! First homology of the surface with `Z_k` coefficients.
//!
//! Generator slots follow [`SurfaceWord`]: the class of a word is its vector
//! of exponent sums. The intersection pairing is the standard symplectic form
//! in which each handle pair `(xi, yi)` meets exactly once (with sign).

use alloc::vec;
use alloc::vec::Vec;

use crate::word::SurfaceWord;

fn reduce(v: i64, modulus: u32) -> u32 {
    v.rem_euclid(modulus as i64) as u32
}

/// Exponent-sum vector of `w` mod `modulus`, one entry per generator slot.
pub fn homology_class(w: &SurfaceWord, modulus: u32) -> Vec<u32> {
    assert!(modulus >= 2, "need a modulus of at least 2");
    let mut sums = vec![0i64; 2 * w.genus()];
    for &l in w.letters() {
        sums[(l.abs() - 1) as usize] += if l > 0 { 1 } else { -1 };
    }
    sums.into_iter().map(|s| reduce(s, modulus)).collect()
}

/// Algebraic intersection number of two classes mod `modulus`:
/// `sum_i u_y(i) v_x(i) - v_y(i) u_x(i)`.
///
/// The sign convention matches the central commutator identity in the
/// `heisenberg` module, so that the commutator of two evaluated words reads
/// off exactly this pairing; the two conventions only differ mod k > 2.
pub fn intersection(u: &[u32], v: &[u32], modulus: u32) -> u32 {
    assert_eq!(u.len(), v.len());
    assert!(u.len() % 2 == 0);
    let mut acc = 0i64;
    for i in 0..u.len() / 2 {
        acc += u[2 * i + 1] as i64 * v[2 * i] as i64;
        acc -= v[2 * i + 1] as i64 * u[2 * i] as i64;
    }
    reduce(acc, modulus)
}

/// Matrix (rows x columns, row-major) of the map on homology sending
/// generator `j` to `images[j]`, with entries mod `modulus`. Column `j` is
/// the class of `images[j]`.
pub fn homology_matrix(images: &[SurfaceWord], modulus: u32) -> Vec<Vec<u32>> {
    assert!(!images.is_empty());
    let rows = 2 * images[0].genus();
    assert_eq!(images.len(), rows, "need one image per generator slot");
    let mut m = vec![vec![0u32; rows]; rows];
    for (j, w) in images.iter().enumerate() {
        for (i, c) in homology_class(w, modulus).into_iter().enumerate() {
            m[i][j] = c;
        }
    }
    m
}

pub fn identity_matrix(n: usize, modulus: u32) -> Vec<Vec<u32>> {
    let _ = modulus;
    let mut m = vec![vec![0u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], modulus: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    assert!(n > 0 && b.len() == n);
    let mut out = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0i64;
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] as i64 * bk[j] as i64;
            }
            out[i][j] = reduce(acc, modulus);
        }
    }
    out
}

fn symplectic_form(n: usize, modulus: u32) -> Vec<Vec<u32>> {
    assert!(n % 2 == 0);
    let mut j = vec![vec![0u32; n]; n];
    for i in 0..n / 2 {
        j[2 * i][2 * i + 1] = 1;
        j[2 * i + 1][2 * i] = modulus - 1;
    }
    j
}

/// True when `m` preserves the intersection form mod `modulus`, i.e.
/// `m^T J m = J`.
pub fn is_symplectic(m: &[Vec<u32>], modulus: u32) -> bool {
    let n = m.len();
    if n == 0 || n % 2 != 0 || m.iter().any(|r| r.len() != n) {
        return false;
    }
    let j = symplectic_form(n, modulus);
    let mut mt = vec![vec![0u32; n]; n];
    for (r, row) in m.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            mt[c][r] = v;
        }
    }
    mat_mul(&mat_mul(&mt, &j, modulus), m, modulus) == j
}
