//! Freely reduced words in the standard generators of a closed surface group.
//!
//! For genus `g` the generators are `x1, y1, ..., xg, yg`. A word is stored as
//! a sequence of nonzero `i16` letters: letter `+(s+1)` is generator slot `s`,
//! `-(s+1)` its inverse, with `xk` in slot `2(k-1)` and `yk` in slot
//! `2(k-1)+1`. Words are always kept freely reduced.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

/// A freely reduced word in the rank-`2g` free group on the surface
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceWord {
    genus: usize,
    letters: Vec<i16>,
}

fn push_reduced(out: &mut Vec<i16>, letter: i16) {
    debug_assert!(letter != 0);
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl SurfaceWord {
    /// The empty word.
    pub fn identity(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be at least 1");
        SurfaceWord { genus, letters: Vec::new() }
    }

    /// Builds and reduces a word from raw letters. Panics if a letter is zero
    /// or references a slot outside `0..2*genus`.
    pub fn from_letters(genus: usize, letters: &[i16]) -> Self {
        assert!(genus >= 1, "genus must be at least 1");
        let max = (2 * genus) as i16;
        let mut reduced = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0 && l.abs() <= max, "letter {l} out of range for genus {genus}");
            push_reduced(&mut reduced, l);
        }
        SurfaceWord { genus, letters: reduced }
    }

    /// The generator `xk` (1-based).
    pub fn x(genus: usize, k: usize) -> Self {
        assert!((1..=genus).contains(&k), "x{k} undefined at genus {genus}");
        SurfaceWord { genus, letters: vec![(2 * (k - 1) + 1) as i16] }
    }

    /// The generator `yk` (1-based).
    pub fn y(genus: usize, k: usize) -> Self {
        assert!((1..=genus).contains(&k), "y{k} undefined at genus {genus}");
        SurfaceWord { genus, letters: vec![(2 * (k - 1) + 2) as i16] }
    }

    /// Single letter in slot `s`, inverted if `inverse`.
    pub fn letter(genus: usize, slot: usize, inverse: bool) -> Self {
        assert!(slot < 2 * genus, "slot {slot} out of range for genus {genus}");
        let l = (slot + 1) as i16;
        SurfaceWord { genus, letters: vec![if inverse { -l } else { l }] }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[i16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        SurfaceWord {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// `self · other`, reduced at the seam.
    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        SurfaceWord { genus: self.genus, letters }
    }

    /// `z · self · z⁻¹`.
    pub fn conjugate_by(&self, z: &Self) -> Self {
        z.concat(self).concat(&z.inverse())
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// The defining relator `[x1,y1][x2,y2]...[xg,yg]`.
    pub fn relator(genus: usize) -> Self {
        Self::commutator_prefix(genus, genus)
    }

    /// `[x1,y1]...[xm,ym]` for `0 <= m <= genus`.
    pub fn commutator_prefix(genus: usize, m: usize) -> Self {
        assert!(m <= genus, "prefix length {m} exceeds genus {genus}");
        let mut w = Self::identity(genus);
        for i in 1..=m {
            w = w.concat(&Self::commutator(&Self::x(genus, i), &Self::y(genus, i)));
        }
        w
    }

    /// Rewrites each generator slot `s` to `images[s]` (inverted letters map
    /// to the inverse image). All images must share a genus, which becomes
    /// the genus of the result.
    pub fn substitute(&self, images: &[SurfaceWord]) -> Self {
        assert_eq!(images.len(), 2 * self.genus, "need one image per generator");
        let target = images[0].genus;
        assert!(
            images.iter().all(|w| w.genus == target),
            "substitution images have mixed genus"
        );
        let mut out = Self::identity(target);
        for &l in &self.letters {
            let img = &images[(l.abs() - 1) as usize];
            out = if l > 0 { out.concat(img) } else { out.concat(&img.inverse()) };
        }
        out
    }

    /// Cyclically reduced core: strips matching first/last letter pairs.
    pub fn cyclic_reduction(&self) -> Self {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && *letters.first().unwrap() == -*letters.last().unwrap() {
            letters.pop();
            letters.remove(0);
        }
        SurfaceWord { genus: self.genus, letters }
    }

    /// Renders as space-separated letters, uppercase for inverses: the
    /// commutator of the first handle is `"x1 y1 X1 Y1"`. The empty word
    /// renders as `"e"`.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return String::from("e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                let slot = (l.abs() - 1) as usize;
                let k = slot / 2 + 1;
                match (slot % 2, l > 0) {
                    (0, true) => format!("x{k}"),
                    (0, false) => format!("X{k}"),
                    (1, true) => format!("y{k}"),
                    (1, false) => format!("Y{k}"),
                    _ => unreachable!(),
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses the [`render`](Self::render) format.
    pub fn parse(genus: usize, s: &str) -> Result<Self, WordParseError> {
        assert!(genus >= 1, "genus must be at least 1");
        let trimmed = s.trim();
        if trimmed == "e" {
            return Ok(Self::identity(genus));
        }
        let mut letters = Vec::new();
        for tok in trimmed.split_whitespace() {
            let mut chars = tok.chars();
            let head = chars.next().ok_or_else(|| WordParseError::bad(tok))?;
            let k: usize = chars.as_str().parse().map_err(|_| WordParseError::bad(tok))?;
            if k < 1 || k > genus {
                return Err(WordParseError {
                    token: String::from(tok),
                    reason: ParseIssue::HandleOutOfRange { genus },
                });
            }
            let slot = match head {
                'x' | 'X' => 2 * (k - 1),
                'y' | 'Y' => 2 * (k - 1) + 1,
                _ => return Err(WordParseError::bad(tok)),
            };
            let l = (slot + 1) as i16;
            letters.push(if head.is_lowercase() { l } else { -l });
        }
        Ok(Self::from_letters(genus, &letters))
    }
}

/// A token that could not be read as a generator letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordParseError {
    token: String,
    reason: ParseIssue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ParseIssue {
    Malformed,
    HandleOutOfRange { genus: usize },
}

impl WordParseError {
    fn bad(token: &str) -> Self {
        WordParseError { token: String::from(token), reason: ParseIssue::Malformed }
    }
}

impl core::fmt::Display for WordParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.reason {
            ParseIssue::Malformed => write!(f, "unrecognized letter {:?}", self.token),
            ParseIssue::HandleOutOfRange { genus } => {
                write!(f, "letter {:?} outside genus-{genus} alphabet", self.token)
            }
        }
    }
}

impl core::error::Error for WordParseError {}

/// True when `a` and `b` are conjugate in the ambient free group, decided by
/// comparing cyclically reduced cores up to rotation.
pub fn free_conjugate(a: &SurfaceWord, b: &SurfaceWord) -> bool {
    assert_eq!(a.genus(), b.genus(), "genus mismatch");
    let ca = a.cyclic_reduction();
    let cb = b.cyclic_reduction();
    if ca.len() != cb.len() {
        return false;
    }
    if ca.is_empty() {
        return true;
    }
    let doubled: Vec<i16> = cb.letters.iter().chain(cb.letters.iter()).copied().collect();
    doubled.windows(ca.len()).any(|w| w == ca.letters.as_slice())
}
