//! Canonical text serialization of finite groups.
//!
//! Format: a first line `order n`, then `n` lines of `n` space-separated
//! element indices (`table[a][b]` = index of `a * b`), then one optional
//! `label i <text>` line per element. Rendering a parsed group reproduces
//! the input byte for byte, which lets files double as cache keys.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::group::{BuildError, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    /// The text does not follow the serialization grammar.
    Malformed { line: usize, reason: String },
    /// The table parsed but is not a group.
    Invalid(BuildError),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Malformed { line, reason } => {
                write!(f, "line {line}: {reason}")
            }
            FormatError::Invalid(e) => write!(f, "not a group table: {e}"),
        }
    }
}

impl core::error::Error for FormatError {}

/// Renders `g` in the canonical text format.
pub fn render_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = String::new();
    let _ = writeln!(out, "order {n}");
    for a in 0..n {
        for b in 0..n {
            if b > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", g.table()[a * n + b]);
        }
        out.push('\n');
    }
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "label {i} {l}");
        }
    }
    out
}

/// Parses the canonical text format back into a validated group.
pub fn parse_group(text: &str) -> Result<FiniteGroup, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| FormatError::Malformed {
        line: 1,
        reason: "empty input".to_string(),
    })?;
    let n: usize = first
        .strip_prefix("order ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FormatError::Malformed {
            line: 1,
            reason: format!("expected `order n`, got {first:?}"),
        })?;

    let mut flat: Vec<u16> = Vec::with_capacity(n * n);
    for row in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| FormatError::Malformed {
            line: row + 2,
            reason: "missing table row".to_string(),
        })?;
        let mut count = 0;
        for tok in line.split(' ') {
            let v: u16 = tok.parse().map_err(|_| FormatError::Malformed {
                line: ln + 1,
                reason: format!("bad table entry {tok:?}"),
            })?;
            flat.push(v);
            count += 1;
        }
        if count != n {
            return Err(FormatError::Malformed {
                line: ln + 1,
                reason: format!("expected {n} entries, got {count}"),
            });
        }
    }

    let mut labels: Option<Vec<String>> = None;
    for (ln, line) in lines {
        if line.is_empty() {
            continue;
        }
        let rest = line.strip_prefix("label ").ok_or_else(|| FormatError::Malformed {
            line: ln + 1,
            reason: format!("expected `label i text`, got {line:?}"),
        })?;
        let (idx, text) = rest.split_once(' ').ok_or_else(|| FormatError::Malformed {
            line: ln + 1,
            reason: "label line needs an index and text".to_string(),
        })?;
        let i: usize = idx.parse().map_err(|_| FormatError::Malformed {
            line: ln + 1,
            reason: format!("bad label index {idx:?}"),
        })?;
        if i >= n {
            return Err(FormatError::Malformed {
                line: ln + 1,
                reason: format!("label index {i} out of range"),
            });
        }
        let slot = labels.get_or_insert_with(|| {
            (0..n).map(|j| j.to_string()).collect()
        });
        slot[i] = text.to_string();
    }

    FiniteGroup::from_flat(flat, n, labels).map_err(FormatError::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn render_then_parse_round_trips() {
        for g in [
            construct::cyclic(1),
            construct::cyclic(4),
            construct::symmetric(3),
            construct::quaternion8(),
            construct::dihedral(12),
        ] {
            let text = render_group(&g);
            let back = parse_group(&text).unwrap();
            assert_eq!(back.order(), g.order());
            assert_eq!(back.table(), g.table());
            assert_eq!(back.labels(), g.labels());
            // Bit-exact second render.
            assert_eq!(render_group(&back), text);
        }
    }

    #[test]
    fn labels_may_contain_spaces() {
        let mut g = construct::cyclic(2);
        g.set_labels(vec!["the identity".to_string(), "a flip".to_string()]);
        let text = render_group(&g);
        let back = parse_group(&text).unwrap();
        assert_eq!(back.label(0), Some("the identity"));
        assert_eq!(back.label(1), Some("a flip"));
        assert_eq!(render_group(&back), text);
    }

    #[test]
    fn unlabeled_groups_stay_unlabeled() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let text = render_group(&g);
        assert!(!text.contains("label"));
        assert!(parse_group(&text).unwrap().labels().is_none());
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(matches!(parse_group(""), Err(FormatError::Malformed { line: 1, .. })));
        assert!(matches!(
            parse_group("order x\n"),
            Err(FormatError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_group("order 2\n0 1\n"),
            Err(FormatError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_group("order 2\n0 1 1\n1 0\n"),
            Err(FormatError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_group("order 2\n0 1\n1 0\nnot a label\n"),
            Err(FormatError::Malformed { line: 4, .. })
        ));
    }

    #[test]
    fn non_group_table_rejected() {
        let text = "order 2\n0 1\n1 1\n";
        assert!(matches!(parse_group(text), Err(FormatError::Invalid(_))));
    }
}
