//! Group specifications accepted by `--group`: construction names, catalog
//! indices like `24#14`, or a path to a multiplication-table file.

use std::fs;

use scc_core::catalog::build_catalog;
use scc_core::construct;
use scc_core::format;
use scc_core::heisenberg::HeisenbergGroup;
use scc_core::FiniteGroup;
use thiserror::Error;

use crate::report::catalog_fingerprint;

pub enum GroupSource {
    /// A fully materialized multiplication table.
    Table { name: String, group: FiniteGroup },
    /// A central-extension family instance that may be too large to
    /// tabulate; products are computed from coordinates on demand.
    Family { name: String, family: HeisenbergGroup },
}

impl GroupSource {
    pub fn name(&self) -> &str {
        match self {
            GroupSource::Table { name, .. } => name,
            GroupSource::Family { name, .. } => name,
        }
    }
}

/// A parsed `--group` argument, with the catalog fingerprint when the spec
/// addressed a catalog entry.
pub struct ResolvedGroup {
    pub source: GroupSource,
    pub catalog_fingerprint: Option<String>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("unrecognized group spec `{0}` (not a construction name, catalog index, or readable file)")]
    Unknown(String),
    #[error("bad family parameters in `{0}`: expected Gk:k=<k>,g=<g> with k >= 2, g >= 2")]
    BadFamily(String),
    #[error("catalog has no entry {order}#{position}")]
    CatalogMiss { order: usize, position: usize },
    #[error("symmetric group spec `S{0}` out of range (2..=6)")]
    SymmetricRange(usize),
    #[error("reading `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parsing `{path}`: {message}")]
    Format { path: String, message: String },
}

fn table(name: &str, group: FiniteGroup) -> ResolvedGroup {
    ResolvedGroup {
        source: GroupSource::Table { name: name.to_string(), group },
        catalog_fingerprint: None,
    }
}

fn family(name: &str, k: u32, genus: usize) -> ResolvedGroup {
    ResolvedGroup {
        source: GroupSource::Family { name: name.to_string(), family: HeisenbergGroup::new(k, genus) },
        catalog_fingerprint: None,
    }
}

fn parse_family(spec: &str) -> Result<ResolvedGroup, SpecError> {
    let params = spec.strip_prefix("Gk:").expect("caller checked the prefix");
    let (mut k, mut g) = (None, None);
    for part in params.split(',') {
        match part.split_once('=') {
            Some(("k", v)) => k = v.parse::<u32>().ok(),
            Some(("g", v)) => g = v.parse::<usize>().ok(),
            _ => return Err(SpecError::BadFamily(spec.to_string())),
        }
    }
    match (k, g) {
        (Some(k), Some(g)) if k >= 2 && g >= 2 => Ok(family(spec, k, g)),
        _ => Err(SpecError::BadFamily(spec.to_string())),
    }
}

fn parse_catalog_index(order: usize, position: usize) -> Result<ResolvedGroup, SpecError> {
    let catalog = build_catalog(order);
    let fingerprint = catalog_fingerprint(&catalog);
    let entry = catalog
        .iter()
        .find(|e| e.order == order && e.position == position)
        .ok_or(SpecError::CatalogMiss { order, position })?;
    Ok(ResolvedGroup {
        source: GroupSource::Table { name: entry.name(), group: entry.group.clone() },
        catalog_fingerprint: Some(fingerprint),
    })
}

fn parse_table_file(spec: &str) -> Result<ResolvedGroup, SpecError> {
    let text = fs::read_to_string(spec)
        .map_err(|source| SpecError::Io { path: spec.to_string(), source })?;
    let group = format::parse_group(&text)
        .map_err(|e| SpecError::Format { path: spec.to_string(), message: e.to_string() })?;
    Ok(table(spec, group))
}

/// Parses a group spec. Catalog indices build the catalog up to the named
/// order, so the result carries the fingerprint the entry was drawn from.
pub fn parse_group_spec(spec: &str) -> Result<ResolvedGroup, SpecError> {
    match spec {
        "G2" => return Ok(family(spec, 2, 2)),
        "Klein4" => return Ok(table(spec, construct::klein_four())),
        "SL2Z3" => return Ok(table(spec, construct::sl2_z3())),
        "S4" => return Ok(table(spec, construct::s4_as_extension())),
        "Q8" => return Ok(table(spec, construct::quaternion8())),
        _ => {}
    }
    if spec.starts_with("Gk:") {
        return parse_family(spec);
    }
    if let Some(n) = spec.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(table(spec, construct::cyclic(n)));
        }
    }
    if let Some(n) = spec.strip_prefix('S').and_then(|s| s.parse::<usize>().ok()) {
        return if (2..=6).contains(&n) {
            Ok(table(spec, construct::symmetric(n)))
        } else {
            Err(SpecError::SymmetricRange(n))
        };
    }
    if let Some(n) = spec.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(table(spec, construct::dihedral(n)));
        }
    }
    if let Some((order, position)) = spec.split_once('#') {
        if let (Ok(order), Ok(position)) = (order.parse(), position.parse()) {
            return parse_catalog_index(order, position);
        }
    }
    if fs::metadata(spec).is_ok() {
        return parse_table_file(spec);
    }
    Err(SpecError::Unknown(spec.to_string()))
}
