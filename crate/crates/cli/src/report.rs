//! Report envelope and verdict cache.
//!
//! Every command prints one JSON document: a manifest describing the
//! invocation and a `verdict` section that is byte-identical across reruns
//! with the same parameters, tool version, and catalog fingerprint. Wall
//! time and cache status live in the manifest, outside the verdict.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use scc_core::catalog::CatalogEntry;
use scc_core::format;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hash of the catalog contents: entry names, fingerprints, and full tables.
pub fn catalog_fingerprint(catalog: &[CatalogEntry]) -> String {
    let mut hasher = Sha256::new();
    for e in catalog {
        hasher.update(e.name().as_bytes());
        hasher.update([b'\n']);
        hasher.update(e.fingerprint.to_string().as_bytes());
        hasher.update([b'\n']);
        hasher.update(format::render_group(&e.group).as_bytes());
        hasher.update([0u8]);
    }
    hex::encode(hasher.finalize())
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum CacheState {
    Hit,
    Miss,
    Disabled,
}

impl CacheState {
    fn as_str(self) -> &'static str {
        match self {
            CacheState::Hit => "hit",
            CacheState::Miss => "miss",
            CacheState::Disabled => "disabled",
        }
    }
}

/// Verdict cache under `--cache-dir` or `SCC_SIEVE_CACHE`; absent both, a
/// no-op.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn resolve(flag: Option<&Path>) -> Cache {
        let dir = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os("SCC_SIEVE_CACHE").map(PathBuf::from));
        Cache { dir }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn load(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, verdict: &Value) {
        let Some(path) = self.path(key) else { return };
        if let Some(dir) = path.parent() {
            if fs::create_dir_all(dir).is_err() {
                return;
            }
        }
        let _ = fs::write(path, serde_json::to_string_pretty(verdict).unwrap_or_default());
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    parameters: &'a BTreeMap<String, String>,
    tool_version: &'a str,
    catalog_fingerprint: Option<&'a str>,
    wall_ms: u128,
    cache: &'a str,
    verdict_summary: &'a str,
}

#[derive(Serialize)]
struct Report<'a> {
    manifest: RunManifest<'a>,
    verdict: &'a Value,
}

/// Accumulates the manifest while a command runs.
pub struct ReportBuilder {
    command: &'static str,
    parameters: BTreeMap<String, String>,
    catalog_fingerprint: Option<String>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: &'static str) -> Self {
        ReportBuilder {
            command,
            parameters: BTreeMap::new(),
            catalog_fingerprint: None,
            start: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn catalog(&mut self, fingerprint: &str) {
        self.catalog_fingerprint = Some(fingerprint.to_string());
    }

    /// Cache key over everything the verdict section depends on.
    pub fn cache_key(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.command.as_bytes());
        hasher.update([0u8]);
        for (k, v) in &self.parameters {
            hasher.update(k.as_bytes());
            hasher.update([b'=']);
            hasher.update(v.as_bytes());
            hasher.update([0u8]);
        }
        hasher.update(self.catalog_fingerprint.as_deref().unwrap_or("-").as_bytes());
        hasher.update([0u8]);
        hasher.update(TOOL_VERSION.as_bytes());
        hex::encode(hasher.finalize())
    }

    /// Returns the verdict from the cache when present and revalidated.
    pub fn cached(&self, cache: &Cache, revalidate: impl Fn(&Value) -> bool) -> Option<Value> {
        let verdict = cache.load(&self.cache_key())?;
        if revalidate(&verdict) {
            Some(verdict)
        } else {
            eprintln!("[scc-sieve] cached verdict failed revalidation; recomputing");
            None
        }
    }

    pub fn render(self, verdict: &Value, summary: &str, cache: CacheState) -> String {
        let report = Report {
            manifest: RunManifest {
                command: self.command,
                parameters: &self.parameters,
                tool_version: TOOL_VERSION,
                catalog_fingerprint: self.catalog_fingerprint.as_deref(),
                wall_ms: self.start.elapsed().as_millis(),
                cache: cache.as_str(),
                verdict_summary: summary,
            },
            verdict,
        };
        serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
    }
}
