//! Decides whether a surface-group homomorphism has a simple closed curve in
//! its kernel.
//!
//! Up to homeomorphism there are finitely many simple closed curves on a
//! closed surface: one nonseparating type, and one separating type for each
//! way of splitting the genus. A hom therefore kills a simple closed curve
//! iff some composition with a mapping-class automorphism kills a *standard*
//! curve. The search walks the orbit of the hom's conjugation class under a
//! fixed twist set (kernels only depend on the class), checking the standard
//! curves at every visited class and recording the twist path as a replayable
//! certificate when one dies.
//!
//! A "no" answer is only sound when the walk saw the entire orbit: the twist
//! set must be known to generate the full mapping class group action and the
//! search must not have been truncated by its budgets. Otherwise the verdict
//! degrades to inconclusive rather than overclaiming.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::group::FiniteGroup;
use crate::hom::{self, BudgetExceeded, SurfaceHom};
use crate::subgroup;
use crate::twist::{twist_set, TwistSet};
use crate::word::SurfaceWord;

/// A named test curve: the word of a standard simple closed curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardCurve {
    name: String,
    word: SurfaceWord,
    separating: bool,
}

impl StandardCurve {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn word(&self) -> &SurfaceWord {
        &self.word
    }

    /// True for the separating curves; false for the nonseparating one.
    pub fn separating(&self) -> bool {
        self.separating
    }
}

/// The standard simple closed curves tested by the decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardCurveSet {
    genus: usize,
    curves: Vec<StandardCurve>,
}

impl StandardCurveSet {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn curves(&self) -> &[StandardCurve] {
        &self.curves
    }

    pub fn by_name(&self, name: &str) -> Option<&StandardCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// The subset holding only the named curve.
    pub fn only(&self, name: &str) -> Option<StandardCurveSet> {
        self.by_name(name)
            .map(|c| StandardCurveSet { genus: self.genus, curves: vec![c.clone()] })
    }
}

/// One representative per homeomorphism type of simple closed curve:
/// the nonseparating `x1`, and the separating curves `c_m` (the product of
/// the first `m` commutators, which bounds a genus-`m` piece) for
/// `m = 1..=genus/2`. With `extended` set, all `m = 1..=genus-1` appear;
/// the extra words are homeomorphic to earlier ones but useful for targeted
/// certificates. `c_genus` is never included, being the relator itself.
pub fn standard_curves(genus: usize, extended: bool) -> StandardCurveSet {
    assert!(genus >= 1, "surface genus must be at least 1");
    let mut curves = vec![StandardCurve {
        name: "x1".to_string(),
        word: SurfaceWord::x(genus, 1),
        separating: false,
    }];
    let top = if extended { genus - 1 } else { genus / 2 };
    for m in 1..=top {
        curves.push(StandardCurve {
            name: format!("c{m}"),
            word: SurfaceWord::commutator_prefix(genus, m),
            separating: true,
        });
    }
    StandardCurveSet { genus, curves }
}

/// Outcome of a decision run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// A simple closed curve in the kernel was exhibited.
    Geometric,
    /// The full orbit was searched with a complete twist set and no standard
    /// curve ever dies: no simple closed curve lies in the kernel.
    Nongeometric,
    /// The search was truncated or the twist set is not known to be
    /// complete, so absence of a kill proves nothing.
    Inconclusive,
}

/// Replayable witness for a geometric verdict: apply the named twists in
/// order to the original hom, then the named curve maps to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillCertificate {
    pub twists: Vec<String>,
    pub curve: String,
}

/// Search caps. `max_states` bounds the number of distinct canonical classes
/// stored; `max_depth` bounds the twist-word length explored (`None` means
/// unbounded, safe whenever orbits are finite and small).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeciderConfig {
    pub max_states: u64,
    pub max_depth: Option<u32>,
}

impl DeciderConfig {
    /// Defaults: five million classes; unbounded depth for genus <= 2 where
    /// the twist sets are complete, depth 20 beyond that.
    pub fn for_genus(genus: usize) -> Self {
        DeciderConfig {
            max_states: 5_000_000,
            max_depth: if genus <= 2 { None } else { Some(20) },
        }
    }
}

/// Full account of one decision run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    /// Present iff the verdict is geometric.
    pub certificate: Option<KillCertificate>,
    /// Distinct canonical classes visited.
    pub orbit_size: u64,
    /// Classes expanded (dequeued) before the search ended.
    pub states_explored: u64,
    /// True when a budget cut the search short of the full orbit.
    pub truncated: bool,
    pub depth_limit: Option<u32>,
}

// Twist data flattened to letter arrays for the inner loop.
struct CompiledTwists {
    names: Vec<String>,
    images: Vec<Vec<Vec<i16>>>,
    known_complete: bool,
}

impl CompiledTwists {
    fn new(set: &TwistSet) -> Self {
        CompiledTwists {
            names: set.twists().iter().map(|t| t.name().to_string()).collect(),
            images: set
                .twists()
                .iter()
                .map(|t| t.images().iter().map(|w| w.letters().to_vec()).collect())
                .collect(),
            known_complete: set.known_complete(),
        }
    }

    /// Keeps only the twists whose name passes `keep`.
    #[cfg(test)]
    fn filtered(set: &TwistSet, keep: impl Fn(&str) -> bool) -> Self {
        let mut c = CompiledTwists::new(set);
        let kept: Vec<usize> =
            (0..c.names.len()).filter(|&i| keep(&c.names[i])).collect();
        c.names = kept.iter().map(|&i| c.names[i].clone()).collect();
        c.images = kept.iter().map(|&i| c.images[i].clone()).collect();
        c
    }
}

fn eval_letters(group: &FiniteGroup, images: &[u16], letters: &[i16]) -> usize {
    let mut acc = group.id_idx();
    for &l in letters {
        let im = images[(l.unsigned_abs() as usize) - 1] as usize;
        let factor = if l > 0 { im } else { group.inv_idx(im) };
        acc = group.mul_idx(acc, factor);
    }
    acc
}

struct OrbitOutcome {
    /// Canonical image tuples, in discovery order; index 0 is the start.
    nodes: Vec<Vec<u16>>,
    /// Per node: (parent node, twist index into the compiled set).
    parents: Vec<(u32, u16)>,
    /// Node and curve index of the first kill found, if any.
    kill: Option<(u32, usize)>,
    states_explored: u64,
    truncated: bool,
}

/// Breadth-first walk over canonical classes. Stops early at the first kill;
/// otherwise runs to orbit closure or a budget.
fn orbit_search(
    group: &FiniteGroup,
    start: &SurfaceHom,
    curves: &[(usize, Vec<i16>)],
    twists: &CompiledTwists,
    config: &DeciderConfig,
) -> OrbitOutcome {
    let kills = |images: &[u16]| -> Option<usize> {
        curves
            .iter()
            .position(|(_, letters)| eval_letters(group, images, letters) == group.id_idx())
    };

    let mut root = start.indices().to_vec();
    hom::canonicalize(group, &mut root);

    let mut nodes = vec![root.clone()];
    let mut parents = vec![(u32::MAX, u16::MAX)];
    let mut depth = vec![0u32];
    let mut index: BTreeMap<Vec<u16>, u32> = BTreeMap::new();
    index.insert(root.clone(), 0);

    if let Some(c) = kills(&root) {
        return OrbitOutcome { nodes, parents, kill: Some((0, c)), states_explored: 0, truncated: false };
    }

    let mut queue: VecDeque<u32> = VecDeque::new();
    queue.push_back(0);
    let mut states_explored = 0u64;
    let mut truncated = false;
    let mut buf: Vec<u16> = vec![0; start.indices().len()];

    'search: while let Some(at) = queue.pop_front() {
        if let Some(cap) = config.max_depth {
            if depth[at as usize] >= cap {
                // Unexpanded frontier: the orbit may extend past what we saw.
                truncated = true;
                continue;
            }
        }
        states_explored += 1;
        for (ti, images) in twists.images.iter().enumerate() {
            let here = nodes[at as usize].clone();
            for (slot, word) in images.iter().enumerate() {
                buf[slot] = eval_letters(group, &here, word) as u16;
            }
            let mut next = buf.clone();
            hom::canonicalize(group, &mut next);
            if index.contains_key(&next) {
                continue;
            }
            if nodes.len() as u64 >= config.max_states {
                truncated = true;
                break 'search;
            }
            let id = nodes.len() as u32;
            index.insert(next.clone(), id);
            nodes.push(next.clone());
            parents.push((at, ti as u16));
            depth.push(depth[at as usize] + 1);
            queue.push_back(id);
            if let Some(c) = kills(&next) {
                return OrbitOutcome { nodes, parents, kill: Some((id, c)), states_explored, truncated };
            }
        }
    }

    OrbitOutcome { nodes, parents, kill: None, states_explored, truncated }
}

fn certificate_path(outcome: &OrbitOutcome, twists: &CompiledTwists, curve: &str) -> KillCertificate {
    let (mut at, _) = outcome.kill.expect("certificate requires a kill");
    let mut names = Vec::new();
    while at != 0 {
        let (parent, ti) = outcome.parents[at as usize];
        names.push(twists.names[ti as usize].clone());
        at = parent;
    }
    names.reverse();
    KillCertificate { twists: names, curve: curve.to_string() }
}

fn decide_compiled(
    group: &FiniteGroup,
    hom: &SurfaceHom,
    curves: &StandardCurveSet,
    twists: &CompiledTwists,
    config: &DeciderConfig,
) -> DecisionReport {
    let compiled: Vec<(usize, Vec<i16>)> = curves
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.word().letters().to_vec()))
        .collect();
    let outcome = orbit_search(group, hom, &compiled, twists, config);
    let (verdict, certificate) = match outcome.kill {
        Some((_, ci)) => {
            let name = curves.curves()[ci].name();
            (Verdict::Geometric, Some(certificate_path(&outcome, twists, name)))
        }
        None if !outcome.truncated && twists.known_complete => (Verdict::Nongeometric, None),
        None => (Verdict::Inconclusive, None),
    };
    DecisionReport {
        verdict,
        certificate,
        orbit_size: outcome.nodes.len() as u64,
        states_explored: outcome.states_explored,
        truncated: outcome.truncated,
        depth_limit: config.max_depth,
    }
}

/// Decides whether `hom` has a simple closed curve in its kernel, testing
/// the standard curve set for its genus.
pub fn is_geometric(group: &FiniteGroup, hom: &SurfaceHom, config: &DeciderConfig) -> DecisionReport {
    let set = twist_set(hom.genus());
    let curves = standard_curves(hom.genus(), false);
    decide_compiled(group, hom, &curves, &CompiledTwists::new(&set), config)
}

/// Searches for a twist path after which the named standard curve dies.
///
/// Unlike [`is_geometric`], only that single curve is tested, so the
/// certificate always names it. Accepts the extended curve names.
pub fn find_curve_kill(
    group: &FiniteGroup,
    hom: &SurfaceHom,
    curve: &str,
    config: &DeciderConfig,
) -> Option<KillCertificate> {
    let all = standard_curves(hom.genus(), true);
    let only = all.only(curve)?;
    let set = twist_set(hom.genus());
    let report = decide_compiled(group, hom, &only, &CompiledTwists::new(&set), config);
    report.certificate
}

/// Summary of deciding every surjective hom of one target group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupScan {
    pub genus: usize,
    /// True iff some class was certified nongeometric.
    pub exists_nongeometric: bool,
    /// Canonical representative of the first nongeometric class.
    pub witness: Option<SurfaceHom>,
    /// Surjective homs (not classes) covered by the scan.
    pub homs_scanned: u64,
    pub classes_scanned: u64,
    pub geometric_classes: u64,
    pub nongeometric_classes: u64,
    pub inconclusive_classes: u64,
    /// True when any per-class search hit a budget.
    pub truncated_any: bool,
    /// Set when a structural shortcut replaced the per-class search.
    pub note: Option<String>,
}

/// Decides every surjective hom from the genus-`genus` surface group to
/// `group`, sharing verdicts across twist orbits.
///
/// Only surjective homs are scanned: a non-surjective hom factors through a
/// proper subgroup, so its behaviour is that of a hom to a smaller group and
/// is covered when that group is scanned. For abelian targets and genus >= 2
/// no search is needed at all: `c1` is a product of commutators, so its image
/// is trivial under every hom and every hom is geometric.
///
/// `config.max_states` doubles as the enumeration budget; exceeding it is a
/// refusal, never a silent truncation.
pub fn scan_group(
    group: &FiniteGroup,
    genus: usize,
    config: &DeciderConfig,
) -> Result<GroupScan, BudgetExceeded> {
    assert!(genus >= 1, "surface genus must be at least 1");
    if genus >= 2 && group.is_abelian() {
        let homs = (group.order() as u64).pow(2 * genus as u32);
        return Ok(GroupScan {
            genus,
            exists_nongeometric: false,
            witness: None,
            homs_scanned: homs,
            classes_scanned: 0,
            geometric_classes: 0,
            nongeometric_classes: 0,
            inconclusive_classes: 0,
            truncated_any: false,
            note: Some(
                "abelian target: c1 maps to the identity under every hom, so all homs are geometric"
                    .to_string(),
            ),
        });
    }

    let set = twist_set(genus);
    let twists = CompiledTwists::new(&set);
    let curve_set = standard_curves(genus, false);
    let compiled: Vec<(usize, Vec<i16>)> = curve_set
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.word().letters().to_vec()))
        .collect();

    let classes = hom::enumerate_hom_classes(group, genus, true, Some(config.max_states))?;
    let homs_scanned = count_surjective(group, genus, Some(config.max_states))?;

    let mut verdicts: BTreeMap<Vec<u16>, Verdict> = BTreeMap::new();
    let mut scan = GroupScan {
        genus,
        exists_nongeometric: false,
        witness: None,
        homs_scanned,
        classes_scanned: classes.len() as u64,
        geometric_classes: 0,
        nongeometric_classes: 0,
        inconclusive_classes: 0,
        truncated_any: false,
        note: None,
    };

    for class in &classes {
        let verdict = match verdicts.get(class.indices()) {
            Some(&v) => v,
            None => {
                let outcome = orbit_search(group, class, &compiled, &twists, config);
                scan.truncated_any |= outcome.truncated;
                let verdict = match outcome.kill {
                    Some(_) => Verdict::Geometric,
                    None if !outcome.truncated && twists.known_complete => Verdict::Nongeometric,
                    None => Verdict::Inconclusive,
                };
                // Verdicts are orbit properties, so every visited class
                // shares this one; a truncated search only speaks for its
                // start point.
                if outcome.truncated {
                    verdicts.insert(class.indices().to_vec(), verdict);
                } else {
                    for node in outcome.nodes {
                        verdicts.insert(node, verdict);
                    }
                }
                verdict
            }
        };
        match verdict {
            Verdict::Geometric => scan.geometric_classes += 1,
            Verdict::Nongeometric => {
                scan.nongeometric_classes += 1;
                if scan.witness.is_none() {
                    scan.exists_nongeometric = true;
                    scan.witness = Some(class.clone());
                }
            }
            Verdict::Inconclusive => scan.inconclusive_classes += 1,
        }
    }
    Ok(scan)
}

fn count_surjective(
    group: &FiniteGroup,
    genus: usize,
    limit: Option<u64>,
) -> Result<u64, BudgetExceeded> {
    let mut memo: BTreeMap<Vec<u16>, bool> = BTreeMap::new();
    let mut count = 0u64;
    hom::for_each_hom(group, genus, limit, |h| {
        let mut key: Vec<u16> = h.indices().to_vec();
        key.sort_unstable();
        key.dedup();
        let full = *memo.entry(key).or_insert_with(|| hom::generates_all(group, h.indices()));
        if full {
            count += 1;
        }
    })?;
    Ok(count)
}

/// One row of the minimality table: does this group admit a surjective
/// genus-`genus` hom with no simple closed curve in its kernel?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityRow {
    pub name: String,
    pub order: usize,
    pub fingerprint: String,
    /// True when the group is a cyclic extension of an abelian group.
    pub cyclic_over_abelian: bool,
    pub exists_nongeometric: bool,
    pub witness: Option<String>,
    pub homs_scanned: u64,
    pub classes_scanned: u64,
    pub truncated: bool,
}

/// Scans a single catalog entry.
pub fn minimality_row(
    entry: &CatalogEntry,
    genus: usize,
    config: &DeciderConfig,
) -> Result<MinimalityRow, BudgetExceeded> {
    let scan = scan_group(&entry.group, genus, config)?;
    let cea = subgroup::cyclic_extension_of_abelian(&entry.group).is_some();
    Ok(MinimalityRow {
        name: entry.name(),
        order: entry.order,
        fingerprint: entry.fingerprint.to_string(),
        cyclic_over_abelian: cea,
        exists_nongeometric: scan.exists_nongeometric,
        witness: scan.witness.as_ref().map(|h| h.render()),
        homs_scanned: scan.homs_scanned,
        classes_scanned: scan.classes_scanned,
        truncated: scan.truncated_any,
    })
}

/// Scans every catalog entry in order. Callers wanting parallelism can map
/// [`minimality_row`] over entries themselves; rows are independent.
pub fn minimality_scan(
    catalog: &[CatalogEntry],
    genus: usize,
    config: &DeciderConfig,
) -> Result<Vec<MinimalityRow>, BudgetExceeded> {
    catalog.iter().map(|e| minimality_row(e, genus, config)).collect()
}

/// Checks that every surjective genus-2 hom onto a cyclic group can be
/// twisted into the normal form sending `x1` to a generator and the other
/// three generators to the identity.
///
/// This is the classical normal form for epimorphisms to cyclic groups; the
/// orbit search verifies it exhaustively for the given target.
pub fn nielsen_normal_form_check(group: &FiniteGroup, config: &DeciderConfig) -> bool {
    assert!(group.is_cyclic(), "normal-form check is for cyclic targets");
    let genus = 2;
    let set = twist_set(genus);
    let twists = CompiledTwists::new(&set);

    let n = group.order();
    let mut targets: Vec<Vec<u16>> = Vec::new();
    let e = group.id_idx() as u16;
    for a in 0..n {
        if group.order_idx(a) == n {
            let mut tuple = vec![a as u16, e, e, e];
            hom::canonicalize(group, &mut tuple);
            targets.push(tuple);
        }
    }

    let classes = match hom::enumerate_hom_classes(group, genus, true, Some(config.max_states)) {
        Ok(c) => c,
        Err(_) => return false,
    };
    let mut seen: BTreeMap<Vec<u16>, bool> = BTreeMap::new();
    for class in &classes {
        let ok = match seen.get(class.indices()) {
            Some(&v) => v,
            None => {
                // Full orbit closure: search with no curves never kills.
                let outcome = orbit_search(group, class, &[], &twists, config);
                if outcome.truncated {
                    return false;
                }
                let hit = outcome.nodes.iter().any(|node| targets.contains(node));
                for node in outcome.nodes {
                    seen.insert(node, hit);
                }
                hit
            }
        };
        if !ok {
            return false;
        }
    }
    true
}
