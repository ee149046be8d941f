//! The tree of numerical C-incentives.
//!
//! Numerical C-incentives form a rooted tree in which the parent of `S` is
//! `S ∪ {F(S)}`. Children of `S` are obtained by removing a minimal generator
//! `x > F(S)` whenever the result is still a C-incentive. Restricting to
//! semigroups containing a fixed set `X` forbids removing elements of `X`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_magnitude, Error, Result};
use crate::incentive::{is_admissible, is_incentive, IncentiveSpec};
use crate::monoid::{gcd, gcd_all, join, GenSet, NumericalSemigroup};

/// Largest Frobenius bound accepted by [`brute_force_family`].
pub const BRUTE_FORCE_LIMIT: u64 = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum EnumerationBound {
    MaxFrobenius(u64),
    MaxGenus(u64),
    MaxDepth(u64),
}

impl EnumerationBound {
    /// Depth bound that never truncates.
    pub const UNBOUNDED: EnumerationBound = EnumerationBound::MaxDepth(u64::MAX);

    pub fn is_unbounded(&self) -> bool {
        *self == Self::UNBOUNDED
    }

    pub fn admits(&self, s: &NumericalSemigroup, depth: usize) -> bool {
        match *self {
            EnumerationBound::MaxFrobenius(k) => s.frobenius() < 0 || s.frobenius() as u64 <= k,
            EnumerationBound::MaxGenus(k) => s.genus() as u64 <= k,
            EnumerationBound::MaxDepth(k) => depth as u64 <= k,
        }
    }
}

/// The largest numerical C-incentive: ℕ when `C ⊆ {−2,−1} ∪ ℕ`, otherwise
/// `{0, θ(C), →}`.
pub fn max_numerical_incentive(c: &IncentiveSpec) -> NumericalSemigroup {
    if c.theta() <= 2 {
        NumericalSemigroup::naturals()
    } else {
        NumericalSemigroup::half_line(c.theta())
    }
}

fn check_removal(s: &NumericalSemigroup, x: i64) -> Result<usize> {
    let invalid = |reason: &str| Error::InvalidRemoval {
        x,
        reason: reason.to_string(),
    };
    let i = s
        .msg()
        .as_slice()
        .binary_search(&x)
        .map_err(|_| invalid(&format!("not a minimal generator of {s}")))?;
    if x <= s.frobenius() {
        return Err(invalid(&format!(
            "not above the Frobenius number {}",
            s.frobenius()
        )));
    }
    if i == 0 && !s.is_half_line() {
        return Err(invalid("multiplicity can only be removed from {0,m,→}"));
    }
    Ok(i)
}

/// Minimal generators of `S ∖ {x}` for a minimal generator `x > F(S)`.
pub fn msg_after_removal(s: &NumericalSemigroup, x: i64) -> Result<GenSet> {
    let i = check_removal(s, x)?;
    let n = s.msg().as_slice();
    if i == 0 {
        let m = n[0];
        return Ok(GenSet::from_sorted((m + 1..=2 * m + 1).collect()));
    }
    let p = n.len();
    let mut rest: Vec<i64> = n.iter().copied().filter(|&g| g != x).collect();
    // j = i would always succeed (n_1 ∈ S), so it is excluded
    let absorbed = (1..p.saturating_sub(1))
        .filter(|&j| j != i)
        .any(|j| s.contains(x + n[0] - n[j]));
    if !absorbed {
        let extra = x + n[0];
        let pos = rest.partition_point(|&g| g < extra);
        rest.insert(pos, extra);
    }
    Ok(GenSet::from_sorted(rest))
}

/// Whether the shortcut test that avoids computing `msg(S ∖ {x})` applies:
/// `−min(msg S) ∉ C` and `x` is not the multiplicity. Removing the
/// multiplicity adds the generators `2m` and `2m + 1`, which the shortcut
/// cannot see.
pub fn fast_path_applies(s: &NumericalSemigroup, x: i64, c: &IncentiveSpec) -> bool {
    x != s.multiplicity() && c.as_slice().binary_search(&-s.multiplicity()).is_err()
}

/// Viability using only `msg(S)`. Meaningful when [`fast_path_applies`].
pub fn child_viable_fast(s: &NumericalSemigroup, x: i64, c: &IncentiveSpec) -> Result<bool> {
    check_removal(s, x)?;
    Ok(c.as_slice().iter().all(|&off| {
        let z = x - off;
        !s.contains(z) || z == 0 || s.msg().as_slice().binary_search(&z).is_ok()
    }))
}

/// Viability from `msg(S ∖ {x})`: every `x − c` must avoid being a
/// decomposable element of `S ∖ {x}`.
pub fn child_viable_general(s: &NumericalSemigroup, x: i64, c: &IncentiveSpec) -> Result<bool> {
    let after = msg_after_removal(s, x)?;
    Ok(c.as_slice().iter().all(|&off| {
        let z = x - off;
        !s.contains(z) || z == 0 || z == x || after.as_slice().binary_search(&z).is_ok()
    }))
}

/// Whether `S ∖ {x}` is a C-incentive, given that `S` is one.
pub fn child_viable(s: &NumericalSemigroup, x: i64, c: &IncentiveSpec) -> Result<bool> {
    if fast_path_applies(s, x, c) {
        child_viable_fast(s, x, c)
    } else {
        child_viable_general(s, x, c)
    }
}

/// Children of `s` in the tree, sorted by removed generator. With `required`
/// set, elements of it are never removed.
pub fn children(
    s: &NumericalSemigroup,
    c: &IncentiveSpec,
    required: Option<&[i64]>,
) -> Vec<(i64, NumericalSemigroup)> {
    expand(s, c, required, false).expect("checks disabled")
}

fn expand(
    s: &NumericalSemigroup,
    c: &IncentiveSpec,
    required: Option<&[i64]>,
    debug_checks: bool,
) -> Result<Vec<(i64, NumericalSemigroup)>> {
    let mut out = Vec::new();
    let candidates = s
        .msg()
        .as_slice()
        .iter()
        .copied()
        .filter(|&x| x > s.frobenius())
        .filter(|x| required.is_none_or(|r| !r.contains(x)));
    for x in candidates {
        let viable = child_viable(s, x, c)?;
        if debug_checks && fast_path_applies(s, x, c) {
            let general = child_viable_general(s, x, c)?;
            if general != viable {
                return Err(Error::Internal(format!(
                    "viability of {s} ∖ {{{x}}}: fast path says {viable}, general path {general}"
                )));
            }
        }
        if !viable {
            continue;
        }
        let msg = msg_after_removal(s, x)?;
        if debug_checks {
            let recomputed = s
                .without(x)
                .ok_or_else(|| Error::Internal(format!("{s} ∖ {{{x}}} is not a semigroup")))?;
            if recomputed.msg() != &msg {
                return Err(Error::Internal(format!(
                    "msg of {s} ∖ {{{x}}}: got {msg}, recomputed {}",
                    recomputed.msg()
                )));
            }
            if !is_incentive(&msg, c) {
                return Err(Error::Internal(format!("{msg} is not a {c}-incentive")));
            }
        }
        out.push((x, NumericalSemigroup::from_minimal(msg)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: usize,
    pub semigroup: NumericalSemigroup,
    pub parent: Option<usize>,
    pub removed_generator: Option<i64>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncentiveTree {
    pub c_set: Vec<i64>,
    pub x_set: Option<Vec<i64>>,
    pub bound: EnumerationBound,
    /// Nodes in breadth-first order; `nodes[i].id == i`.
    pub nodes: Vec<TreeNode>,
    /// Whether the bound cut off at least one existing node.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct TreeOptions {
    /// Cross-check every expansion against from-scratch recomputation.
    pub debug_checks: bool,
    /// Worker threads for expanding a level; 0 or 1 means sequential.
    pub threads: usize,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            debug_checks: false,
            threads: 1,
        }
    }
}

fn required_set(x: Option<&[i64]>, c: &IncentiveSpec) -> Result<Option<Vec<i64>>> {
    let Some(x) = x else { return Ok(None) };
    let mut xs = Vec::new();
    for &v in x {
        check_magnitude(v)?;
        if v < 0 {
            return Err(Error::Domain(format!("X must be a subset of ℕ, got {v}")));
        }
        if v > 0 {
            xs.push(v);
        }
    }
    xs.sort_unstable();
    xs.dedup();
    if !is_admissible(&xs, c) {
        return Err(Error::NotAdmissible {
            x: xs,
            c: c.as_slice().to_vec(),
        });
    }
    Ok(Some(xs))
}

pub fn enumerate_tree(
    c: &IncentiveSpec,
    x: Option<&[i64]>,
    bound: EnumerationBound,
) -> Result<IncentiveTree> {
    enumerate_tree_with(c, x, bound, &TreeOptions::default())
}

/// Breadth-first construction of the tree, children in ascending order of
/// the removed generator.
pub fn enumerate_tree_with(
    c: &IncentiveSpec,
    x: Option<&[i64]>,
    bound: EnumerationBound,
    opts: &TreeOptions,
) -> Result<IncentiveTree> {
    let required = required_set(x, c)?;
    let root = max_numerical_incentive(c);
    if let Some(r) = &required {
        if !r.iter().all(|&v| root.contains(v)) {
            return Err(Error::RootMissesX(r.clone()));
        }
    }
    if bound.is_unbounded() {
        let finite = match &required {
            None => false,
            Some(r) => !r.is_empty() && gcd(gcd_all(r), c.gcd()) == 1,
        };
        if !finite {
            return Err(Error::InfiniteFamily);
        }
    }

    let mut tree = IncentiveTree {
        c_set: c.as_slice().to_vec(),
        x_set: required.clone(),
        bound,
        nodes: Vec::new(),
        truncated: false,
    };
    if !bound.admits(&root, 0) {
        tree.truncated = true;
        return Ok(tree);
    }
    tree.nodes.push(TreeNode {
        id: 0,
        semigroup: root,
        parent: None,
        removed_generator: None,
        depth: 0,
    });

    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let required = required.as_deref();
    let expand_one = |id: &usize, nodes: &[TreeNode]| {
        expand(&nodes[*id].semigroup, c, required, opts.debug_checks)
    };

    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        let nodes = &tree.nodes;
        let expanded: Vec<Result<Vec<(i64, NumericalSemigroup)>>> = match &pool {
            Some(pool) => {
                pool.install(|| level.par_iter().map(|id| expand_one(id, nodes)).collect())
            }
            None => level.iter().map(|id| expand_one(id, nodes)).collect(),
        };
        let mut next = Vec::new();
        for (&parent, kids) in level.iter().zip(expanded) {
            let depth = tree.nodes[parent].depth + 1;
            for (x, semigroup) in kids? {
                if !bound.admits(&semigroup, depth) {
                    tree.truncated = true;
                    continue;
                }
                let id = tree.nodes.len();
                tree.nodes.push(TreeNode {
                    id,
                    semigroup,
                    parent: Some(parent),
                    removed_generator: Some(x),
                    depth,
                });
                next.push(id);
            }
        }
        level = next;
    }
    Ok(tree)
}

impl IncentiveTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn children_of(&self, id: usize) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(move |n| n.parent == Some(id))
    }

    /// Ids of nodes without children in this (possibly truncated) tree.
    pub fn leaves(&self) -> Vec<usize> {
        let mut has_child = vec![false; self.nodes.len()];
        for n in &self.nodes {
            if let Some(p) = n.parent {
                has_child[p] = true;
            }
        }
        (0..self.nodes.len()).filter(|&i| !has_child[i]).collect()
    }

    pub fn node_set(&self) -> BTreeSet<GenSet> {
        self.nodes
            .iter()
            .map(|n| n.semigroup.msg().clone())
            .collect()
    }

    /// `(parent msg, child msg, removed generator)` for every edge.
    pub fn edges(&self) -> BTreeSet<(GenSet, GenSet, i64)> {
        self.nodes
            .iter()
            .filter_map(|n| {
                let p = n.parent?;
                Some((
                    self.nodes[p].semigroup.msg().clone(),
                    n.semigroup.msg().clone(),
                    n.removed_generator?,
                ))
            })
            .collect()
    }

    pub fn find(&self, msg: &[i64]) -> Option<&TreeNode> {
        self.nodes
            .iter()
            .find(|n| n.semigroup.msg().as_slice() == msg)
    }

    pub fn to_export(&self) -> TreeExport {
        TreeExport {
            metadata: TreeMetadata {
                c_set: self.c_set.clone(),
                x_set: self.x_set.clone(),
                bound: self.bound,
                node_count: self.nodes.len(),
                truncated: self.truncated,
            },
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeExport {
                    id: n.id,
                    msg: n.semigroup.msg().as_slice().to_vec(),
                    frobenius: n.semigroup.frobenius(),
                    genus: n.semigroup.genus(),
                    parent_id: n.parent,
                    removed_generator: n.removed_generator,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("tree export serializes")
    }

    /// Rebuilds a tree from [`IncentiveTree::to_json`] output, validating
    /// node ids, parent links and semigroup statistics.
    pub fn from_json(text: &str) -> Result<IncentiveTree> {
        let export: TreeExport = serde_json::from_str(text)
            .map_err(|e| Error::Domain(format!("malformed tree JSON: {e}")))?;
        let bad = |msg: String| Error::Domain(format!("inconsistent tree JSON: {msg}"));
        let mut nodes: Vec<TreeNode> = Vec::with_capacity(export.nodes.len());
        for (i, n) in export.nodes.into_iter().enumerate() {
            if n.id != i {
                return Err(bad(format!("node {i} has id {}", n.id)));
            }
            let semigroup = NumericalSemigroup::new(&GenSet::new(n.msg)?)?;
            if semigroup.frobenius() != n.frobenius || semigroup.genus() != n.genus {
                return Err(bad(format!(
                    "statistics of node {i} do not match {semigroup}"
                )));
            }
            let depth = match n.parent_id {
                None => 0,
                Some(p) if p < i => nodes[p].depth + 1,
                Some(p) => return Err(bad(format!("node {i} has later parent {p}"))),
            };
            nodes.push(TreeNode {
                id: i,
                semigroup,
                parent: n.parent_id,
                removed_generator: n.removed_generator,
                depth,
            });
        }
        if nodes.len() != export.metadata.node_count {
            return Err(bad("node_count mismatch".into()));
        }
        Ok(IncentiveTree {
            c_set: export.metadata.c_set,
            x_set: export.metadata.x_set,
            bound: export.metadata.bound,
            nodes,
            truncated: export.metadata.truncated,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph incentives {\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", n.id, n.semigroup);
        }
        for n in &self.nodes {
            if let (Some(p), Some(x)) = (n.parent, n.removed_generator) {
                let _ = writeln!(out, "  n{p} -> n{} [label=\"{x}\"];", n.id);
            }
        }
        out.push_str("}\n");
        out
    }

    /// Indented outline, each child listed under its parent.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kids = vec![Vec::new(); self.nodes.len()];
        for n in &self.nodes {
            if let Some(p) = n.parent {
                kids[p].push(n.id);
            }
        }
        let mut stack: Vec<usize> = if self.nodes.is_empty() {
            vec![]
        } else {
            vec![0]
        };
        while let Some(id) = stack.pop() {
            let n = &self.nodes[id];
            stack.extend(kids[id].iter().rev());
            let indent = "  ".repeat(n.depth);
            let edge = n
                .removed_generator
                .map(|x| format!(" ∖{{{x}}}"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{indent}{}{edge}  F={} g={}",
                n.semigroup,
                n.semigroup.frobenius(),
                n.semigroup.genus()
            );
        }
        let _ = writeln!(
            out,
            "nodes: {} | max depth: {} | truncated: {}",
            self.node_count(),
            self.max_depth(),
            self.truncated
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub metadata: TreeMetadata,
    pub nodes: Vec<NodeExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeMetadata {
    pub c_set: Vec<i64>,
    pub x_set: Option<Vec<i64>>,
    pub bound: EnumerationBound,
    pub node_count: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeExport {
    pub id: usize,
    pub msg: Vec<i64>,
    pub frobenius: i64,
    pub genus: usize,
    pub parent_id: Option<usize>,
    pub removed_generator: Option<i64>,
}

/// Whether the numerical C-incentives containing `x` form a finite family,
/// i.e. `gcd(C ∪ X) = 1`. An empty `X` gives the whole (infinite) family.
pub fn is_finite_family(c: &IncentiveSpec, x: &[i64]) -> Result<bool> {
    let xs = required_set(Some(x), c)?.unwrap_or_default();
    Ok(!xs.is_empty() && gcd(gcd_all(&xs), c.gcd()) == 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionEntry {
    pub divisor: i64,
    pub c_reduced: IncentiveSpec,
    pub x_reduced: Option<Vec<i64>>,
    /// `None` when no numerical `C/d`-incentive contains `X/d`.
    pub tree: Option<IncentiveTree>,
}

/// Non-trivial members of the family are `d·S` for `S` in one of the trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub entries: Vec<DecompositionEntry>,
    /// Whether `{0}` belongs to the family as well.
    pub includes_trivial: bool,
}

pub fn decompose(
    c: &IncentiveSpec,
    x: Option<&[i64]>,
    bound: EnumerationBound,
) -> Result<Decomposition> {
    decompose_with(c, x, bound, &TreeOptions::default())
}

/// Splits the C-incentives (containing `x`) by gcd into scaled numerical
/// families, one per positive divisor of `gcd(C)` (or `gcd(C ∪ X)`).
pub fn decompose_with(
    c: &IncentiveSpec,
    x: Option<&[i64]>,
    bound: EnumerationBound,
    opts: &TreeOptions,
) -> Result<Decomposition> {
    let required = required_set(x, c)?;
    let g = gcd(c.gcd(), required.as_deref().map(gcd_all).unwrap_or(0));
    if g == 0 {
        return Err(Error::Domain(
            "C = {0} and X empty: every submonoid qualifies, no finite divisor set".into(),
        ));
    }
    let mut entries = Vec::new();
    for d in (1..=g).filter(|d| g % d == 0) {
        let c_reduced = c.divide(d);
        let x_reduced: Option<Vec<i64>> =
            required.as_ref().map(|r| r.iter().map(|v| v / d).collect());
        let tree = match enumerate_tree_with(&c_reduced, x_reduced.as_deref(), bound, opts) {
            Ok(t) => Some(t),
            Err(Error::RootMissesX(_)) => None,
            Err(e) => return Err(e),
        };
        entries.push(DecompositionEntry {
            divisor: d,
            c_reduced,
            x_reduced,
            tree,
        });
    }
    Ok(Decomposition {
        entries,
        includes_trivial: required.as_ref().is_none_or(|r| r.is_empty()),
    })
}

impl Decomposition {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let x = e
                .x_reduced
                .as_ref()
                .map(|x| format!(", X/d = {{{}}}", join(x)))
                .unwrap_or_default();
            let _ = writeln!(out, "d = {}: C/d = {}{x}", e.divisor, e.c_reduced);
            match &e.tree {
                Some(t) => out.push_str(&t.to_text()),
                None => out.push_str("  (empty)\n"),
            }
        }
        let _ = writeln!(
            out,
            "trivial monoid {{0}} included: {}",
            self.includes_trivial
        );
        out
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "divisor": e.divisor,
                    "c_reduced": e.c_reduced.as_slice(),
                    "x_reduced": e.x_reduced,
                    "tree": e.tree.as_ref().map(IncentiveTree::to_export),
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "entries": entries,
            "includes_trivial": self.includes_trivial,
        }))
        .expect("decomposition serializes")
    }
}

/// Every numerical C-incentive with Frobenius number at most `max_frobenius`,
/// found by testing all subsets of `{1, …, max_frobenius}` as gap sets.
pub fn brute_force_family(
    c: &IncentiveSpec,
    max_frobenius: u64,
) -> Result<BTreeMap<GenSet, NumericalSemigroup>> {
    if max_frobenius > BRUTE_FORCE_LIMIT {
        return Err(Error::BoundTooLarge {
            given: max_frobenius,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut family = BTreeMap::new();
    for mask in 0u32..(1 << max_frobenius) {
        let gaps: Vec<i64> = (0..max_frobenius as i64)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        if let Some(s) = NumericalSemigroup::from_gaps(&gaps) {
            if is_incentive(s.msg(), c) {
                family.insert(s.msg().clone(), s);
            }
        }
    }
    Ok(family)
}
