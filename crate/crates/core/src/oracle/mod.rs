//! Brute-force verification at small sizes: explicit component graphs,
//! fullness by path search, Grothendieck constructions and relation checks.

pub mod category;
pub mod relations;
pub mod suites;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::dsl::print_object;
use crate::expr::{
    supporting_object, validate, Doctrine, DoctrineKind, EdgeId, ExprError, Graph, ObjectExpr, Orientation, Shape,
};
use crate::index::{compose_index, hom_set, thin_reachable, IndexError, IndexMor, Perm, Rot};
use crate::invariant::{invariant, relabel, Invariant, InvariantError, Support};
use crate::morph::{applicable_moves, Direction, Move, MorphTerm};

pub const DEFAULT_MAX_OBJECTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration exceeded {0} objects")]
    BoundExceeded(usize),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Object cap for enumeration, read from `COHERENCE_MAX_OBJECTS`.
pub fn max_objects() -> usize {
    std::env::var("COHERENCE_MAX_OBJECTS").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_OBJECTS)
}

/// A finite window onto a component of a free structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueGraph {
    pub objects: Vec<ObjectExpr>,
    /// Every single move between enumerated objects, in both directions
    /// where the move is invertible.
    pub edges: Vec<(usize, usize, Move)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub objects: usize,
    pub edges: usize,
    pub connected: bool,
}

impl CliqueGraph {
    /// Generator instances, counting a move and its inverse once.
    pub fn undirected_edges(&self) -> usize {
        self.edges.iter().filter(|(_, _, m)| m.dir == Direction::Fwd).count()
    }

    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary { objects: self.objects.len(), edges: self.undirected_edges(), connected: check_connected(self) }
    }

    /// Disjoint union, used to build graphs mixing components.
    pub fn union(&self, other: &CliqueGraph) -> CliqueGraph {
        let shift = self.objects.len();
        let mut objects = self.objects.clone();
        objects.extend(other.objects.iter().cloned());
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|(a, b, m)| (a + shift, b + shift, m.clone())));
        CliqueGraph { objects, edges }
    }

    pub fn index_of(&self, obj: &ObjectExpr) -> Option<usize> {
        self.objects.iter().position(|o| o == obj)
    }
}

/// The canonical object with the given frontier: a right comb, wrapped as the
/// doctrine's shape requires.
pub fn canonical_object(frontier: &[EdgeId], doctrine: Doctrine) -> ObjectExpr {
    let word = if frontier.is_empty() {
        ObjectExpr::Unit
    } else {
        ObjectExpr::right_comb(frontier.iter().map(|e| ObjectExpr::Leaf(e.clone())).collect())
    };
    match doctrine.shape() {
        Shape::Plain => word,
        Shape::Shadow => ObjectExpr::shadow(word),
        Shape::Functor => ObjectExpr::functor(word),
        Shape::ShadowFunctor => ObjectExpr::shadow(ObjectExpr::functor(word)),
    }
}

/// Unit counts of each word region: the outer word, the inside of every
/// block, and the inside of `H⟨…⟩`.
fn region_units(expr: &ObjectExpr, acc: &mut Vec<usize>, region: usize) {
    match expr {
        ObjectExpr::Unit => acc[region] += 1,
        ObjectExpr::Leaf(_) => {}
        ObjectExpr::Tensor(a, b) => {
            region_units(a, acc, region);
            region_units(b, acc, region);
        }
        ObjectExpr::Functor(w) | ObjectExpr::ShadowFunctor(w) => {
            acc.push(0);
            let r = acc.len() - 1;
            region_units(w, acc, r);
        }
        ObjectExpr::Shadow(w) => region_units(w, acc, region),
    }
}

fn empty_blocks(expr: &ObjectExpr) -> usize {
    match expr {
        ObjectExpr::Functor(w) => usize::from(w.occurrences() == 0),
        ObjectExpr::Tensor(a, b) => empty_blocks(a) + empty_blocks(b),
        ObjectExpr::Shadow(w) => empty_blocks(w),
        _ => 0,
    }
}

/// At most `max_units` units in every region and at most `max_units` blocks
/// without leaves.
pub fn within_bounds(expr: &ObjectExpr, max_units: usize) -> bool {
    let mut acc = vec![0];
    region_units(expr, &mut acc, 0);
    acc.iter().all(|&u| u <= max_units) && empty_blocks(expr) <= max_units
}

/// The doctrine with every structure map invertible and the same objects.
fn exploration_doctrine(d: Doctrine) -> Doctrine {
    use DoctrineKind::*;
    let kind = match d.kind {
        LaxFunctor | NormalLaxFunctor => Pseudofunctor,
        LaxSymmetricFunctor | NormalLaxSymmetricFunctor => StrongSymmetricFunctor,
        LaxShadowFunctor | NormalLaxShadowFunctor => StrongShadowFunctor,
        k => k,
    };
    Doctrine { kind, orientation: Orientation::Lax }
}

/// All objects connected to the canonical object on `frontier` within the
/// unit bound, with every single move between them.
pub fn enumerate_component(
    doctrine: Doctrine,
    graph: &Graph,
    frontier: &[EdgeId],
    max_units: usize,
) -> Result<CliqueGraph, OracleError> {
    let seed = canonical_object(frontier, doctrine);
    validate(&seed, graph, doctrine)?;
    enumerate_from(&seed, doctrine, max_units)
}

/// Component of `seed` within the unit bound.
pub fn enumerate_from(seed: &ObjectExpr, doctrine: Doctrine, max_units: usize) -> Result<CliqueGraph, OracleError> {
    enumerate_within(seed, doctrine, |o| within_bounds(o, max_units))
}

/// Component of `seed` among the objects accepted by `keep`.
pub fn enumerate_within(
    seed: &ObjectExpr,
    doctrine: Doctrine,
    keep: impl Fn(&ObjectExpr) -> bool,
) -> Result<CliqueGraph, OracleError> {
    let cap = max_objects();
    let explore = exploration_doctrine(doctrine);
    let mut seen: HashSet<ObjectExpr> = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(obj) = queue.pop_front() {
        for (_, next) in applicable_moves(&obj, explore) {
            if keep(&next) && seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(OracleError::BoundExceeded(cap));
                }
                queue.push_back(next);
            }
        }
    }
    let mut keyed: Vec<(String, ObjectExpr)> = seen.into_iter().map(|o| (print_object(&o), o)).collect();
    keyed.sort();
    let objects: Vec<ObjectExpr> = keyed.into_iter().map(|(_, o)| o).collect();
    let index: HashMap<&ObjectExpr, usize> = objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut edges = Vec::new();
    for (i, obj) in objects.iter().enumerate() {
        for (mv, next) in applicable_moves(obj, doctrine) {
            if let Some(&j) = index.get(&next) {
                edges.push((i, j, mv));
            }
        }
    }
    edges.sort_by_key(|(a, b, m)| (*a, *b, m.to_string()));
    Ok(CliqueGraph { objects, edges })
}

/// Whether the underlying undirected graph is connected.
pub fn check_connected(cg: &CliqueGraph) -> bool {
    if cg.objects.is_empty() {
        return true;
    }
    let mut adj = vec![Vec::new(); cg.objects.len()];
    for (a, b, _) in &cg.edges {
        adj[*a].push(*b);
        adj[*b].push(*a);
    }
    let mut seen = vec![false; cg.objects.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The part of an invariant that classifies a morphism: permutation,
/// rotation and (outside thin doctrines) the comma map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InvariantKey {
    pub perm: Option<Perm>,
    pub rot: Option<Rot>,
    pub map: Option<IndexMor>,
}

fn key_of(inv: &Invariant) -> InvariantKey {
    let map = match &inv.support {
        Some(Support::Comma(c)) => Some(c.map.clone()),
        _ => None,
    };
    InvariantKey { perm: inv.perm.clone(), rot: inv.rot, map }
}

/// Every invariant value the classifying functor allows between two objects.
pub fn expected_keys(x: &ObjectExpr, y: &ObjectExpr, doctrine: Doctrine) -> Result<Vec<InvariantKey>, OracleError> {
    let n = x.occurrences();
    let (fx, fy) = (x.frontier().edges, y.frontier().edges);
    if fx.len() != fy.len() {
        return Ok(Vec::new());
    }
    let perms: Vec<Option<Perm>> = if doctrine.tracks_perm() {
        Perm::all(n)
            .into_iter()
            .filter(|p| (0..n).all(|l| fy[p.apply(l + 1) - 1] == fx[l]))
            .map(Some)
            .collect()
    } else if doctrine.tracks_rot() || fx == fy {
        vec![None]
    } else {
        Vec::new()
    };
    let rots: Vec<Option<Rot>> = if doctrine.tracks_rot() {
        (0..n.max(1))
            .map(|r| Rot::new(n, r as i64))
            .filter(|r| (0..n).all(|p| fy[p] == fx[(p + r.amount) % n]))
            .map(Some)
            .collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for perm in &perms {
        for rot in &rots {
            let base = InvariantKey { perm: perm.clone(), rot: *rot, map: None };
            let (Some(ax), Some(ay)) = (supporting_object(x, doctrine), supporting_object(y, doctrine)) else {
                out.push(base);
                continue;
            };
            let ay = relabel(&ay, perm.as_ref(), *rot)?;
            let (from, to) = match doctrine.orientation {
                Orientation::Lax => (ax, ay),
                Orientation::Oplax => (ay, ax),
            };
            match doctrine.thin_localization() {
                Some(loc) => {
                    if thin_reachable(loc, &from, &to)? {
                        out.push(base);
                    }
                }
                None => {
                    for beta in hom_set(from.family(), from.target(), to.target())? {
                        if compose_index(&beta, &from)? == to {
                            out.push(InvariantKey { map: Some(beta), ..base.clone() });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullnessGap {
    pub from: String,
    pub to: String,
    pub key: InvariantKey,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullnessReport {
    pub pairs: usize,
    pub expected: usize,
    pub realized: usize,
    /// Allowed values no path realizes.
    pub missing: Vec<FullnessGap>,
    /// Realized values outside the allowed set.
    pub unsound: Vec<FullnessGap>,
    pub full: bool,
}

/// Fullness from every object of the graph.
pub fn check_fullness(cg: &CliqueGraph, doctrine: Doctrine) -> Result<FullnessReport, OracleError> {
    let all: Vec<usize> = (0..cg.objects.len()).collect();
    check_fullness_between(cg, doctrine, &all, &all)
}

/// Searches paths from each source, accumulating invariants, and compares
/// the values reaching each target with [`expected_keys`].
pub fn check_fullness_between(
    cg: &CliqueGraph,
    doctrine: Doctrine,
    sources: &[usize],
    targets: &[usize],
) -> Result<FullnessReport, OracleError> {
    let mut out_edges: Vec<Vec<(usize, Invariant)>> = vec![Vec::new(); cg.objects.len()];
    for (a, b, mv) in &cg.edges {
        let step = invariant(&MorphTerm::new(cg.objects[*a].clone(), vec![mv.clone()]), doctrine)?;
        out_edges[*a].push((*b, step));
    }
    let mut report =
        FullnessReport { pairs: 0, expected: 0, realized: 0, missing: Vec::new(), unsound: Vec::new(), full: true };
    for &s in sources {
        let start = invariant(&MorphTerm::identity(cg.objects[s].clone()), doctrine)?;
        let mut seen: HashSet<(usize, Invariant)> = HashSet::from([(s, start.clone())]);
        let mut queue = VecDeque::from([(s, start)]);
        let mut reached: BTreeMap<usize, HashSet<InvariantKey>> = BTreeMap::new();
        while let Some((v, inv)) = queue.pop_front() {
            reached.entry(v).or_default().insert(key_of(&inv));
            for (w, step) in &out_edges[v] {
                let next = inv.then(step, doctrine)?;
                if seen.insert((*w, next.clone())) {
                    queue.push_back((*w, next));
                }
            }
        }
        for &t in targets {
            report.pairs += 1;
            let expected: HashSet<InvariantKey> =
                expected_keys(&cg.objects[s], &cg.objects[t], doctrine)?.into_iter().collect();
            let got = reached.remove(&t).unwrap_or_default();
            report.expected += expected.len();
            report.realized += got.intersection(&expected).count();
            let gap = |key: &InvariantKey| FullnessGap {
                from: print_object(&cg.objects[s]),
                to: print_object(&cg.objects[t]),
                key: key.clone(),
            };
            let mut missing: Vec<_> = expected.difference(&got).collect();
            missing.sort();
            report.missing.extend(missing.into_iter().map(gap));
            let mut unsound: Vec<_> = got.difference(&expected).collect();
            unsound.sort();
            report.unsound.extend(unsound.into_iter().map(gap));
        }
    }
    report.full = report.missing.is_empty() && report.unsound.is_empty();
    Ok(report)
}

/// Graphviz text: one node per object and one edge per forward generator
/// instance, in a stable order.
pub fn export_dot(cg: &CliqueGraph) -> String {
    let mut out = String::from("digraph component {\n");
    for (i, obj) in cg.objects.iter().enumerate() {
        let label = print_object(obj).replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
    }
    for (a, b, mv) in cg.edges.iter().filter(|(_, _, m)| m.dir == Direction::Fwd) {
        let _ = writeln!(out, "  n{a} -> n{b} [label=\"{mv}\"];");
    }
    out.push_str("}\n");
    out
}

pub fn write_dot(cg: &CliqueGraph, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, export_dot(cg))
}
