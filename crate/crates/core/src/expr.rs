//! Formal objects: graphs of generating 1-cells, doctrines, expression trees,
//! validation, frontiers and supporting index objects.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{
    CommaObject, DeltaMap, Family, FinMap, IndexMor, InvertedClass, LambdaObj, LambdaPrimeMor, ThinLocalization,
};

/// Name of a generating edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(Arc<str>);

impl EdgeId {
    pub fn new(name: &str) -> Self {
        EdgeId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId::new(s)
    }
}

/// A directed graph whose edges generate the free structure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertices: BTreeSet<String>,
    edges: BTreeMap<EdgeId, (String, String)>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_vertex(&mut self, v: &str) {
        self.vertices.insert(v.to_string());
    }

    pub fn add_edge(&mut self, name: &str, src: &str, tgt: &str) -> Result<(), ExprError> {
        let id = EdgeId::new(name);
        if self.edges.contains_key(&id) {
            return Err(ExprError::DuplicateEdge(id));
        }
        self.add_vertex(src);
        self.add_vertex(tgt);
        self.edges.insert(id, (src.to_string(), tgt.to_string()));
        Ok(())
    }

    /// A one-vertex graph with the given loops.
    pub fn one_vertex<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        let mut g = Graph::new();
        g.add_vertex("*");
        for name in names {
            let _ = g.add_edge(name, "*", "*");
        }
        g
    }

    /// `X1: v0 -> v1, …, Xn: v(n-1) -> vn`.
    pub fn chain(n: usize) -> Self {
        let mut g = Graph::new();
        g.add_vertex("v0");
        for i in 1..=n {
            g.add_edge(&format!("X{i}"), &format!("v{}", i - 1), &format!("v{i}")).unwrap();
        }
        g
    }

    /// Like [`Graph::chain`] but with the last edge returning to `v0`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new();
        g.add_vertex("v0");
        for i in 1..=n {
            let tgt = if i == n { "v0".to_string() } else { format!("v{i}") };
            g.add_edge(&format!("X{i}"), &format!("v{}", i - 1), &tgt).unwrap();
        }
        g
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &str, &str)> {
        self.edges.iter().map(|(e, (s, t))| (e, s.as_str(), t.as_str()))
    }

    pub fn endpoints(&self, e: &EdgeId) -> Option<(&str, &str)> {
        self.edges.get(e).map(|(s, t)| (s.as_str(), t.as_str()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DoctrineKind {
    Monoidal,
    Bicategory,
    Symmetric,
    Shadow,
    LaxFunctor,
    NormalLaxFunctor,
    Pseudofunctor,
    LaxSymmetricFunctor,
    NormalLaxSymmetricFunctor,
    StrongSymmetricFunctor,
    LaxShadowFunctor,
    NormalLaxShadowFunctor,
    StrongShadowFunctor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    #[default]
    Lax,
    Oplax,
}

/// Which kinds of node may occur where.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Words built from leaves, units and tensors.
    Plain,
    /// `⟨w⟩` with `w` plain.
    Shadow,
    /// An outer word of units and blocks `F(w)`, each `w` plain.
    Functor,
    /// `⟨outer word⟩` or `H⟨w⟩`.
    ShadowFunctor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Doctrine {
    pub kind: DoctrineKind,
    #[serde(default)]
    pub orientation: Orientation,
}

impl DoctrineKind {
    pub const ALL: [DoctrineKind; 13] = [
        DoctrineKind::Monoidal,
        DoctrineKind::Bicategory,
        DoctrineKind::Symmetric,
        DoctrineKind::Shadow,
        DoctrineKind::LaxFunctor,
        DoctrineKind::NormalLaxFunctor,
        DoctrineKind::Pseudofunctor,
        DoctrineKind::LaxSymmetricFunctor,
        DoctrineKind::NormalLaxSymmetricFunctor,
        DoctrineKind::StrongSymmetricFunctor,
        DoctrineKind::LaxShadowFunctor,
        DoctrineKind::NormalLaxShadowFunctor,
        DoctrineKind::StrongShadowFunctor,
    ];

    pub fn name(self) -> &'static str {
        use DoctrineKind::*;
        match self {
            Monoidal => "monoidal",
            Bicategory => "bicategory",
            Symmetric => "symmetric",
            Shadow => "shadow",
            LaxFunctor => "lax-functor",
            NormalLaxFunctor => "normal-lax-functor",
            Pseudofunctor => "pseudofunctor",
            LaxSymmetricFunctor => "lax-symmetric-functor",
            NormalLaxSymmetricFunctor => "normal-lax-symmetric-functor",
            StrongSymmetricFunctor => "strong-symmetric-functor",
            LaxShadowFunctor => "lax-shadow-functor",
            NormalLaxShadowFunctor => "normal-lax-shadow-functor",
            StrongShadowFunctor => "strong-shadow-functor",
        }
    }
}

impl fmt::Display for DoctrineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DoctrineKind {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        DoctrineKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ExprError::UnknownDoctrine(s.to_string()))
    }
}

impl fmt::Display for Doctrine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Lax => write!(f, "{}", self.kind),
            Orientation::Oplax => write!(f, "oplax {}", self.kind),
        }
    }
}

impl From<DoctrineKind> for Doctrine {
    fn from(kind: DoctrineKind) -> Self {
        Doctrine { kind, orientation: Orientation::Lax }
    }
}

impl Doctrine {
    pub fn new(kind: DoctrineKind) -> Self {
        kind.into()
    }

    pub fn oplax(kind: DoctrineKind) -> Self {
        Doctrine { kind, orientation: Orientation::Oplax }
    }

    pub fn shape(self) -> Shape {
        use DoctrineKind::*;
        match self.kind {
            Monoidal | Bicategory | Symmetric => Shape::Plain,
            Shadow => Shape::Shadow,
            LaxFunctor | NormalLaxFunctor | Pseudofunctor | LaxSymmetricFunctor | NormalLaxSymmetricFunctor
            | StrongSymmetricFunctor => Shape::Functor,
            LaxShadowFunctor | NormalLaxShadowFunctor | StrongShadowFunctor => Shape::ShadowFunctor,
        }
    }

    pub fn is_functor(self) -> bool {
        matches!(self.shape(), Shape::Functor | Shape::ShadowFunctor)
    }

    /// Whether the generating graph must have a single vertex.
    pub fn one_object(self) -> bool {
        matches!(self.kind, DoctrineKind::Monoidal) || self.admits_sym()
    }

    pub fn admits_sym(self) -> bool {
        use DoctrineKind::*;
        matches!(self.kind, Symmetric | LaxSymmetricFunctor | NormalLaxSymmetricFunctor | StrongSymmetricFunctor)
    }

    pub fn admits_rotator(self) -> bool {
        matches!(self.shape(), Shape::Shadow | Shape::ShadowFunctor)
    }

    pub fn unit_map_invertible(self) -> bool {
        use DoctrineKind::*;
        matches!(
            self.kind,
            NormalLaxFunctor
                | Pseudofunctor
                | NormalLaxSymmetricFunctor
                | StrongSymmetricFunctor
                | NormalLaxShadowFunctor
                | StrongShadowFunctor
        )
    }

    pub fn comp_map_invertible(self) -> bool {
        use DoctrineKind::*;
        matches!(self.kind, Pseudofunctor | StrongSymmetricFunctor | StrongShadowFunctor)
    }

    pub fn shadow_comm_invertible(self) -> bool {
        self.kind == DoctrineKind::StrongShadowFunctor
    }

    pub fn tracks_perm(self) -> bool {
        self.admits_sym()
    }

    pub fn tracks_rot(self) -> bool {
        self.admits_rotator()
    }

    /// The index category carrying the supporting map, if any.
    pub fn index_family(self) -> Option<Family> {
        use DoctrineKind::*;
        match self.kind {
            LaxFunctor | NormalLaxFunctor | Pseudofunctor => Some(Family::Delta),
            LaxSymmetricFunctor | NormalLaxSymmetricFunctor | StrongSymmetricFunctor => Some(Family::Fin),
            LaxShadowFunctor | NormalLaxShadowFunctor | StrongShadowFunctor => Some(Family::Lambda),
            _ => None,
        }
    }

    /// The localization in which supports live when some structure maps are
    /// invertible.
    pub fn thin_localization(self) -> Option<ThinLocalization> {
        use DoctrineKind::*;
        let (family, inverted) = match self.kind {
            NormalLaxFunctor => (Family::Delta, InvertedClass::Injections),
            Pseudofunctor => (Family::Delta, InvertedClass::AllDelta),
            NormalLaxSymmetricFunctor => (Family::Fin, InvertedClass::Injections),
            StrongSymmetricFunctor => (Family::Fin, InvertedClass::AllMaps),
            NormalLaxShadowFunctor => (Family::Lambda, InvertedClass::Injections),
            StrongShadowFunctor => (Family::Lambda, InvertedClass::DeltaAndTerminal),
            _ => return None,
        };
        Some(ThinLocalization { family, inverted })
    }
}

/// One step of a path into an expression tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    L,
    R,
    #[serde(rename = "in")]
    In,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::L => "L",
            Step::R => "R",
            Step::In => "in",
        })
    }
}

/// Address of a node; the empty path is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn child(&self, step: Step) -> Path {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }

    pub fn join(&self, rest: &Path) -> Path {
        let mut steps = self.0.clone();
        steps.extend_from_slice(&rest.0);
        Path(steps)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Path(s.to_vec()))
    }

    /// `R/R/…` repeated `times` times, the spine of a right comb.
    pub fn right_spine(times: usize) -> Path {
        Path(vec![Step::R; times])
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A formal object: a tree of tensors over edges, units, functor blocks and
/// shadows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectExpr {
    Leaf(EdgeId),
    Unit,
    Tensor(Box<ObjectExpr>, Box<ObjectExpr>),
    /// `F(w)`.
    Functor(Box<ObjectExpr>),
    /// `⟨w⟩`.
    Shadow(Box<ObjectExpr>),
    /// `H⟨w⟩`; the child is always a `Shadow`.
    ShadowFunctor(Box<ObjectExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    Plain,
    Outer,
    Inner,
}

impl ObjectExpr {
    pub fn leaf(name: &str) -> Self {
        ObjectExpr::Leaf(EdgeId::new(name))
    }

    pub fn tensor(a: ObjectExpr, b: ObjectExpr) -> Self {
        ObjectExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn functor(a: ObjectExpr) -> Self {
        ObjectExpr::Functor(Box::new(a))
    }

    pub fn shadow(a: ObjectExpr) -> Self {
        ObjectExpr::Shadow(Box::new(a))
    }

    /// `H⟨a⟩`.
    pub fn shadow_functor(a: ObjectExpr) -> Self {
        ObjectExpr::ShadowFunctor(Box::new(ObjectExpr::shadow(a)))
    }

    /// The right comb `x1 ⊗ (x2 ⊗ (… ⊗ xn))`, or `I` if empty.
    pub fn right_comb(items: Vec<ObjectExpr>) -> Self {
        let mut iter = items.into_iter().rev();
        let Some(last) = iter.next() else {
            return ObjectExpr::Unit;
        };
        iter.fold(last, |acc, x| ObjectExpr::tensor(x, acc))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ObjectExpr::Leaf(_) => "leaf",
            ObjectExpr::Unit => "unit",
            ObjectExpr::Tensor(..) => "tensor",
            ObjectExpr::Functor(_) => "functor",
            ObjectExpr::Shadow(_) => "shadow",
            ObjectExpr::ShadowFunctor(_) => "shadow_functor",
        }
    }

    pub fn child(&self, step: Step) -> Option<&ObjectExpr> {
        match (self, step) {
            (ObjectExpr::Tensor(a, _), Step::L) => Some(a),
            (ObjectExpr::Tensor(_, b), Step::R) => Some(b),
            (ObjectExpr::Functor(a) | ObjectExpr::Shadow(a) | ObjectExpr::ShadowFunctor(a), Step::In) => Some(a),
            _ => None,
        }
    }

    pub fn at(&self, path: &Path) -> Option<&ObjectExpr> {
        path.0.iter().try_fold(self, |node, &s| node.child(s))
    }

    /// A copy with the node at `path` replaced.
    pub fn replace_at(&self, path: &Path, new: ObjectExpr) -> Option<ObjectExpr> {
        fn go(node: &ObjectExpr, steps: &[Step], new: ObjectExpr) -> Option<ObjectExpr> {
            let Some((&first, rest)) = steps.split_first() else {
                return Some(new);
            };
            Some(match (node, first) {
                (ObjectExpr::Tensor(a, b), Step::L) => ObjectExpr::Tensor(Box::new(go(a, rest, new)?), b.clone()),
                (ObjectExpr::Tensor(a, b), Step::R) => ObjectExpr::Tensor(a.clone(), Box::new(go(b, rest, new)?)),
                (ObjectExpr::Functor(a), Step::In) => ObjectExpr::Functor(Box::new(go(a, rest, new)?)),
                (ObjectExpr::Shadow(a), Step::In) => ObjectExpr::Shadow(Box::new(go(a, rest, new)?)),
                (ObjectExpr::ShadowFunctor(a), Step::In) => ObjectExpr::ShadowFunctor(Box::new(go(a, rest, new)?)),
                _ => return None,
            })
        }
        go(self, &path.0, new)
    }

    /// All nodes in pre-order with their paths.
    pub fn nodes(&self) -> Vec<(Path, &ObjectExpr)> {
        fn go<'a>(node: &'a ObjectExpr, path: &mut Vec<Step>, out: &mut Vec<(Path, &'a ObjectExpr)>) {
            out.push((Path(path.clone()), node));
            let steps: &[Step] = match node {
                ObjectExpr::Tensor(..) => &[Step::L, Step::R],
                ObjectExpr::Functor(_) | ObjectExpr::Shadow(_) | ObjectExpr::ShadowFunctor(_) => &[Step::In],
                _ => &[],
            };
            for &s in steps {
                path.push(s);
                go(node.child(s).unwrap(), path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Leaf edges from left to right.
    pub fn frontier(&self) -> Frontier {
        fn go(node: &ObjectExpr, out: &mut Vec<EdgeId>) {
            match node {
                ObjectExpr::Leaf(e) => out.push(e.clone()),
                ObjectExpr::Unit => {}
                ObjectExpr::Tensor(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                ObjectExpr::Functor(a) | ObjectExpr::Shadow(a) | ObjectExpr::ShadowFunctor(a) => go(a, out),
            }
        }
        let mut edges = Vec::new();
        go(self, &mut edges);
        Frontier { edges }
    }

    /// Number of leaves.
    pub fn occurrences(&self) -> usize {
        match self {
            ObjectExpr::Leaf(_) => 1,
            ObjectExpr::Unit => 0,
            ObjectExpr::Tensor(a, b) => a.occurrences() + b.occurrences(),
            ObjectExpr::Functor(a) | ObjectExpr::Shadow(a) | ObjectExpr::ShadowFunctor(a) => a.occurrences(),
        }
    }

    pub fn unit_count(&self) -> usize {
        match self {
            ObjectExpr::Leaf(_) => 0,
            ObjectExpr::Unit => 1,
            ObjectExpr::Tensor(a, b) => a.unit_count() + b.unit_count(),
            ObjectExpr::Functor(a) | ObjectExpr::Shadow(a) | ObjectExpr::ShadowFunctor(a) => a.unit_count(),
        }
    }

    /// Number of `F(…)` blocks.
    pub fn block_count(&self) -> usize {
        match self {
            ObjectExpr::Leaf(_) | ObjectExpr::Unit => 0,
            ObjectExpr::Tensor(a, b) => a.block_count() + b.block_count(),
            ObjectExpr::Functor(_) => 1,
            ObjectExpr::Shadow(a) | ObjectExpr::ShadowFunctor(a) => a.block_count(),
        }
    }

    /// Leaves and blocks lying strictly to the left of the node at `path`.
    pub fn counts_before(&self, path: &Path) -> (usize, usize) {
        let (mut occ, mut blocks) = (0, 0);
        let mut node = self;
        for &s in &path.0 {
            if let (ObjectExpr::Tensor(a, _), Step::R) = (node, s) {
                occ += a.occurrences();
                blocks += a.block_count();
            }
            node = node.child(s).expect("path exists");
        }
        (occ, blocks)
    }

    /// Whether some strict ancestor of `path` is `F(…)` or `H⟨…⟩`.
    pub fn inside_functor(&self, path: &Path) -> bool {
        let mut node = self;
        for &s in &path.0 {
            if matches!(node, ObjectExpr::Functor(_) | ObjectExpr::ShadowFunctor(_)) {
                return true;
            }
            node = match node.child(s) {
                Some(c) => c,
                None => return false,
            };
        }
        false
    }

    /// Edge names used anywhere in the expression.
    pub fn edge_names(&self) -> BTreeSet<String> {
        self.frontier().edges.iter().map(|e| e.as_str().to_string()).collect()
    }

    /// The block assignment of an outer word: the number of blocks and, for
    /// each leaf in order, the 1-based index of the block containing it.
    pub fn block_assignment(&self) -> (usize, Vec<usize>) {
        fn go(node: &ObjectExpr, blocks: &mut usize, out: &mut Vec<usize>) {
            match node {
                ObjectExpr::Tensor(a, b) => {
                    go(a, blocks, out);
                    go(b, blocks, out);
                }
                ObjectExpr::Functor(w) => {
                    *blocks += 1;
                    out.extend(std::iter::repeat_n(*blocks, w.occurrences()));
                }
                ObjectExpr::Shadow(a) | ObjectExpr::ShadowFunctor(a) => go(a, blocks, out),
                ObjectExpr::Leaf(_) | ObjectExpr::Unit => {}
            }
        }
        let (mut blocks, mut out) = (0, Vec::new());
        go(self, &mut blocks, &mut out);
        (blocks, out)
    }
}

/// The ordered list of leaf edges of an object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frontier {
    pub edges: Vec<EdgeId>,
}

impl Frontier {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_distinct_edges(&self) -> bool {
        let set: BTreeSet<_> = self.edges.iter().collect();
        set.len() == self.edges.len()
    }

    /// Not a proper power of a shorter word, i.e. no nontrivial rotation fixes it.
    pub fn is_aperiodic(&self) -> bool {
        let n = self.len();
        (1..n).all(|r| (0..n).any(|i| self.edges[i] != self.edges[(i + r) % n]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unknown doctrine {0:?}")]
    UnknownDoctrine(String),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is declared twice")]
    DuplicateEdge(EdgeId),
    #[error("{left} ends at {left_tgt} but {right} starts at {right_src}")]
    NotComposable { left: EdgeId, left_tgt: String, right: EdgeId, right_src: String },
    #[error("{node} node at path '{path}' is not allowed here in the {doctrine} doctrine")]
    IllegalNodeKind { path: Path, node: &'static str, doctrine: Doctrine },
    #[error("shadowed word runs from {first} to {last}, not an endomorphism")]
    NotEndomorphism { first: String, last: String },
    #[error("functor block at path '{0}' is nested inside another")]
    NestedFunctor(Path),
    #[error("edge at path '{0}' is not inside a functor block")]
    UnwrappedLeaf(Path),
    #[error("the {doctrine} doctrine needs a one-vertex graph, this one has {vertices}")]
    NotOneObject { doctrine: Doctrine, vertices: usize },
}

/// Checks node placement for the doctrine and composability against the graph.
pub fn validate(expr: &ObjectExpr, graph: &Graph, doctrine: Doctrine) -> Result<(), ExprError> {
    if doctrine.one_object() && graph.vertex_count() > 1 {
        return Err(ExprError::NotOneObject { doctrine, vertices: graph.vertex_count() });
    }
    let illegal = |path: &Path, node: &ObjectExpr| ExprError::IllegalNodeKind {
        path: path.clone(),
        node: node.kind_name(),
        doctrine,
    };
    let root = Path::root();
    match (doctrine.shape(), expr) {
        (Shape::Plain, e) => check_region(e, &root, Region::Plain, doctrine)?,
        (Shape::Shadow, ObjectExpr::Shadow(w)) => check_region(w, &root.child(Step::In), Region::Plain, doctrine)?,
        (Shape::Functor, e) => check_region(e, &root, Region::Outer, doctrine)?,
        (Shape::ShadowFunctor, ObjectExpr::Shadow(w)) => {
            check_region(w, &root.child(Step::In), Region::Outer, doctrine)?
        }
        (Shape::ShadowFunctor, ObjectExpr::ShadowFunctor(s)) => match s.as_ref() {
            ObjectExpr::Shadow(w) => check_region(w, &Path(vec![Step::In, Step::In]), Region::Inner, doctrine)?,
            other => return Err(illegal(&root.child(Step::In), other)),
        },
        (_, e) => return Err(illegal(&root, e)),
    }
    let frontier = expr.frontier();
    let mut ends = Vec::with_capacity(frontier.len());
    for e in &frontier.edges {
        let (s, t) = graph.endpoints(e).ok_or_else(|| ExprError::UnknownEdge(e.clone()))?;
        ends.push((e, s, t));
    }
    for w in ends.windows(2) {
        let ((l, _, lt), (r, rs, _)) = (w[0], w[1]);
        if lt != rs {
            return Err(ExprError::NotComposable {
                left: l.clone(),
                left_tgt: lt.to_string(),
                right: r.clone(),
                right_src: rs.to_string(),
            });
        }
    }
    let shadowed = matches!(expr, ObjectExpr::Shadow(_) | ObjectExpr::ShadowFunctor(_));
    if let (true, Some(first), Some(last)) = (shadowed, ends.first(), ends.last()) {
        if first.1 != last.2 {
            return Err(ExprError::NotEndomorphism { first: first.1.to_string(), last: last.2.to_string() });
        }
    }
    Ok(())
}

fn check_region(node: &ObjectExpr, path: &Path, region: Region, doctrine: Doctrine) -> Result<(), ExprError> {
    match (node, region) {
        (ObjectExpr::Unit, _) => Ok(()),
        (ObjectExpr::Leaf(_), Region::Outer) => Err(ExprError::UnwrappedLeaf(path.clone())),
        (ObjectExpr::Leaf(_), _) => Ok(()),
        (ObjectExpr::Tensor(a, b), r) => {
            check_region(a, &path.child(Step::L), r, doctrine)?;
            check_region(b, &path.child(Step::R), r, doctrine)
        }
        (ObjectExpr::Functor(w), Region::Outer) => check_region(w, &path.child(Step::In), Region::Inner, doctrine),
        (ObjectExpr::Functor(_), Region::Inner) => Err(ExprError::NestedFunctor(path.clone())),
        (other, _) => Err(ExprError::IllegalNodeKind { path: path.clone(), node: other.kind_name(), doctrine }),
    }
}

/// The supporting index object of a (valid) object, with leaves labelled by
/// their frontier positions. `None` for doctrines without functor blocks.
pub fn supporting_object(expr: &ObjectExpr, doctrine: Doctrine) -> Option<CommaObject> {
    let family = doctrine.index_family()?;
    let n = expr.occurrences();
    if let ObjectExpr::ShadowFunctor(_) = expr {
        return Some(IndexMor::Lambda(LambdaPrimeMor::terminal(LambdaObj::Finite(n))));
    }
    let (k, values) = expr.block_assignment();
    Some(match family {
        Family::Delta => IndexMor::Delta(DeltaMap::new(n, k, values).expect("blocks appear in order")),
        Family::Fin => IndexMor::Fin(FinMap::new(n, k, values).expect("block indices in range")),
        Family::Lambda => {
            IndexMor::Lambda(LambdaPrimeMor::from_delta(&DeltaMap::new(n, k, values).expect("blocks appear in order")))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> ObjectExpr {
        ObjectExpr::leaf(&format!("X{i}"))
    }

    #[test]
    fn block_assignment_example() {
        use ObjectExpr as E;
        let e = E::tensor(
            E::tensor(E::functor(E::tensor(x(1), x(2))), E::functor(E::tensor(E::Unit, E::Unit))),
            E::tensor(E::functor(E::tensor(E::Unit, x(3))), E::Unit),
        );
        let alpha = supporting_object(&e, DoctrineKind::LaxFunctor.into()).unwrap();
        assert_eq!(alpha, IndexMor::Delta(DeltaMap::new(3, 3, vec![1, 1, 3]).unwrap()));
        validate(&e, &Graph::chain(3), DoctrineKind::LaxFunctor.into()).unwrap();
    }

    #[test]
    fn validation_errors() {
        let g = Graph::chain(3);
        let bic: Doctrine = DoctrineKind::Bicategory.into();
        let bad = ObjectExpr::tensor(x(2), x(1));
        assert!(matches!(validate(&bad, &g, bic), Err(ExprError::NotComposable { .. })));
        let nested = ObjectExpr::functor(ObjectExpr::functor(x(1)));
        assert!(matches!(validate(&nested, &g, DoctrineKind::LaxFunctor.into()), Err(ExprError::NestedFunctor(_))));
        let bare = ObjectExpr::tensor(ObjectExpr::functor(x(1)), x(2));
        assert!(matches!(validate(&bare, &g, DoctrineKind::LaxFunctor.into()), Err(ExprError::UnwrappedLeaf(_))));
        let sh = ObjectExpr::shadow(ObjectExpr::tensor(x(1), x(2)));
        assert!(matches!(validate(&sh, &g, DoctrineKind::Shadow.into()), Err(ExprError::NotEndomorphism { .. })));
        assert!(matches!(validate(&x(1), &g, DoctrineKind::Monoidal.into()), Err(ExprError::NotOneObject { .. })));
        assert!(matches!(validate(&sh, &g, bic), Err(ExprError::IllegalNodeKind { .. })));
    }

    #[test]
    fn aperiodicity() {
        let f = |names: &[&str]| Frontier { edges: names.iter().map(|&s| EdgeId::new(s)).collect() };
        assert!(f(&["X", "Y"]).is_aperiodic());
        assert!(!f(&["X", "Y", "X", "Y"]).is_aperiodic());
        assert!(f(&[]).is_aperiodic());
    }
}
