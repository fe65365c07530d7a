//! Formal morphisms: words of structure moves applied at paths.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{validate, Doctrine, ExprError, Graph, ObjectExpr, Orientation, Path, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// `a ⊗ (b ⊗ c) → (a ⊗ b) ⊗ c`.
    Assoc,
    /// `I ⊗ a → a`.
    LUnit,
    /// `a ⊗ I → a`.
    RUnit,
    /// `a ⊗ b → b ⊗ a`.
    Sym,
    /// `⟨A ⊗ B⟩ → ⟨B ⊗ A⟩` where `A` holds the first `j` leaves.
    Rotator(usize),
    /// `I → F(I)`.
    UnitMap,
    /// `F(w) ⊗ F(w') → F(w ⊗ w')`.
    CompMap,
    /// `⟨F(w)⟩ → H⟨w⟩`.
    ShadowComm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Fwd,
    Inv,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Fwd => Direction::Inv,
            Direction::Inv => Direction::Fwd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub dir: Direction,
    pub path: Path,
}

impl Move {
    pub fn new(kind: MoveKind, dir: Direction, path: Path) -> Self {
        Move { kind, dir, path }
    }

    pub fn fwd(kind: MoveKind, path: Path) -> Self {
        Move::new(kind, Direction::Fwd, path)
    }

    pub fn inv(kind: MoveKind, path: Path) -> Self {
        Move::new(kind, Direction::Inv, path)
    }

    pub fn inverse(&self) -> Move {
        Move { kind: self.kind, dir: self.dir.flip(), path: self.path.clone() }
    }

    /// The same move applied at `prefix/path`.
    pub fn under(&self, prefix: &Path) -> Move {
        Move { kind: self.kind, dir: self.dir, path: prefix.join(&self.path) }
    }

    /// Whether the move is one of the functor structure maps whose direction
    /// depends on the orientation.
    pub fn is_structure_map(&self) -> bool {
        matches!(self.kind, MoveKind::UnitMap | MoveKind::CompMap | MoveKind::ShadowComm)
    }

    /// The syntactic direction actually performed: structure maps run the
    /// other way in oplax doctrines.
    pub fn rewrites_forward(&self, doctrine: Doctrine) -> bool {
        let flipped = doctrine.orientation == Orientation::Oplax && self.is_structure_map();
        (self.dir == Direction::Fwd) != flipped
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::Assoc => f.write_str("assoc"),
            MoveKind::LUnit => f.write_str("lu"),
            MoveKind::RUnit => f.write_str("ru"),
            MoveKind::Sym => f.write_str("sym"),
            MoveKind::Rotator(j) => write!(f, "rot:{j}"),
            MoveKind::UnitMap => f.write_str("unit"),
            MoveKind::CompMap => f.write_str("comp"),
            MoveKind::ShadowComm => f.write_str("shcomm"),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if self.dir == Direction::Inv {
            f.write_str("~")?;
        }
        if self.path.depth() > 0 {
            write!(f, "@{}", self.path)?;
        }
        Ok(())
    }
}

/// Renders a move list in the morphism syntax.
pub fn moves_to_string(moves: &[Move]) -> String {
    moves.iter().map(Move::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphError {
    #[error("invalid object: {0}")]
    Expr(#[from] ExprError),
    #[error("move {mv} does not match the object: {reason}")]
    PatternMismatch { mv: Move, reason: String },
    #[error("move {mv} is not invertible in the {doctrine} doctrine")]
    NotInvertible { mv: Move, doctrine: Doctrine },
    #[error("move {mv} is not available in the {doctrine} doctrine")]
    IllegalInDoctrine { mv: Move, doctrine: Doctrine },
    #[error("codomain {cod} does not match domain {dom}")]
    NotComposable { cod: String, dom: String },
    #[error("move {index} ({mv}) failed: {source}")]
    AtMove {
        index: usize,
        mv: Move,
        #[source]
        source: Box<MorphError>,
    },
}

fn admitted(kind: MoveKind, doctrine: Doctrine) -> bool {
    match kind {
        MoveKind::Assoc | MoveKind::LUnit | MoveKind::RUnit => true,
        MoveKind::Sym => doctrine.admits_sym(),
        MoveKind::Rotator(_) => doctrine.admits_rotator(),
        MoveKind::UnitMap | MoveKind::CompMap => doctrine.is_functor(),
        MoveKind::ShadowComm => doctrine.shape() == crate::expr::Shape::ShadowFunctor,
    }
}

fn invertible(kind: MoveKind, doctrine: Doctrine) -> bool {
    match kind {
        MoveKind::UnitMap => doctrine.unit_map_invertible(),
        MoveKind::CompMap => doctrine.comp_map_invertible(),
        MoveKind::ShadowComm => doctrine.shadow_comm_invertible(),
        _ => true,
    }
}

fn is_word_node(e: &ObjectExpr) -> bool {
    matches!(e, ObjectExpr::Leaf(_) | ObjectExpr::Unit | ObjectExpr::Tensor(..) | ObjectExpr::Functor(_))
}

/// Applies one move, checking doctrine admissibility, invertibility and the
/// local pattern.
pub fn apply_move(expr: &ObjectExpr, mv: &Move, doctrine: Doctrine) -> Result<ObjectExpr, MorphError> {
    if !admitted(mv.kind, doctrine) {
        return Err(MorphError::IllegalInDoctrine { mv: mv.clone(), doctrine });
    }
    if mv.dir == Direction::Inv && !invertible(mv.kind, doctrine) {
        return Err(MorphError::NotInvertible { mv: mv.clone(), doctrine });
    }
    let mismatch = |reason: &str| MorphError::PatternMismatch { mv: mv.clone(), reason: reason.to_string() };
    let node = expr.at(&mv.path).ok_or_else(|| mismatch("path does not exist"))?;
    let forward = mv.rewrites_forward(doctrine);
    use ObjectExpr as E;
    let new = match (mv.kind, forward, node) {
        (MoveKind::Assoc, true, E::Tensor(a, bc)) => match bc.as_ref() {
            E::Tensor(b, c) => E::Tensor(Box::new(E::Tensor(a.clone(), b.clone())), c.clone()),
            _ => return Err(mismatch("expected a ⊗ (b ⊗ c)")),
        },
        (MoveKind::Assoc, false, E::Tensor(ab, c)) => match ab.as_ref() {
            E::Tensor(a, b) => E::Tensor(a.clone(), Box::new(E::Tensor(b.clone(), c.clone()))),
            _ => return Err(mismatch("expected (a ⊗ b) ⊗ c")),
        },
        (MoveKind::LUnit, true, E::Tensor(u, a)) if **u == E::Unit => (**a).clone(),
        (MoveKind::RUnit, true, E::Tensor(a, u)) if **u == E::Unit => (**a).clone(),
        (MoveKind::LUnit, false, a) if is_word_node(a) => E::tensor(E::Unit, a.clone()),
        (MoveKind::RUnit, false, a) if is_word_node(a) => E::tensor(a.clone(), E::Unit),
        (MoveKind::Sym, _, E::Tensor(a, b)) => E::Tensor(b.clone(), a.clone()),
        (MoveKind::Rotator(j), fwd, E::Shadow(w)) => match w.as_ref() {
            E::Tensor(a, b) => {
                let moved = if fwd { a.occurrences() } else { b.occurrences() };
                if moved != j {
                    return Err(mismatch(&format!("split index {j} but the moved block has {moved} leaves")));
                }
                E::shadow(E::Tensor(b.clone(), a.clone()))
            }
            _ if j == 0 => node.clone(),
            _ => return Err(mismatch("expected ⟨A ⊗ B⟩")),
        },
        (MoveKind::UnitMap, true, E::Unit) => {
            if expr.inside_functor(&mv.path) {
                return Err(mismatch("unit already lies inside a functor block"));
            }
            E::functor(E::Unit)
        }
        (MoveKind::UnitMap, false, E::Functor(u)) if **u == E::Unit => E::Unit,
        (MoveKind::CompMap, true, E::Tensor(a, b)) => match (a.as_ref(), b.as_ref()) {
            (E::Functor(w), E::Functor(v)) => E::functor(E::Tensor(w.clone(), v.clone())),
            _ => return Err(mismatch("expected F(w) ⊗ F(w')")),
        },
        (MoveKind::CompMap, false, E::Functor(w)) => match w.as_ref() {
            E::Tensor(a, b) => E::tensor(E::Functor(a.clone()), E::Functor(b.clone())),
            _ => return Err(mismatch("expected F(w ⊗ w')")),
        },
        (MoveKind::ShadowComm, true, E::Shadow(f)) => match f.as_ref() {
            E::Functor(w) => E::shadow_functor((**w).clone()),
            _ => return Err(mismatch("expected ⟨F(w)⟩")),
        },
        (MoveKind::ShadowComm, false, E::ShadowFunctor(s)) => match s.as_ref() {
            E::Shadow(w) => E::shadow(E::functor((**w).clone())),
            _ => return Err(mismatch("expected H⟨w⟩")),
        },
        _ => return Err(mismatch(&format!("not applicable to a {} node", node.kind_name()))),
    };
    Ok(expr.replace_at(&mv.path, new).expect("path exists"))
}

/// A formal morphism: a domain object and a word of moves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphTerm {
    pub domain: ObjectExpr,
    pub moves: Vec<Move>,
}

impl MorphTerm {
    pub fn new(domain: ObjectExpr, moves: Vec<Move>) -> Self {
        MorphTerm { domain, moves }
    }

    pub fn identity(domain: ObjectExpr) -> Self {
        MorphTerm { domain, moves: Vec::new() }
    }

    /// Every intermediate object, starting with the domain.
    pub fn replay(&self, doctrine: Doctrine) -> Result<Vec<ObjectExpr>, MorphError> {
        let mut states = Vec::with_capacity(self.moves.len() + 1);
        states.push(self.domain.clone());
        for (index, mv) in self.moves.iter().enumerate() {
            let next = apply_move(states.last().unwrap(), mv, doctrine)
                .map_err(|e| MorphError::AtMove { index, mv: mv.clone(), source: Box::new(e) })?;
            states.push(next);
        }
        Ok(states)
    }

    pub fn codomain(&self, doctrine: Doctrine) -> Result<ObjectExpr, MorphError> {
        let mut current = self.domain.clone();
        for (index, mv) in self.moves.iter().enumerate() {
            current = apply_move(&current, mv, doctrine)
                .map_err(|e| MorphError::AtMove { index, mv: mv.clone(), source: Box::new(e) })?;
        }
        Ok(current)
    }

    /// Validates the domain against the graph and replays every move.
    pub fn validate(&self, graph: &Graph, doctrine: Doctrine) -> Result<ObjectExpr, MorphError> {
        validate(&self.domain, graph, doctrine)?;
        self.codomain(doctrine)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &MorphTerm, doctrine: Doctrine) -> Result<MorphTerm, MorphError> {
        let cod = self.codomain(doctrine)?;
        if cod != next.domain {
            return Err(MorphError::NotComposable {
                cod: crate::dsl::print_object(&cod),
                dom: crate::dsl::print_object(&next.domain),
            });
        }
        let mut moves = self.moves.clone();
        moves.extend(next.moves.iter().cloned());
        Ok(MorphTerm { domain: self.domain.clone(), moves })
    }

    /// The reversed word with every move inverted; fails if some move is
    /// one-way in the doctrine.
    pub fn invert(&self, doctrine: Doctrine) -> Result<MorphTerm, MorphError> {
        let cod = self.codomain(doctrine)?;
        let inv = MorphTerm { domain: cod, moves: self.moves.iter().rev().map(Move::inverse).collect() };
        inv.codomain(doctrine)?;
        Ok(inv)
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// `f` followed by `g`.
pub fn compose(f: &MorphTerm, g: &MorphTerm, doctrine: Doctrine) -> Result<MorphTerm, MorphError> {
    f.then(g, doctrine)
}

const ALL_DIRS: [Direction; 2] = [Direction::Fwd, Direction::Inv];

/// Every single move that applies to `expr`, with its result. Rotators that
/// would rewrite to the same object are omitted.
pub fn applicable_moves(expr: &ObjectExpr, doctrine: Doctrine) -> Vec<(Move, ObjectExpr)> {
    let mut out = Vec::new();
    for (path, node) in expr.nodes() {
        let mut kinds = vec![MoveKind::Assoc, MoveKind::LUnit, MoveKind::RUnit];
        if doctrine.admits_sym() {
            kinds.push(MoveKind::Sym);
        }
        if doctrine.is_functor() {
            kinds.push(MoveKind::UnitMap);
            kinds.push(MoveKind::CompMap);
        }
        if doctrine.shape() == crate::expr::Shape::ShadowFunctor {
            kinds.push(MoveKind::ShadowComm);
        }
        for kind in kinds {
            for dir in ALL_DIRS {
                let mv = Move::new(kind, dir, path.clone());
                if let Ok(next) = apply_move(expr, &mv, doctrine) {
                    out.push((mv, next));
                }
            }
        }
        if doctrine.admits_rotator() {
            if let ObjectExpr::Shadow(w) = node {
                if let ObjectExpr::Tensor(a, b) = w.as_ref() {
                    for (dir, j) in [(Direction::Fwd, a.occurrences()), (Direction::Inv, b.occurrences())] {
                        let mv = Move::new(MoveKind::Rotator(j), dir, path.clone());
                        if let Ok(next) = apply_move(expr, &mv, doctrine) {
                            out.push((mv, next));
                        }
                    }
                }
            }
        }
    }
    out
}

/// For a move at the root, where each subterm it treats as opaque ends up:
/// pairs of (path before, path after), relative to the move's node.
pub fn slot_paths(kind: MoveKind, forward: bool) -> Vec<(Path, Path)> {
    use Step::{In, L, R};
    let p = |s: &[Step]| Path(s.to_vec());
    let pairs: Vec<(Path, Path)> = match kind {
        MoveKind::Assoc => vec![(p(&[L]), p(&[L, L])), (p(&[R, L]), p(&[L, R])), (p(&[R, R]), p(&[R]))],
        MoveKind::LUnit => vec![(p(&[R]), p(&[]))],
        MoveKind::RUnit => vec![(p(&[L]), p(&[]))],
        MoveKind::Sym => vec![(p(&[L]), p(&[R])), (p(&[R]), p(&[L]))],
        MoveKind::Rotator(_) => vec![(p(&[In, L]), p(&[In, R])), (p(&[In, R]), p(&[In, L]))],
        MoveKind::UnitMap => vec![],
        MoveKind::CompMap => vec![(p(&[L, In]), p(&[In, L])), (p(&[R, In]), p(&[In, R]))],
        MoveKind::ShadowComm => vec![(p(&[In, In]), p(&[In, In]))],
    };
    if forward {
        pairs
    } else {
        pairs.into_iter().map(|(a, b)| (b, a)).collect()
    }
}
