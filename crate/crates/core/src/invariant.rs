//! Index-category invariants of formal morphisms: the permutation of
//! occurrences, the rotation of a shadow, and the supporting map into a
//! comma category `(n↓Δ)`, `(n↓Fin)` or `(n↓Λ′)`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::expr::{supporting_object, Doctrine, ObjectExpr, Orientation};
use crate::index::{
    compose_index, thin_reachable, CommaMor, CommaObject, CyclicMap, DeltaMap, Family, FinMap, IndexError, IndexMor,
    LambdaObj, LambdaPrimeMor, Perm, Rot,
};
use crate::morph::{Direction, Move, MoveKind, MorphError, MorphTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("the {doctrine} doctrine has no {what} invariant")]
    WrongDoctrine { doctrine: Doctrine, what: &'static str },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Where the supporting map lives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// An honest comma-category morphism. In oplax doctrines it runs from
    /// the codomain's supporting object to the domain's.
    Comma(CommaMor),
    /// Supports in a thin localization carry only a reachability certificate.
    Thin { dom: CommaObject, cod: CommaObject, reachable: bool },
}

/// All invariants of a formal morphism. Fields a doctrine does not track are
/// `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariant {
    pub perm: Option<Perm>,
    pub rot: Option<Rot>,
    pub support: Option<Support>,
    /// Set when a rotation was requested on an empty frontier.
    pub zero_frontier: bool,
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        if let Some(p) = &self.perm {
            map.serialize_entry("perm", p)?;
        }
        if let Some(r) = &self.rot {
            map.serialize_entry("rot", &r.amount)?;
        }
        if let Some(sup) = &self.support {
            map.serialize_entry("support", sup)?;
        }
        if self.zero_frontier {
            map.serialize_entry("zero_frontier", &true)?;
        }
        map.end()
    }
}

/// Rewrites a supporting object computed from frontier positions into one
/// indexed by domain labels.
pub(crate) fn relabel(alpha: &CommaObject, perm: Option<&Perm>, rot: Option<Rot>) -> Result<CommaObject, IndexError> {
    match alpha {
        IndexMor::Fin(_) => match perm {
            Some(p) => compose_index(alpha, &IndexMor::Fin(FinMap::from_perm(p))),
            None => Ok(alpha.clone()),
        },
        IndexMor::Lambda(_) => match rot {
            Some(r) if r.n > 0 => compose_index(alpha, &IndexMor::Lambda(LambdaPrimeMor::Cyclic(CyclicMap::rotation(r)))),
            _ => Ok(alpha.clone()),
        },
        IndexMor::Delta(_) => Ok(alpha.clone()),
    }
}

fn index_object(e: &ObjectExpr) -> LambdaObj {
    match e {
        ObjectExpr::ShadowFunctor(_) => LambdaObj::Star,
        other => LambdaObj::Finite(other.block_count()),
    }
}

/// The index map `k_before → k_after` of a syntactic rewrite. Structure maps
/// must be given in their lax (forward) syntactic direction.
fn forward_step(before: &ObjectExpr, mv: &Move, syntactic_forward: bool, family: Family) -> Result<IndexMor, InvariantError> {
    let obj = index_object(before);
    let k = before.block_count();
    let (_, blocks_left) = before.counts_before(&mv.path);
    let node = before.at(&mv.path).ok_or_else(|| InvariantError::Inconsistent("move path vanished".into()))?;
    let outer = !before.inside_functor(&mv.path);
    let structure = matches!(mv.kind, MoveKind::UnitMap | MoveKind::CompMap | MoveKind::ShadowComm);
    if structure && !syntactic_forward {
        return Err(InvariantError::Inconsistent(format!("{mv} runs against the structure map")));
    }
    Ok(match (mv.kind, node) {
        (MoveKind::UnitMap, _) => IndexMor::from_delta(family, &DeltaMap::coface(k + 1, blocks_left + 1)?),
        (MoveKind::CompMap, _) => IndexMor::from_delta(family, &DeltaMap::codegeneracy(k - 1, blocks_left + 1)?),
        (MoveKind::ShadowComm, _) => IndexMor::Lambda(LambdaPrimeMor::ToStar(1)),
        (MoveKind::Sym, ObjectExpr::Tensor(a, b)) if outer && k > 0 => {
            let swap = Perm::block_swap(k, blocks_left, a.block_count(), b.block_count());
            IndexMor::Fin(FinMap::from_perm(&swap))
        }
        (MoveKind::Rotator(_), ObjectExpr::Shadow(w)) if outer && k > 0 => match w.as_ref() {
            ObjectExpr::Tensor(a, b) => {
                let shift = if syntactic_forward { a.block_count() as i64 } else { -(b.block_count() as i64) };
                IndexMor::Lambda(LambdaPrimeMor::rotation(Rot::new(k, shift)))
            }
            _ => IndexMor::identity(family, obj)?,
        },
        _ => IndexMor::identity(family, obj)?,
    })
}

struct Tracker {
    /// `at[p]` is the label of the occurrence at position `p` (0-based).
    at: Vec<usize>,
    rot: i64,
}

impl Tracker {
    fn step(&mut self, before: &ObjectExpr, mv: &Move, syntactic_forward: bool) {
        match (mv.kind, before.at(&mv.path)) {
            (MoveKind::Sym, Some(ObjectExpr::Tensor(a, b))) => {
                let (offset, _) = before.counts_before(&mv.path);
                let (la, lb) = (a.occurrences(), b.occurrences());
                self.at[offset..offset + la + lb].rotate_left(la);
            }
            (MoveKind::Rotator(j), Some(ObjectExpr::Shadow(w))) if matches!(w.as_ref(), ObjectExpr::Tensor(..)) => {
                if syntactic_forward {
                    self.at.rotate_left(j);
                    self.rot += j as i64;
                } else {
                    self.at.rotate_right(j);
                    self.rot -= j as i64;
                }
            }
            _ => {}
        }
    }

    fn perm(&self) -> Perm {
        let mut images = vec![0; self.at.len()];
        for (p, &label) in self.at.iter().enumerate() {
            images[label] = p + 1;
        }
        Perm::from_images(images).expect("tracked labels form a permutation")
    }
}

/// Computes every invariant the doctrine tracks.
pub fn invariant(f: &MorphTerm, doctrine: Doctrine) -> Result<Invariant, InvariantError> {
    let states = f.replay(doctrine)?;
    let n = f.domain.occurrences();
    let mut tracker = Tracker { at: (0..n).collect(), rot: 0 };
    let family = doctrine.index_family();
    let thin = doctrine.thin_localization();
    let alpha_dom = supporting_object(&f.domain, doctrine);
    let mut beta = match (&alpha_dom, thin) {
        (Some(a), None) => Some(IndexMor::identity(a.family(), a.target())?),
        _ => None,
    };
    for (i, mv) in f.moves.iter().enumerate() {
        let (before, after) = (&states[i], &states[i + 1]);
        let syn_fwd = mv.rewrites_forward(doctrine);
        tracker.step(before, mv, syn_fwd);
        if let (Some(b), Some(fam)) = (beta.as_mut(), family) {
            *b = match doctrine.orientation {
                Orientation::Lax => compose_index(&forward_step(before, mv, syn_fwd, fam)?, b)?,
                Orientation::Oplax => {
                    let back = Move { kind: mv.kind, dir: mv.dir.flip(), path: mv.path.clone() };
                    compose_index(b, &forward_step(after, &back, !syn_fwd, fam)?)?
                }
            };
        }
    }
    let perm = doctrine.tracks_perm().then(|| tracker.perm());
    let rot = doctrine.tracks_rot().then(|| Rot::new(n, tracker.rot));
    let zero_frontier = doctrine.tracks_rot() && n == 0;
    let support = match alpha_dom {
        None => None,
        Some(alpha_dom) => {
            let cod = states.last().unwrap();
            let alpha_cod = relabel(
                &supporting_object(cod, doctrine).expect("same doctrine"),
                perm.as_ref(),
                rot,
            )?;
            Some(match (thin, beta) {
                (Some(loc), _) => {
                    let reachable = thin_reachable(loc, &alpha_dom, &alpha_cod)?;
                    Support::Thin { dom: alpha_dom, cod: alpha_cod, reachable }
                }
                (None, Some(map)) => {
                    let (from, to) = match doctrine.orientation {
                        Orientation::Lax => (alpha_dom, alpha_cod),
                        Orientation::Oplax => (alpha_cod, alpha_dom),
                    };
                    let mor = CommaMor::new(from, map)?;
                    if mor.cod != to {
                        return Err(InvariantError::Inconsistent(format!(
                            "supporting map lands on {:?}, expected {:?}",
                            mor.cod, to
                        )));
                    }
                    Support::Comma(mor)
                }
                (None, None) => unreachable!("beta is tracked whenever the localization is not thin"),
            })
        }
    };
    Ok(Invariant { perm, rot, support, zero_frontier })
}

impl Invariant {
    /// The invariant of `f` followed by `g`, given the invariants of each.
    pub fn then(&self, next: &Invariant, doctrine: Doctrine) -> Result<Invariant, InvariantError> {
        let perm = match (&self.perm, &next.perm) {
            (Some(a), Some(b)) => Some(a.then(b)),
            _ => None,
        };
        let rot = match (self.rot, next.rot) {
            (Some(a), Some(b)) => Some(a.then(b)),
            _ => None,
        };
        let support = match (&self.support, &next.support) {
            (Some(Support::Comma(a)), Some(Support::Comma(b))) => {
                let relabelled_b = CommaMor::new(relabel_comma(&b.dom, self)?, b.map.clone())?;
                Some(Support::Comma(match doctrine.orientation {
                    Orientation::Lax => a.then(&relabelled_b)?,
                    Orientation::Oplax => relabelled_b.then(a)?,
                }))
            }
            (Some(Support::Thin { dom, .. }), Some(Support::Thin { cod, .. })) => {
                let loc = doctrine
                    .thin_localization()
                    .ok_or(InvariantError::WrongDoctrine { doctrine, what: "thin support" })?;
                let cod = relabel_comma(cod, self)?;
                let reachable = thin_reachable(loc, dom, &cod)?;
                Some(Support::Thin { dom: dom.clone(), cod, reachable })
            }
            (None, None) => None,
            _ => return Err(InvariantError::Inconsistent("mismatched support kinds".into())),
        };
        Ok(Invariant { perm, rot, support, zero_frontier: self.zero_frontier || next.zero_frontier })
    }
}

fn relabel_comma(alpha: &CommaObject, first: &Invariant) -> Result<CommaObject, IndexError> {
    relabel(alpha, first.perm.as_ref(), first.rot)
}

/// The permutation of occurrences, for symmetric doctrines.
pub fn permutation_of(f: &MorphTerm, doctrine: Doctrine) -> Result<Perm, InvariantError> {
    invariant(f, doctrine)?.perm.ok_or(InvariantError::WrongDoctrine { doctrine, what: "permutation" })
}

/// The rotation of a shadowed word, for shadow doctrines.
pub fn rotation_of(f: &MorphTerm, doctrine: Doctrine) -> Result<Rot, InvariantError> {
    invariant(f, doctrine)?.rot.ok_or(InvariantError::WrongDoctrine { doctrine, what: "rotation" })
}

/// The supporting map, for functor doctrines.
pub fn supporting_map(f: &MorphTerm, doctrine: Doctrine) -> Result<Support, InvariantError> {
    invariant(f, doctrine)?.support.ok_or(InvariantError::WrongDoctrine { doctrine, what: "supporting map" })
}

/// The supporting map of one move applied to `before`, as a comma morphism
/// in the lax direction. Exposed for oracle checks.
pub fn move_support(before: &ObjectExpr, mv: &Move, doctrine: Doctrine) -> Result<IndexMor, InvariantError> {
    let family = doctrine.index_family().ok_or(InvariantError::WrongDoctrine { doctrine, what: "supporting map" })?;
    forward_step(before, mv, mv.dir == Direction::Fwd, family)
}
