//! Constructing formal morphisms with prescribed invariants.
//!
//! Every object is first brought to a canonical form: units are removed
//! (outermost, then leftmost, first) and the word is reassociated to a right
//! comb. In functor doctrines each block is normalized before the outer word.
//! Permutations are then realized by adjacent transpositions, rotations by a
//! single rotator after reassociating, and supporting maps through the
//! canonical factorizations in Δ, Fin and Λ.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{supporting_object, Doctrine, ObjectExpr, Orientation, Path, Shape, Step};
use crate::index::{
    compose_index, factor_delta, factor_fin, factor_lambda, hom_set, DeltaGen, DeltaMap, IndexError, IndexMor,
    InvertedClass, LambdaObj, LambdaPrimeMor, Perm, Rot,
};
use crate::invariant::{invariant, relabel, InvariantError};
use crate::morph::{apply_move, applicable_moves, Move, MoveKind, MorphError, MorphTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("target cannot be reached: {0}")]
    UnreachableTarget(String),
    #[error("frontiers do not match: {0}")]
    FrontierMismatch(String),
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Requested invariants; missing components are inferred from the codomain
/// when one is given, and default to identities otherwise.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTarget {
    pub perm: Option<Perm>,
    pub rot: Option<Rot>,
    pub support: Option<IndexMor>,
}

/// Upper bound on states explored by the fallback search in thin doctrines.
pub const SEARCH_LIMIT: usize = 200_000;

struct Builder {
    doctrine: Doctrine,
    domain: ObjectExpr,
    current: ObjectExpr,
    moves: Vec<Move>,
}

fn region_nodes<'a>(expr: &'a ObjectExpr, base: &Path) -> Vec<(Path, &'a ObjectExpr)> {
    let Some(root) = expr.at(base) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut stack = vec![(base.clone(), root)];
    while let Some((p, node)) = stack.pop() {
        out.push((p.clone(), node));
        if let ObjectExpr::Tensor(a, b) = node {
            stack.push((p.child(Step::R), b));
            stack.push((p.child(Step::L), a));
        }
    }
    out
}

fn spine(base: &Path, i: usize) -> Path {
    base.join(&Path::right_spine(i))
}

impl Builder {
    fn new(domain: &ObjectExpr, doctrine: Doctrine) -> Self {
        Builder { doctrine, domain: domain.clone(), current: domain.clone(), moves: Vec::new() }
    }

    fn push(&mut self, mv: Move) -> Result<(), WitnessError> {
        self.current = apply_move(&self.current, &mv, self.doctrine)?;
        self.moves.push(mv);
        Ok(())
    }

    fn finish(self) -> MorphTerm {
        MorphTerm { domain: self.domain, moves: self.moves }
    }

    /// Removes units and right-associates the word rooted at `base`,
    /// treating functor blocks as atoms.
    fn normalize_region(&mut self, base: &Path) -> Result<(), WitnessError> {
        loop {
            let nodes = region_nodes(&self.current, base);
            let unit = nodes
                .iter()
                .enumerate()
                .filter(|(_, (p, n))| **n == ObjectExpr::Unit && p.depth() > base.depth())
                .min_by_key(|(i, (p, _))| (p.depth(), *i))
                .map(|(_, (p, _))| p.clone());
            let Some(unit) = unit else { break };
            let mut parent = unit.clone();
            let last = parent.0.pop().unwrap();
            let kind = if last == Step::L { MoveKind::LUnit } else { MoveKind::RUnit };
            self.push(Move::fwd(kind, parent))?;
        }
        loop {
            let nodes = region_nodes(&self.current, base);
            let redex = nodes
                .iter()
                .enumerate()
                .filter(|(_, (_, n))| matches!(n, ObjectExpr::Tensor(a, _) if matches!(a.as_ref(), ObjectExpr::Tensor(..))))
                .max_by_key(|(i, (p, _))| (p.depth(), *i))
                .map(|(_, (p, _))| p.clone());
            let Some(redex) = redex else { break };
            self.push(Move::inv(MoveKind::Assoc, redex))?;
        }
        Ok(())
    }

    fn block_paths(&self, base: &Path) -> Vec<Path> {
        region_nodes(&self.current, base)
            .into_iter()
            .filter(|(_, n)| matches!(n, ObjectExpr::Functor(_)))
            .map(|(p, _)| p)
            .collect()
    }

    /// Base path of the outer word, if the current object has one.
    fn outer_base(&self) -> Path {
        match &self.current {
            ObjectExpr::Shadow(_) | ObjectExpr::ShadowFunctor(_) => Path(vec![Step::In]),
            _ => Path::root(),
        }
    }

    fn normalize(&mut self) -> Result<(), WitnessError> {
        match (self.doctrine.shape(), &self.current) {
            (Shape::Plain, _) => self.normalize_region(&Path::root()),
            (Shape::Shadow, _) => self.normalize_region(&Path(vec![Step::In])),
            (_, ObjectExpr::ShadowFunctor(_)) => self.normalize_region(&Path(vec![Step::In, Step::In])),
            _ => {
                let base = self.outer_base();
                for block in self.block_paths(&base) {
                    self.normalize_region(&block.child(Step::In))?;
                }
                self.normalize_region(&base)
            }
        }
    }

    /// Exchanges atoms `i` and `i + 1` (1-based) of the right comb at `base`
    /// holding `count` atoms.
    fn adjacent_swap(&mut self, base: &Path, i: usize, count: usize) -> Result<(), WitnessError> {
        let at = spine(base, i - 1);
        if i + 1 == count {
            self.push(Move::fwd(MoveKind::Sym, at))
        } else {
            self.push(Move::fwd(MoveKind::Assoc, at.clone()))?;
            self.push(Move::fwd(MoveKind::Sym, at.child(Step::L)))?;
            self.push(Move::inv(MoveKind::Assoc, at))
        }
    }

    /// Bubble-sorts the atoms of the right comb at `base` by `keys`.
    fn sort_atoms(&mut self, base: &Path, mut keys: Vec<usize>) -> Result<(), WitnessError> {
        let count = keys.len();
        for pass in 0..count {
            for p in 0..count.saturating_sub(1 + pass) {
                if keys[p] > keys[p + 1] {
                    self.adjacent_swap(base, p + 1, count)?;
                    keys.swap(p, p + 1);
                }
            }
        }
        Ok(())
    }

    /// Merges blocks `j` and `j + 1` of the right comb of `k` blocks.
    fn merge_blocks(&mut self, base: &Path, j: usize, k: usize) -> Result<(), WitnessError> {
        let at = spine(base, j - 1);
        if j + 1 == k {
            self.push(Move::fwd(MoveKind::CompMap, at))
        } else {
            self.push(Move::fwd(MoveKind::Assoc, at.clone()))?;
            self.push(Move::fwd(MoveKind::CompMap, at.child(Step::L)))
        }
    }

    /// Inserts an empty block at position `i` of the right comb of `k` blocks.
    fn insert_block(&mut self, base: &Path, i: usize, k: usize) -> Result<(), WitnessError> {
        if k == 0 {
            return self.push(Move::fwd(MoveKind::UnitMap, base.clone()));
        }
        if i <= k {
            let at = spine(base, i - 1);
            self.push(Move::inv(MoveKind::LUnit, at.clone()))?;
            self.push(Move::fwd(MoveKind::UnitMap, at.child(Step::L)))
        } else {
            let at = spine(base, k - 1);
            self.push(Move::inv(MoveKind::RUnit, at.clone()))?;
            self.push(Move::fwd(MoveKind::UnitMap, at.child(Step::R)))
        }
    }

    /// Applies a Δ map to the blocks of the canonical outer word at `base`.
    fn apply_delta(&mut self, base: &Path, d: &DeltaMap) -> Result<(), WitnessError> {
        let mut k = d.source();
        for g in factor_delta(d).into_iter().rev() {
            match g {
                DeltaGen::Codegeneracy(j) => {
                    self.merge_blocks(base, j, k)?;
                    k -= 1;
                }
                DeltaGen::Coface(i) => {
                    self.insert_block(base, i, k)?;
                    k += 1;
                }
            }
        }
        Ok(())
    }

    /// Moves the first `r` atoms of the canonical shadowed word at
    /// `shadow/in` to the end with one rotator.
    fn rotate(&mut self, shadow: &Path, r: usize, count: usize) -> Result<(), WitnessError> {
        if r == 0 || r >= count {
            return Ok(());
        }
        let word = shadow.child(Step::In);
        for _ in 1..r {
            self.push(Move::fwd(MoveKind::Assoc, word.clone()))?;
        }
        let ObjectExpr::Tensor(a, _) = self.current.at(&word).expect("shadow has a word") else {
            unreachable!("a word with at least two atoms is a tensor")
        };
        let j = a.occurrences();
        self.push(Move::fwd(MoveKind::Rotator(j), shadow.clone()))?;
        self.normalize_region(&word)
    }

    /// Appends the inverse of the normalization of `target`, after checking
    /// that both canonical forms agree.
    fn land_on(mut self, target: &ObjectExpr) -> Result<MorphTerm, WitnessError> {
        self.normalize()?;
        let nf = to_normal_form(target, self.doctrine)?;
        let nf_cod = nf.codomain(self.doctrine)?;
        if nf_cod != self.current {
            let (have, want) = (self.current.frontier(), nf_cod.frontier());
            let mut hs: Vec<_> = have.edges.clone();
            let mut ws: Vec<_> = want.edges.clone();
            hs.sort();
            ws.sort();
            let msg = format!(
                "construction reaches {} but the codomain normalizes to {}",
                crate::dsl::print_object(&self.current),
                crate::dsl::print_object(&nf_cod)
            );
            return Err(if hs != ws { WitnessError::FrontierMismatch(msg) } else { WitnessError::UnreachableTarget(msg) });
        }
        let back = nf.invert(self.doctrine)?;
        self.moves.extend(back.moves);
        Ok(self.finish())
    }
}

/// The canonical-form morphism out of `expr`.
pub fn to_normal_form(expr: &ObjectExpr, doctrine: Doctrine) -> Result<MorphTerm, WitnessError> {
    let mut b = Builder::new(expr, doctrine);
    b.normalize()?;
    Ok(b.finish())
}

fn stable_matching(from: &[crate::expr::EdgeId], to: &[crate::expr::EdgeId]) -> Option<Perm> {
    if from.len() != to.len() {
        return None;
    }
    let mut used = vec![false; to.len()];
    let mut images = Vec::with_capacity(from.len());
    for e in from {
        let p = (0..to.len()).find(|&p| !used[p] && &to[p] == e)?;
        used[p] = true;
        images.push(p + 1);
    }
    Perm::from_images(images).ok()
}

/// Fills in missing target components from the codomain.
fn complete_target(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Result<WitnessTarget, WitnessError> {
    let mut t = target.clone();
    let n = a.occurrences();
    let fa = a.frontier().edges;
    if let Some(b) = b {
        let fb = b.frontier().edges;
        if doctrine.tracks_perm() && t.perm.is_none() {
            t.perm = Some(stable_matching(&fa, &fb).ok_or_else(|| {
                WitnessError::FrontierMismatch("codomain leaves are not a rearrangement of the domain's".into())
            })?);
        }
        if doctrine.tracks_rot() && t.rot.is_none() {
            let r = (0..n.max(1)).find(|&r| fb.len() == n && (0..n).all(|p| fb[p] == fa[(p + r) % n]));
            t.rot = Some(Rot::new(n, r.ok_or_else(|| {
                WitnessError::FrontierMismatch("codomain leaves are not a rotation of the domain's".into())
            })? as i64));
        }
        if doctrine.thin_localization().is_none() && t.support.is_none() {
            if let (Some(alpha_a), Some(alpha_b)) = (supporting_object(a, doctrine), supporting_object(b, doctrine)) {
                let alpha_b = relabel(&alpha_b, t.perm.as_ref(), t.rot)?;
                let (from, to) = match doctrine.orientation {
                    Orientation::Lax => (alpha_a, alpha_b),
                    Orientation::Oplax => (alpha_b, alpha_a),
                };
                let beta = hom_set(from.family(), from.target(), to.target())?
                    .into_iter()
                    .find(|beta| compose_index(beta, &from).ok().as_ref() == Some(&to))
                    .ok_or_else(|| WitnessError::UnreachableTarget("no comma morphism between the supports".into()))?;
                t.support = Some(beta);
            }
        }
    }
    Ok(t)
}

/// A formal morphism out of `a` with the requested invariants, ending at `b`
/// when given and at the canonical form of the reached component otherwise.
pub fn witness(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Result<MorphTerm, WitnessError> {
    if let Some(b) = b {
        if !doctrine.tracks_perm() && !doctrine.tracks_rot() && a.frontier() != b.frontier() {
            return Err(WitnessError::FrontierMismatch("codomain leaves differ from the domain's".into()));
        }
    }
    let mut first_err = None;
    for t in candidate_targets(a, b, target, doctrine) {
        match witness_exact(a, b, &t, doctrine) {
            Ok(w) => return Ok(w),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.expect("at least one candidate"))
}

/// Most candidate permutations tried when repeated edges make the codomain
/// ambiguous.
const MAX_CANDIDATES: usize = 720;

/// Every permutation sending `from` onto `to` label for label, stable order
/// first.
fn matching_perms(from: &[crate::expr::EdgeId], to: &[crate::expr::EdgeId]) -> Vec<Perm> {
    fn go(
        i: usize,
        from: &[crate::expr::EdgeId],
        to: &[crate::expr::EdgeId],
        used: &mut Vec<bool>,
        images: &mut Vec<usize>,
        out: &mut Vec<Perm>,
    ) {
        if out.len() >= MAX_CANDIDATES {
            return;
        }
        if i == from.len() {
            out.push(Perm::from_images(images.clone()).expect("injective matching"));
            return;
        }
        for p in 0..to.len() {
            if !used[p] && to[p] == from[i] {
                used[p] = true;
                images.push(p + 1);
                go(i + 1, from, to, used, images, out);
                images.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    if from.len() == to.len() {
        go(0, from, to, &mut vec![false; to.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// The requested target, or every completion of its missing permutation and
/// rotation compatible with the codomain's frontier.
fn candidate_targets(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Vec<WitnessTarget> {
    let Some(b) = b else {
        return vec![target.clone()];
    };
    let (fa, fb) = (a.frontier().edges, b.frontier().edges);
    let n = fa.len();
    let perms: Vec<Option<Perm>> = match &target.perm {
        None if doctrine.tracks_perm() => matching_perms(&fa, &fb).into_iter().map(Some).collect(),
        p => vec![p.clone()],
    };
    let rots: Vec<Option<Rot>> = match target.rot {
        None if doctrine.tracks_rot() && fb.len() == n => (0..n.max(1))
            .filter(|&r| (0..n).all(|p| fb[p] == fa[(p + r) % n]))
            .map(|r| Some(Rot::new(n, r as i64)))
            .collect(),
        r => vec![r],
    };
    let out: Vec<WitnessTarget> = perms
        .iter()
        .flat_map(|p| rots.iter().map(move |r| WitnessTarget { perm: p.clone(), rot: *r, support: target.support.clone() }))
        .collect();
    if out.is_empty() {
        vec![target.clone()]
    } else {
        out
    }
}

fn witness_exact(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Result<MorphTerm, WitnessError> {
    if doctrine.thin_localization().is_some() {
        return thin_witness(a, b, target, doctrine);
    }
    if doctrine.orientation == Orientation::Oplax && doctrine.is_functor() {
        let b = b.ok_or_else(|| WitnessError::UnreachableTarget("oplax witnesses need an explicit codomain".into()))?;
        let lax = Doctrine { kind: doctrine.kind, orientation: Orientation::Lax };
        let t = complete_target(a, Some(b), target, doctrine)?;
        let flipped = WitnessTarget {
            perm: t.perm.as_ref().map(Perm::inverse),
            rot: t.rot.map(Rot::inverse),
            support: t.support.clone(),
        };
        let reverse = witness_exact(b, Some(a), &flipped, lax)?;
        let moves = reverse
            .moves
            .iter()
            .rev()
            .map(|m| if m.is_structure_map() { m.clone() } else { m.inverse() })
            .collect();
        let term = MorphTerm::new(a.clone(), moves);
        term.codomain(doctrine)?;
        return Ok(term);
    }
    let t = complete_target(a, b, target, doctrine)?;
    let n = a.occurrences();
    let mut bld = Builder::new(a, doctrine);
    bld.normalize()?;
    match doctrine.shape() {
        Shape::Plain => {
            if let Some(p) = &t.perm {
                check_perm_size(p, n)?;
                bld.sort_atoms(&Path::root(), p.images().to_vec())?;
            }
        }
        Shape::Shadow => {
            if let Some(r) = t.rot {
                check_rot_size(r, n)?;
                bld.rotate(&Path::root(), r.amount, n)?;
            }
        }
        Shape::Functor => {
            let base = Path::root();
            let k = a.block_count();
            match &t.support {
                None => {}
                Some(IndexMor::Delta(d)) => {
                    check_source(d.source(), k)?;
                    bld.apply_delta(&base, d)?;
                }
                Some(IndexMor::Fin(f)) => {
                    check_source(f.source(), k)?;
                    let (sigma, delta) = factor_fin(f);
                    bld.sort_atoms(&base, sigma.images().to_vec())?;
                    bld.apply_delta(&base, &delta)?;
                }
                Some(other) => return Err(wrong_family(other)),
            }
            bld.normalize()?;
            if let Some(p) = &t.perm {
                check_perm_size(p, n)?;
                arrange_inside_blocks(&mut bld, p)?;
            }
        }
        Shape::ShadowFunctor => shadow_functor_witness(&mut bld, &t, n)?,
    }
    let term = match b {
        Some(b) => bld.land_on(b)?,
        None => {
            bld.normalize()?;
            bld.finish()
        }
    };
    let got = invariant(&term, doctrine)?;
    if let (Some(want), Some(have)) = (&t.perm, &got.perm) {
        if want != have {
            return Err(WitnessError::UnreachableTarget(format!(
                "permutation {:?} is incompatible with the requested support",
                want.images()
            )));
        }
    }
    if let (Some(want), Some(have)) = (t.rot, got.rot) {
        if want != have {
            return Err(WitnessError::UnreachableTarget(format!(
                "rotation {} is incompatible with the requested support",
                want.amount
            )));
        }
    }
    Ok(term)
}

fn wrong_family(m: &IndexMor) -> WitnessError {
    WitnessError::UnreachableTarget(format!("a {:?} support does not fit this doctrine", m.family()))
}

fn check_perm_size(p: &Perm, n: usize) -> Result<(), WitnessError> {
    if p.len() != n {
        return Err(WitnessError::FrontierMismatch(format!("permutation of {} points for {n} leaves", p.len())));
    }
    Ok(())
}

fn check_rot_size(r: Rot, n: usize) -> Result<(), WitnessError> {
    if r.n != n {
        return Err(WitnessError::FrontierMismatch(format!("rotation of {} points for {n} leaves", r.n)));
    }
    Ok(())
}

fn check_source(source: usize, k: usize) -> Result<(), WitnessError> {
    if source != k {
        return Err(WitnessError::UnreachableTarget(format!("support starts at {source} but the domain has {k} blocks")));
    }
    Ok(())
}

/// Sorts the leaves inside each block so that the overall permutation becomes
/// `p`, failing if `p` would move a leaf between blocks.
fn arrange_inside_blocks(bld: &mut Builder, p: &Perm) -> Result<(), WitnessError> {
    let so_far = invariant(&MorphTerm::new(bld.domain.clone(), bld.moves.clone()), bld.doctrine)?;
    let current = so_far.perm.expect("symmetric doctrines track permutations");
    // label at each current position
    let labels = current.inverse();
    let base = bld.outer_base();
    let mut offset = 0;
    for block in bld.block_paths(&base) {
        let size = bld.current.at(&block).unwrap().occurrences();
        let keys: Vec<usize> = (offset..offset + size).map(|pos| p.apply(labels.apply(pos + 1))).collect();
        if keys.iter().any(|&k| k <= offset || k > offset + size) {
            return Err(WitnessError::UnreachableTarget(
                "the permutation moves a leaf out of its block".into(),
            ));
        }
        bld.sort_atoms(&block.child(Step::In), keys)?;
        offset += size;
    }
    Ok(())
}

fn shadow_functor_witness(bld: &mut Builder, t: &WitnessTarget, n: usize) -> Result<(), WitnessError> {
    let inner_shadow = Path(vec![Step::In]);
    if let ObjectExpr::ShadowFunctor(_) = bld.current {
        match &t.support {
            None | Some(IndexMor::Lambda(LambdaPrimeMor::StarId)) | Some(IndexMor::Lambda(LambdaPrimeMor::FromEmpty(LambdaObj::Star))) => {}
            Some(other) => return Err(WitnessError::UnreachableTarget(format!("no maps out of * to {}", other.target()))),
        }
        if let Some(r) = t.rot {
            check_rot_size(r, n)?;
            bld.rotate(&inner_shadow, r.amount, n)?;
        }
        return Ok(());
    }
    let base = inner_shadow.clone();
    let k = bld.current.block_count();
    match &t.support {
        None => {
            if let Some(r) = t.rot {
                if !r.is_identity() {
                    return Err(WitnessError::UnreachableTarget("a rotation needs a support to move blocks".into()));
                }
            }
        }
        Some(IndexMor::Lambda(m)) => {
            check_source_obj(m.source(), k)?;
            match m.target() {
                LambdaObj::Star => {
                    if k == 0 {
                        bld.insert_block(&base, 1, 0)?;
                    }
                    for remaining in (2..=k.max(1)).rev() {
                        bld.merge_blocks(&base, 1, remaining)?;
                    }
                    bld.normalize()?;
                    bld.push(Move::fwd(MoveKind::ShadowComm, Path::root()))?;
                    if let Some(r) = t.rot {
                        check_rot_size(r, n)?;
                        bld.rotate(&inner_shadow, r.amount, n)?;
                    }
                }
                LambdaObj::Finite(_) => match m {
                    LambdaPrimeMor::FromEmpty(LambdaObj::Finite(kb)) => {
                        bld.apply_delta(&base, &DeltaMap::new(0, *kb, Vec::new())?)?;
                    }
                    LambdaPrimeMor::Cyclic(c) => {
                        let (rho, delta) = factor_lambda(c);
                        bld.rotate(&Path::root(), rho.amount, k)?;
                        bld.normalize()?;
                        bld.apply_delta(&base, &delta)?;
                    }
                    _ => unreachable!("finite targets come from the empty set or a cyclic map"),
                },
            }
        }
        Some(other) => return Err(wrong_family(other)),
    }
    Ok(())
}

fn check_source_obj(source: LambdaObj, k: usize) -> Result<(), WitnessError> {
    match source {
        LambdaObj::Finite(s) => check_source(s, k),
        LambdaObj::Star => Err(WitnessError::UnreachableTarget("support starts at * but the domain is not H⟨…⟩".into())),
    }
}

/// The lax doctrine with the same shape and orientation. Its moves are valid
/// in the thin doctrine and its witnesses carry the same permutation and
/// rotation.
fn lax_counterpart(d: Doctrine) -> Doctrine {
    use crate::expr::DoctrineKind::*;
    let kind = match d.kind {
        NormalLaxFunctor | Pseudofunctor => LaxFunctor,
        NormalLaxSymmetricFunctor | StrongSymmetricFunctor => LaxSymmetricFunctor,
        NormalLaxShadowFunctor | StrongShadowFunctor => LaxShadowFunctor,
        k => k,
    };
    Doctrine { kind, orientation: d.orientation }
}

/// Same syntactic steps, read in the other orientation.
fn flip_orientation(t: &MorphTerm) -> MorphTerm {
    let moves = t.moves.iter().map(|m| if m.is_structure_map() { m.inverse() } else { m.clone() }).collect();
    MorphTerm::new(t.domain.clone(), moves)
}

/// Collapses every block of `x` into one, ending at `F(w)` or `H⟨w⟩`.
fn collapse(x: &ObjectExpr, lax: Doctrine) -> Result<MorphTerm, WitnessError> {
    let alpha = supporting_object(x, lax)
        .ok_or_else(|| WitnessError::UnreachableTarget("object has no supporting map".into()))?;
    let one = if alpha.family() == crate::index::Family::Lambda { LambdaObj::Star } else { LambdaObj::Finite(1) };
    let beta = hom_set(alpha.family(), alpha.target(), one)?.into_iter().next().expect("maps into a terminal object");
    witness(x, None, &WitnessTarget { support: Some(beta), ..Default::default() }, lax)
}

/// Whether the localization joins the supports of `a` and `b` once the
/// codomain is relabelled by the target.
fn thin_target_reachable(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Result<bool, WitnessError> {
    let (Some(b), Some(loc)) = (b, doctrine.thin_localization()) else {
        return Ok(false);
    };
    let t = complete_target(a, Some(b), target, doctrine)?;
    let (Some(alpha_a), Some(alpha_b)) = (supporting_object(a, doctrine), supporting_object(b, doctrine)) else {
        return Ok(false);
    };
    let alpha_b = relabel(&alpha_b, t.perm.as_ref(), t.rot)?;
    Ok(match doctrine.orientation {
        Orientation::Lax => crate::index::thin_reachable(loc, &alpha_a, &alpha_b)?,
        Orientation::Oplax => crate::index::thin_reachable(loc, &alpha_b, &alpha_a)?,
    })
}

/// Witnesses in thin doctrines. A comma morphism of the lax counterpart is
/// tried first. When structure maps are invertible, both ends are otherwise
/// collapsed to a single block and joined there.
fn thin_witness(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Result<MorphTerm, WitnessError> {
    let loc = doctrine.thin_localization().expect("thin doctrine");
    let target = WitnessTarget { support: None, ..target.clone() };
    if loc.inverted == InvertedClass::Injections {
        let lax = lax_counterpart(doctrine);
        return match witness_exact(a, b, &target, lax) {
            Ok(w) => {
                w.codomain(doctrine)?;
                Ok(w)
            }
            Err(WitnessError::UnreachableTarget(msg)) if thin_target_reachable(a, b, &target, doctrine)? => {
                search_witness(a, b, &target, doctrine).map_err(|_| WitnessError::UnreachableTarget(msg))
            }
            Err(e) => Err(e),
        };
    }
    // All structure maps are invertible: build in the lax orientation and
    // relabel the structure moves afterwards.
    let as_lax = Doctrine { kind: doctrine.kind, orientation: Orientation::Lax };
    let lax = lax_counterpart(as_lax);
    let term = match witness_exact(a, b, &target, lax) {
        Ok(w) => w,
        Err(WitnessError::UnreachableTarget(_)) if b.is_some() => {
            let b = b.expect("checked");
            let t = complete_target(a, Some(b), &target, as_lax)?;
            let (to_a, to_b) = (collapse(a, lax)?, collapse(b, lax)?);
            let (ia, ib) = (invariant(&to_a, lax)?, invariant(&to_b, lax)?);
            let perm = match (&t.perm, &ia.perm, &ib.perm) {
                (Some(p), Some(pa), Some(pb)) => Some(pa.inverse().then(p).then(pb)),
                _ => None,
            };
            let rot = match (t.rot, ia.rot, ib.rot) {
                (Some(r), Some(ra), Some(rb)) => Some(ra.inverse().then(r).then(rb)),
                _ => None,
            };
            let (ma, mb) = (to_a.codomain(lax)?, to_b.codomain(lax)?);
            let mid = witness(&ma, Some(&mb), &WitnessTarget { perm, rot, support: None }, lax)?;
            to_a.then(&mid, as_lax)?.then(&to_b.invert(as_lax)?, as_lax)?
        }
        Err(e) => return Err(e),
    };
    let term = if doctrine.orientation == Orientation::Oplax { flip_orientation(&term) } else { term };
    term.codomain(doctrine)?;
    Ok(term)
}

/// Breadth-first search for a path to `b`, used in thin doctrines where any
/// path with the right permutation and rotation is a witness.
fn search_witness(
    a: &ObjectExpr,
    b: Option<&ObjectExpr>,
    target: &WitnessTarget,
    doctrine: Doctrine,
) -> Result<MorphTerm, WitnessError> {
    let b = b.ok_or_else(|| WitnessError::UnreachableTarget("witnesses in thin doctrines need a codomain".into()))?;
    let t = complete_target(a, Some(b), target, doctrine)?;
    let unit_cap = a.unit_count().max(b.unit_count()) + 2;
    let n = a.occurrences();
    type Key = (ObjectExpr, Vec<usize>, usize);
    let start: Key = (a.clone(), (0..n).collect(), 0);
    let mut parent: HashMap<Key, Option<(Key, Move)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        let (obj, labels, rot) = &key;
        if obj == b {
            let perm_ok = t.perm.as_ref().is_none_or(|p| labels_to_perm(labels) == *p);
            let rot_ok = t.rot.is_none_or(|r| r.amount == *rot);
            if perm_ok && rot_ok {
                let mut moves = Vec::new();
                let mut cur = key.clone();
                while let Some(Some((prev, mv))) = parent.get(&cur) {
                    moves.push(mv.clone());
                    cur = prev.clone();
                }
                moves.reverse();
                return Ok(MorphTerm::new(a.clone(), moves));
            }
        }
        if parent.len() > SEARCH_LIMIT {
            break;
        }
        for (mv, next) in applicable_moves(obj, doctrine) {
            if next.unit_count() > unit_cap {
                continue;
            }
            let step = MorphTerm::new(obj.clone(), vec![mv.clone()]);
            let inv = invariant(&step, doctrine)?;
            let new_labels = match &inv.perm {
                Some(p) => {
                    let mut out = labels.clone();
                    for (pos, &label) in labels.iter().enumerate() {
                        out[p.apply(pos + 1) - 1] = label;
                    }
                    out
                }
                None => labels.clone(),
            };
            let new_rot = match inv.rot {
                Some(r) if n > 0 => (rot + r.amount) % n,
                _ => *rot,
            };
            let nk: Key = (next, new_labels, new_rot);
            if !parent.contains_key(&nk) {
                parent.insert(nk.clone(), Some((key.clone(), mv)));
                queue.push_back(nk);
            }
        }
    }
    Err(WitnessError::UnreachableTarget("no path found within the search bounds".into()))
}

fn labels_to_perm(labels: &[usize]) -> Perm {
    let mut images = vec![0; labels.len()];
    for (pos, &label) in labels.iter().enumerate() {
        images[label] = pos + 1;
    }
    Perm::from_images(images).expect("labels form a permutation")
}
