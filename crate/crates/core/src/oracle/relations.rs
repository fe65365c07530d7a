//! Instances of the defining relations of each free structure, instantiated
//! on small objects, and a check that both sides of every instance have the
//! same invariant.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dsl::{parse_moves, print_object};
use crate::expr::{Doctrine, EdgeId, ObjectExpr, Orientation, Path, Shape, Step};
use crate::invariant::invariant;
use crate::morph::{applicable_moves, moves_to_string, slot_paths, Move, MorphTerm};

use super::within_bounds;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: String,
    pub lhs: MorphTerm,
    pub rhs: MorphTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationBounds {
    pub max_frontier: usize,
    pub max_units: usize,
    pub max_depth: usize,
    /// Evenly spaced sample size for each generic family (inverse pairs,
    /// whiskering, naturality); `None` keeps every instance.
    pub generic_sample: Option<usize>,
}

impl Default for RelationBounds {
    fn default() -> Self {
        RelationBounds { max_frontier: 4, max_units: 2, max_depth: 3, generic_sample: Some(1500) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    Leaf,
    Unit,
    Pair,
    Block,
    EmptyBlock,
    PairBlock,
}

const WORD_ATOMS: [Atom; 3] = [Atom::Leaf, Atom::Unit, Atom::Pair];
const BLOCK_ATOMS: [Atom; 4] = [Atom::Block, Atom::Unit, Atom::EmptyBlock, Atom::PairBlock];

fn instantiate(atoms: &[Atom]) -> Vec<ObjectExpr> {
    let mut next = 0;
    let mut leaf = || {
        next += 1;
        ObjectExpr::Leaf(EdgeId::new(&format!("X{next}")))
    };
    atoms
        .iter()
        .map(|a| match a {
            Atom::Leaf => leaf(),
            Atom::Unit => ObjectExpr::Unit,
            Atom::Pair => {
                let x = leaf();
                ObjectExpr::tensor(x, leaf())
            }
            Atom::Block => ObjectExpr::functor(leaf()),
            Atom::EmptyBlock => ObjectExpr::functor(ObjectExpr::Unit),
            Atom::PairBlock => {
                let x = leaf();
                ObjectExpr::functor(ObjectExpr::tensor(x, leaf()))
            }
        })
        .collect()
}

fn products(pool: &[Atom], arity: usize) -> Vec<Vec<Atom>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |a| {
                    let mut p = prefix.clone();
                    p.push(*a);
                    p
                })
            })
            .collect();
    }
    out
}

type Build = fn(&[ObjectExpr]) -> (ObjectExpr, String, String);

#[derive(Clone, Copy, PartialEq, Eq)]
enum Region {
    /// The template root is a word node.
    Word,
    /// The template root is `⟨…⟩`.
    Shadow,
    /// A word of blocks built from the word atoms.
    Lax,
    /// `⟨word of blocks⟩` built from the word atoms.
    ShadowLax,
}

struct Template {
    name: &'static str,
    arity: usize,
    region: Region,
    build: Build,
}

use ObjectExpr as E;

fn t(a: &E, b: &E) -> E {
    E::tensor(a.clone(), b.clone())
}

fn f(a: &E) -> E {
    E::functor(a.clone())
}

const TEMPLATES: &[Template] = &[
    Template {
        name: "pentagon",
        arity: 4,
        region: Region::Word,
        build: |x| (t(&x[0], &t(&x[1], &t(&x[2], &x[3]))), "assoc; assoc".into(), "assoc@R; assoc; assoc@L".into()),
    },
    Template {
        name: "triangle",
        arity: 2,
        region: Region::Word,
        build: |x| (t(&x[0], &t(&E::Unit, &x[1])), "assoc; ru@L".into(), "lu@R".into()),
    },
    Template { name: "unit-agreement", arity: 0, region: Region::Word, build: |_| (t(&E::Unit, &E::Unit), "lu".into(), "ru".into()) },
    Template {
        name: "hexagon",
        arity: 3,
        region: Region::Word,
        build: |x| (t(&x[0], &t(&x[1], &x[2])), "assoc; sym; assoc".into(), "sym@R; assoc; sym@L".into()),
    },
    Template {
        name: "hexagon-inverse",
        arity: 3,
        region: Region::Word,
        build: |x| (t(&t(&x[0], &x[1]), &x[2]), "assoc~; sym; assoc~".into(), "sym@L; assoc~; sym@R".into()),
    },
    Template { name: "symmetry-involution", arity: 2, region: Region::Word, build: |x| (t(&x[0], &x[1]), "sym; sym".into(), "".into()) },
    Template { name: "symmetry-unit", arity: 1, region: Region::Word, build: |x| (t(&x[0], &E::Unit), "sym; lu".into(), "ru".into()) },
    Template {
        name: "shadow-unit",
        arity: 1,
        region: Region::Shadow,
        build: |x| (E::shadow(t(&x[0], &E::Unit)), format!("rot:{}; lu@in", x[0].occurrences()), "ru@in".into()),
    },
    Template {
        name: "shadow-associativity",
        arity: 3,
        region: Region::Shadow,
        build: |x| {
            let (a, b) = (x[0].occurrences(), x[1].occurrences());
            (
                E::shadow(t(&t(&x[0], &x[1]), &x[2])),
                format!("rot:{}; assoc@in", a + b),
                format!("assoc~@in; rot:{a}; assoc~@in; rot:{b}"),
            )
        },
    },
    Template {
        name: "lax-left-unit",
        arity: 1,
        region: Region::Lax,
        build: |x| (t(&E::Unit, &f(&x[0])), "unit@L; comp; lu@in".into(), "lu".into()),
    },
    Template {
        name: "lax-right-unit",
        arity: 1,
        region: Region::Lax,
        build: |x| (t(&f(&x[0]), &E::Unit), "unit@R; comp; ru@in".into(), "ru".into()),
    },
    Template {
        name: "lax-associativity",
        arity: 3,
        region: Region::Lax,
        build: |x| {
            (t(&t(&f(&x[0]), &f(&x[1])), &f(&x[2])), "comp@L; comp".into(), "assoc~; comp@R; comp; assoc@in".into())
        },
    },
    Template {
        name: "lax-symmetry",
        arity: 2,
        region: Region::Lax,
        build: |x| (t(&f(&x[0]), &f(&x[1])), "sym; comp".into(), "comp; sym@in".into()),
    },
    Template {
        name: "shadow-comparison",
        arity: 2,
        region: Region::ShadowLax,
        build: |x| {
            let a = x[0].occurrences();
            (
                E::shadow(t(&f(&x[0]), &f(&x[1]))),
                format!("rot:{a}; comp@in; shcomm"),
                format!("comp@in; shcomm; rot:{a}@in"),
            )
        },
    },
];

/// Where a template may be placed: a context with a hole, the hole's path,
/// and which atoms fill it.
struct Placement {
    wrap: fn(E) -> E,
    hole: &'static [Step],
    region: Region,
    block_atoms: bool,
}

fn placements(shape: Shape) -> Vec<Placement> {
    use Step::{In, L, R};
    let p = |wrap: fn(E) -> E, hole: &'static [Step], region, block_atoms| Placement { wrap, hole, region, block_atoms };
    match shape {
        Shape::Plain => vec![
            p(|e| e, &[], Region::Word, false),
            p(|e| E::tensor(e, E::leaf("Y")), &[L], Region::Word, false),
            p(|e| E::tensor(E::leaf("Y"), e), &[R], Region::Word, false),
        ],
        Shape::Shadow => vec![
            p(E::shadow, &[In], Region::Word, false),
            p(|e| E::shadow(E::tensor(e, E::leaf("Y"))), &[In, L], Region::Word, false),
            p(|e| e, &[], Region::Shadow, false),
        ],
        Shape::Functor => vec![
            p(E::functor, &[In], Region::Word, false),
            p(|e| e, &[], Region::Word, true),
            p(|e| e, &[], Region::Lax, false),
            p(|e| E::tensor(e, E::functor(E::leaf("Y"))), &[L], Region::Lax, false),
        ],
        Shape::ShadowFunctor => vec![
            p(|e| E::shadow(E::functor(e)), &[In, In], Region::Word, false),
            p(E::shadow, &[In], Region::Word, true),
            p(E::shadow_functor, &[In, In], Region::Word, false),
            p(|e| e, &[], Region::Shadow, true),
            p(
                |e| match e {
                    E::Shadow(w) => E::shadow_functor(*w),
                    other => other,
                },
                &[In],
                Region::Shadow,
                false,
            ),
            p(E::shadow, &[In], Region::Lax, false),
            p(|e| e, &[], Region::ShadowLax, false),
        ],
    }
}

fn term(dom: &E, moves: &str, hole: &Path) -> MorphTerm {
    let moves = parse_moves(moves).expect("relation templates are well formed");
    MorphTerm::new(dom.clone(), moves.iter().map(|m| m.under(hole)).collect())
}

fn depth_ok(moves: &[Move], bounds: &RelationBounds) -> bool {
    moves.iter().all(|m| m.path.depth() <= bounds.max_depth)
}

fn admissible(inst: &RelationInstance, doctrine: Doctrine, bounds: &RelationBounds) -> bool {
    inst.lhs.domain.occurrences() <= bounds.max_frontier
        && within_bounds(&inst.lhs.domain, bounds.max_units)
        && depth_ok(&inst.lhs.moves, bounds)
        && depth_ok(&inst.rhs.moves, bounds)
        && inst.lhs.codomain(doctrine).is_ok()
        && inst.rhs.codomain(doctrine).is_ok()
}

fn template_instances(doctrine: Doctrine, bounds: &RelationBounds) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for place in placements(doctrine.shape()) {
        let hole = Path(place.hole.to_vec());
        for tpl in TEMPLATES.iter().filter(|t| t.region == place.region) {
            let pool: &[Atom] = if place.block_atoms { &BLOCK_ATOMS } else { &WORD_ATOMS };
            for atoms in products(pool, tpl.arity) {
                let (inner, lhs, rhs) = (tpl.build)(&instantiate(&atoms));
                let dom = (place.wrap)(inner);
                let inst = RelationInstance {
                    name: tpl.name.to_string(),
                    lhs: term(&dom, &lhs, &hole),
                    rhs: term(&dom, &rhs, &hole),
                };
                if admissible(&inst, doctrine, bounds) {
                    out.push(inst);
                }
            }
        }
    }
    out
}

fn disjoint(p: &Path, q: &Path) -> bool {
    !p.is_prefix_of(q) && !q.is_prefix_of(p)
}

/// Inverse pairs, commuting moves at disjoint positions, and naturality of
/// each move with respect to moves inside the subterms it carries along.
fn generic_instances(dom: &E, doctrine: Doctrine, bounds: &RelationBounds) -> Vec<RelationInstance> {
    let moves: Vec<Move> = applicable_moves(dom, doctrine)
        .into_iter()
        .map(|(m, _)| m)
        .filter(|m| m.path.depth() <= bounds.max_depth)
        .collect();
    let mk = |name: &str, lhs: Vec<Move>, rhs: Vec<Move>| RelationInstance {
        name: name.to_string(),
        lhs: MorphTerm::new(dom.clone(), lhs),
        rhs: MorphTerm::new(dom.clone(), rhs),
    };
    let mut out = Vec::new();
    for m in &moves {
        out.push(mk("inverse", vec![m.clone(), m.inverse()], vec![]));
        for k in &moves {
            if m < k && disjoint(&m.path, &k.path) {
                out.push(mk("whiskering", vec![m.clone(), k.clone()], vec![k.clone(), m.clone()]));
            }
        }
        for (before, after) in slot_paths(m.kind, m.rewrites_forward(doctrine)) {
            let slot = m.path.join(&before);
            for k in &moves {
                if let Some(rest) = k.path.strip_prefix(&slot) {
                    let moved = Move::new(k.kind, k.dir, m.path.join(&after).join(&rest));
                    out.push(mk("naturality", vec![k.clone(), m.clone()], vec![m.clone(), moved]));
                }
            }
        }
    }
    out
}

/// Reverses an instance of the lax doctrine into one of its oplax mirror.
fn mirror(inst: &RelationInstance, lax: Doctrine) -> Option<RelationInstance> {
    let cod = inst.lhs.codomain(lax).ok()?;
    let flip = |t: &MorphTerm| {
        MorphTerm::new(
            cod.clone(),
            t.moves.iter().rev().map(|m| if m.is_structure_map() { m.clone() } else { m.inverse() }).collect(),
        )
    };
    Some(RelationInstance { name: inst.name.clone(), lhs: flip(&inst.lhs), rhs: flip(&inst.rhs) })
}

/// Every relation instance within the bounds.
pub fn relation_instances(doctrine: Doctrine, bounds: &RelationBounds) -> Vec<RelationInstance> {
    if doctrine.orientation == Orientation::Oplax {
        let lax = Doctrine { kind: doctrine.kind, orientation: Orientation::Lax };
        let mut out: Vec<RelationInstance> = relation_instances(lax, bounds)
            .iter()
            .filter_map(|i| mirror(i, lax))
            .filter(|i| admissible(i, doctrine, bounds))
            .collect();
        dedup(&mut out);
        return out;
    }
    let mut out = template_instances(doctrine, bounds);
    let mut seen = BTreeSet::new();
    let pool: Vec<E> = out.iter().map(|i| i.lhs.domain.clone()).filter(|d| seen.insert(print_object(d))).collect();
    let stride = bounds.generic_sample.map_or(1, |limit| pool.len().div_ceil((limit / 20).max(1)).max(1));
    let mut generic: Vec<RelationInstance> =
        pool.iter().step_by(stride).flat_map(|d| generic_instances(d, doctrine, bounds)).collect();
    dedup(&mut generic);
    for name in ["inverse", "whiskering", "naturality"] {
        let family: Vec<&RelationInstance> = generic.iter().filter(|i| i.name == name).collect();
        let stride = bounds.generic_sample.map_or(1, |limit| family.len().div_ceil(limit.max(1)).max(1));
        out.extend(family.into_iter().step_by(stride).filter(|i| admissible(i, doctrine, bounds)).cloned());
    }
    dedup(&mut out);
    out
}

fn dedup(v: &mut Vec<RelationInstance>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|i| seen.insert((i.lhs.clone(), i.rhs.moves.clone())));
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub domain: String,
    pub lhs: String,
    pub rhs: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub doctrine: String,
    pub instances: usize,
    pub by_relation: std::collections::BTreeMap<String, usize>,
    pub failures: Vec<RelationFailure>,
}

/// Both sides of every instance must be parallel with equal invariants.
pub fn check_relations(doctrine: Doctrine, bounds: &RelationBounds) -> RelationReport {
    let instances = relation_instances(doctrine, bounds);
    let mut by_relation = std::collections::BTreeMap::new();
    let mut failures = Vec::new();
    for inst in &instances {
        *by_relation.entry(inst.name.clone()).or_insert(0) += 1;
        let fail = |reason: String| RelationFailure {
            relation: inst.name.clone(),
            domain: print_object(&inst.lhs.domain),
            lhs: moves_to_string(&inst.lhs.moves),
            rhs: moves_to_string(&inst.rhs.moves),
            reason,
        };
        let (cl, cr) = (inst.lhs.codomain(doctrine), inst.rhs.codomain(doctrine));
        if cl != cr {
            failures.push(fail("sides are not parallel".into()));
            continue;
        }
        match (invariant(&inst.lhs, doctrine), invariant(&inst.rhs, doctrine)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => failures.push(fail(format!("invariants differ: {a:?} vs {b:?}"))),
            (Err(e), _) | (_, Err(e)) => failures.push(fail(e.to_string())),
        }
    }
    RelationReport { doctrine: doctrine.to_string(), instances: instances.len(), by_relation, failures }
}
