#![allow(dead_code)]

use coherence::expr::{Doctrine, EdgeId, ObjectExpr, Shape};
use coherence::morph::{applicable_moves, apply_move, Move, MorphTerm};
use rand::rngs::StdRng;
use rand::Rng;

fn bracket(rng: &mut StdRng, items: &[ObjectExpr]) -> ObjectExpr {
    match items.len() {
        0 => ObjectExpr::Unit,
        1 => items[0].clone(),
        n => {
            let cut = rng.gen_range(1..n);
            ObjectExpr::tensor(bracket(rng, &items[..cut]), bracket(rng, &items[cut..]))
        }
    }
}

/// A random bracketing of `atoms` with up to `max_units` units mixed in.
pub fn random_word(rng: &mut StdRng, atoms: &[ObjectExpr], max_units: usize) -> ObjectExpr {
    let mut items = atoms.to_vec();
    for _ in 0..rng.gen_range(0..=max_units) {
        let at = rng.gen_range(0..=items.len());
        items.insert(at, ObjectExpr::Unit);
    }
    bracket(rng, &items)
}

pub fn leaves(rng: &mut StdRng, n: usize) -> Vec<ObjectExpr> {
    let repeated = rng.gen_bool(0.2);
    (1..=n).map(|i| ObjectExpr::leaf(if repeated { "X" } else { ["X1", "X2", "X3", "X4", "X5", "X6"][i - 1] })).collect()
}

fn random_outer(rng: &mut StdRng, leaves: &[ObjectExpr], max_units: usize) -> ObjectExpr {
    let mut blocks: Vec<Vec<ObjectExpr>> = vec![Vec::new()];
    for leaf in leaves {
        if !blocks.last().unwrap().is_empty() && rng.gen_bool(0.4) {
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(leaf.clone());
    }
    if rng.gen_bool(0.3) {
        let at = rng.gen_range(0..=blocks.len());
        blocks.insert(at, Vec::new());
    }
    let atoms: Vec<ObjectExpr> =
        blocks.iter().map(|b| ObjectExpr::functor(random_word(rng, b, max_units.min(1)))).collect();
    random_word(rng, &atoms, max_units.min(1))
}

/// A random valid object of the doctrine on `n` leaves.
pub fn random_object(rng: &mut StdRng, doctrine: Doctrine, n: usize, max_units: usize) -> ObjectExpr {
    let ls = leaves(rng, n);
    match doctrine.shape() {
        Shape::Plain => random_word(rng, &ls, max_units),
        Shape::Shadow => ObjectExpr::shadow(random_word(rng, &ls, max_units)),
        Shape::Functor => random_outer(rng, &ls, max_units),
        Shape::ShadowFunctor => {
            if rng.gen_bool(0.75) {
                ObjectExpr::shadow(random_outer(rng, &ls, max_units))
            } else {
                ObjectExpr::shadow_functor(random_word(rng, &ls, max_units))
            }
        }
    }
}

pub fn one_vertex_graph(obj: &ObjectExpr) -> coherence::expr::Graph {
    let names: Vec<String> = obj.edge_names().into_iter().collect();
    coherence::expr::Graph::one_vertex(names.iter().map(String::as_str))
}

/// A random walk of moves whose inverses also apply, keeping unit counts
/// small.
pub fn random_invertible_walk(rng: &mut StdRng, start: &ObjectExpr, doctrine: Doctrine, len: usize) -> MorphTerm {
    let mut current = start.clone();
    let mut moves = Vec::new();
    for _ in 0..len {
        let options: Vec<(Move, ObjectExpr)> = applicable_moves(&current, doctrine)
            .into_iter()
            .filter(|(m, next)| next.unit_count() <= 3 && apply_move(next, &m.inverse(), doctrine).is_ok())
            .collect();
        if options.is_empty() {
            break;
        }
        let (m, next) = options[rng.gen_range(0..options.len())].clone();
        moves.push(m);
        current = next;
    }
    MorphTerm::new(start.clone(), moves)
}

/// A random walk using any applicable moves.
pub fn random_walk(rng: &mut StdRng, start: &ObjectExpr, doctrine: Doctrine, len: usize) -> MorphTerm {
    let mut current = start.clone();
    let mut moves = Vec::new();
    for _ in 0..len {
        let options: Vec<(Move, ObjectExpr)> =
            applicable_moves(&current, doctrine).into_iter().filter(|(_, next)| next.unit_count() <= 3).collect();
        if options.is_empty() {
            break;
        }
        let (m, next) = options[rng.gen_range(0..options.len())].clone();
        moves.push(m);
        current = next;
    }
    MorphTerm::new(start.clone(), moves)
}

pub fn edge_ids(n: usize) -> Vec<EdgeId> {
    (1..=n).map(|i| EdgeId::new(&format!("X{i}"))).collect()
}
