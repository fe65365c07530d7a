//! Finite categories given by explicit composition tables, the groups
//! Σₙ and Cₙ as one-object categories and as action groupoids under `∗`,
//! and Grothendieck constructions over them with clique fibers.

use serde::Serialize;

use crate::index::{Perm, Rot};

/// Objects `0..objects`; morphism `m` runs `source[m] → target[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCategory {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    /// `compose[g][f]` is `g ∘ f` when `target[f] == source[g]`.
    pub compose: Vec<Vec<Option<usize>>>,
}

impl SmallCategory {
    pub fn morphism_count(&self) -> usize {
        self.source.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphism_count()).filter(|&m| self.source[m] == a && self.target[m] == b).collect()
    }

    /// Exhaustive check of the category laws; returns the first violation.
    pub fn check_laws(&self) -> Result<(), String> {
        let n = self.morphism_count();
        for (o, &id) in self.identity.iter().enumerate() {
            if self.source[id] != o || self.target[id] != o {
                return Err(format!("identity of {o} is not an endomorphism of {o}"));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.target[f] == self.source[g];
                match (composable, self.compose[g][f]) {
                    (true, None) => return Err(format!("{g} ∘ {f} is missing")),
                    (false, Some(_)) => return Err(format!("{g} ∘ {f} is defined but not composable")),
                    (true, Some(h)) if self.source[h] != self.source[f] || self.target[h] != self.target[g] => {
                        return Err(format!("{g} ∘ {f} has the wrong endpoints"))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            if self.compose[self.identity[self.target[f]]][f] != Some(f)
                || self.compose[f][self.identity[self.source[f]]] != Some(f)
            {
                return Err(format!("identity law fails at {f}"));
            }
        }
        for h in 0..n {
            for g in (0..n).filter(|&g| self.target[g] == self.source[h]) {
                let hg = self.compose[h][g].unwrap();
                for f in (0..n).filter(|&f| self.target[f] == self.source[g]) {
                    let gf = self.compose[g][f].unwrap();
                    if self.compose[hg][f] != self.compose[h][gf] {
                        return Err(format!("associativity fails at ({h}, {g}, {f})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_thin(&self) -> bool {
        (0..self.objects).all(|a| (0..self.objects).all(|b| self.hom(a, b).len() <= 1))
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.morphism_count()).all(|f| {
            self.hom(self.target[f], self.source[f])
                .into_iter()
                .any(|g| self.compose[g][f] == Some(self.identity[self.source[f]]))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.objects == 0 {
            return false;
        }
        let mut seen = vec![false; self.objects];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for m in 0..self.morphism_count() {
                for (a, b) in [(self.source[m], self.target[m]), (self.target[m], self.source[m])] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Nonempty, connected, thin groupoid.
    pub fn is_clique(&self) -> bool {
        self.objects > 0 && self.is_connected() && self.is_thin() && self.is_groupoid()
    }
}

/// A finite permutation group, listed with the identity first.
#[derive(Debug, Clone)]
pub struct Group {
    pub elements: Vec<Perm>,
}

impl Group {
    pub fn symmetric(n: usize) -> Group {
        let mut elements = Perm::all(n);
        let id = elements.iter().position(Perm::is_identity).unwrap();
        elements.swap(0, id);
        Group { elements }
    }

    pub fn cyclic(n: usize) -> Group {
        Group { elements: (0..n.max(1)).map(|r| Rot::new(n, r as i64).to_perm()).collect() }
    }

    fn mul(&self, g: usize, h: usize) -> usize {
        let p = Perm::compose(&self.elements[g], &self.elements[h]).expect("same size");
        self.elements.iter().position(|e| *e == p).expect("closed under composition")
    }

    /// One object, a morphism per element.
    pub fn delooping(&self) -> SmallCategory {
        let n = self.elements.len();
        SmallCategory {
            objects: 1,
            source: vec![0; n],
            target: vec![0; n],
            identity: vec![0],
            compose: (0..n).map(|g| (0..n).map(|f| Some(self.mul(g, f))).collect()).collect(),
        }
    }

    /// The translation groupoid: objects are elements, and each `τ` gives a
    /// morphism `σ → τσ`.
    pub fn translation(&self) -> SmallCategory {
        let n = self.elements.len();
        // morphism index = tau * n + sigma
        let source: Vec<usize> = (0..n * n).map(|m| m % n).collect();
        let target: Vec<usize> = (0..n * n).map(|m| self.mul(m / n, m % n)).collect();
        let compose = (0..n * n)
            .map(|g| {
                (0..n * n)
                    .map(|f| (target[f] == source[g]).then(|| self.mul(g / n, f / n) * n + source[f]))
                    .collect()
            })
            .collect();
        SmallCategory { objects: n, source, target, identity: (0..n).collect(), compose }
    }
}

/// `∫D` together with its projection to the base.
#[derive(Debug, Clone)]
pub struct Grothendieck {
    pub total: SmallCategory,
    /// `(base object, fiber element)` for each object.
    pub objects: Vec<(usize, usize)>,
    /// Base morphism under each morphism.
    pub projection: Vec<usize>,
}

/// `∫D` for a functor `D` sending each object `i` to the clique on
/// `fiber_sizes[i]` elements. Because fibers are cliques the choice of
/// `D` on morphisms does not affect the result: a morphism `(i,x) → (j,y)`
/// is a base morphism `i → j` together with the unique fiber map.
pub fn build_grothendieck(base: &SmallCategory, fiber_sizes: &[usize]) -> Grothendieck {
    let objects: Vec<(usize, usize)> =
        (0..base.objects).flat_map(|i| (0..fiber_sizes[i]).map(move |x| (i, x))).collect();
    let index_of = |i: usize, x: usize| objects.iter().position(|&o| o == (i, x)).unwrap();
    let mut source = Vec::new();
    let mut target = Vec::new();
    let mut projection = Vec::new();
    let mut triples = Vec::new();
    for f in 0..base.morphism_count() {
        for x in 0..fiber_sizes[base.source[f]] {
            for y in 0..fiber_sizes[base.target[f]] {
                source.push(index_of(base.source[f], x));
                target.push(index_of(base.target[f], y));
                projection.push(f);
                triples.push((f, x, y));
            }
        }
    }
    let find = |f: usize, x: usize, y: usize| triples.iter().position(|&t| t == (f, x, y)).unwrap();
    let identity = objects.iter().map(|&(i, x)| find(base.identity[i], x, x)).collect();
    let compose = triples
        .iter()
        .map(|&(g, y, z)| {
            triples
                .iter()
                .map(|&(f, x, y2)| {
                    (base.target[f] == base.source[g] && y == y2).then(|| find(base.compose[g][f].unwrap(), x, z))
                })
                .collect()
        })
        .collect();
    Grothendieck {
        total: SmallCategory { objects: objects.len(), source, target, identity, compose },
        objects,
        projection,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrothendieckReport {
    pub base_objects: usize,
    pub base_morphisms: usize,
    pub total_objects: usize,
    pub total_morphisms: usize,
    pub laws: bool,
    pub surjective_on_objects: bool,
    pub hom_bijective: bool,
    pub functorial: bool,
    pub thin_transfers: bool,
    pub clique_transfers: bool,
    pub total_is_clique: bool,
}

impl GrothendieckReport {
    pub fn passed(&self) -> bool {
        self.laws
            && self.surjective_on_objects
            && self.hom_bijective
            && self.functorial
            && self.thin_transfers
            && self.clique_transfers
    }
}

pub fn check_grothendieck(base: &SmallCategory, g: &Grothendieck) -> GrothendieckReport {
    let total = &g.total;
    let surjective_on_objects = (0..base.objects).all(|i| g.objects.iter().any(|&(j, _)| j == i));
    let hom_bijective = (0..total.objects).all(|a| {
        (0..total.objects).all(|b| {
            let mut images: Vec<usize> = total.hom(a, b).into_iter().map(|m| g.projection[m]).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            images.len() == before && images == base.hom(g.objects[a].0, g.objects[b].0)
        })
    });
    let functorial = (0..total.morphism_count()).all(|h| {
        (0..total.morphism_count())
            .all(|f| total.compose[h][f].is_none_or(|hf| Some(g.projection[hf]) == base.compose[g.projection[h]][g.projection[f]]))
    });
    GrothendieckReport {
        base_objects: base.objects,
        base_morphisms: base.morphism_count(),
        total_objects: total.objects,
        total_morphisms: total.morphism_count(),
        laws: total.check_laws().is_ok(),
        surjective_on_objects,
        hom_bijective,
        functorial,
        thin_transfers: total.is_thin() == base.is_thin(),
        clique_transfers: total.is_clique() == base.is_clique(),
        total_is_clique: total.is_clique(),
    }
}
