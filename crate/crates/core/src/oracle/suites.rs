//! Named verification suites run by `coherence verify`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::expr::{supporting_object, Doctrine, DoctrineKind, EdgeId, Graph, ObjectExpr};
use crate::index::{hom_set, DeltaMap, Family, IndexMor, LambdaObj, Perm, Rot};
use crate::invariant::{invariant, Support};
use crate::witness::{witness, WitnessTarget};

use super::category::{build_grothendieck, check_grothendieck, Group, SmallCategory};
use super::relations::{check_relations, RelationBounds};
use super::{canonical_object, check_connected, enumerate_within, check_fullness, check_fullness_between, enumerate_component, OracleError};

pub const SUITES: [&str; 4] = ["relations", "counts", "grothendieck", "fullness"];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.to_string(), passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn check(name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check { name: name.into(), passed, detail }
}

pub fn run_suite(name: &str) -> Option<Result<SuiteReport, OracleError>> {
    Some(match name {
        "relations" => Ok(relations()),
        "counts" => counts(),
        "grothendieck" => Ok(grothendieck()),
        "fullness" => fullness(),
        _ => return None,
    })
}

fn edges(n: usize) -> Vec<EdgeId> {
    (1..=n).map(|i| EdgeId::new(&format!("X{i}"))).collect()
}

/// Every doctrine, with the oplax mirror of each functor doctrine.
pub fn all_doctrines() -> Vec<Doctrine> {
    DoctrineKind::ALL
        .iter()
        .flat_map(|&k| {
            let d = Doctrine::new(k);
            if d.is_functor() {
                vec![d, Doctrine::oplax(k)]
            } else {
                vec![d]
            }
        })
        .collect()
}

pub fn relations() -> SuiteReport {
    let bounds = RelationBounds::default();
    let checks = all_doctrines()
        .into_iter()
        .map(|d| {
            let r = check_relations(d, &bounds);
            let sample: Vec<_> = r.failures.iter().take(5).collect();
            check(
                format!("relations/{d}"),
                r.failures.is_empty() && r.instances > 0,
                json!({"instances": r.instances, "by_relation": r.by_relation, "failures": r.failures.len(), "sample": sample}),
            )
        })
        .collect();
    SuiteReport::new("relations", checks)
}

fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64; n + 1];
    for i in 1..=n {
        c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
    }
    c[n]
}

pub fn counts() -> Result<SuiteReport, OracleError> {
    let d = Doctrine::new(DoctrineKind::Bicategory);
    let mut checks = Vec::new();
    for n in 2..=6 {
        let cg = enumerate_component(d, &Graph::chain(n), &edges(n), 0)?;
        let want = catalan(n - 1) as usize;
        checks.push(check(
            format!("catalan/{n}"),
            cg.objects.len() == want && check_connected(&cg),
            json!({"objects": cg.objects.len(), "expected": want, "edges": cg.undirected_edges()}),
        ));
    }
    let cg = enumerate_component(d, &Graph::chain(5), &edges(5), 0)?;
    checks.push(check(
        "associahedron",
        cg.objects.len() == 14 && cg.undirected_edges() == 21 && check_connected(&cg),
        json!(cg.summary()),
    ));
    Ok(SuiteReport::new("counts", checks))
}

/// The bases used by the Grothendieck checks, with whether each is a clique.
pub fn grothendieck_bases() -> Vec<(String, SmallCategory)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("BΣ{n}"), Group::symmetric(n).delooping()));
        out.push((format!("BC{n}"), Group::cyclic(n).delooping()));
        out.push((format!("EΣ{n}"), Group::symmetric(n).translation()));
        out.push((format!("EC{n}"), Group::cyclic(n).translation()));
    }
    out
}

pub fn grothendieck() -> SuiteReport {
    let mut checks = Vec::new();
    for (name, base) in grothendieck_bases() {
        for (label, sizes) in [
            ("singleton", vec![1; base.objects]),
            ("pairs", vec![2; base.objects]),
            ("mixed", (0..base.objects).map(|i| 1 + i % 2).collect()),
        ] {
            let g = build_grothendieck(&base, &sizes);
            let report = check_grothendieck(&base, &g);
            let clique_expected = name.starts_with('E') || base.morphism_count() == 1;
            checks.push(check(
                format!("{name}/{label}"),
                report.passed() && base.check_laws().is_ok() && report.total_is_clique == clique_expected,
                json!(report),
            ));
        }
    }
    SuiteReport::new("grothendieck", checks)
}

/// An object whose blocks follow the Δ map `alpha`.
pub fn object_with_support(alpha: &DeltaMap) -> ObjectExpr {
    let blocks = (1..=alpha.target())
        .map(|j| {
            let leaves: Vec<ObjectExpr> = (1..=alpha.source())
                .filter(|&i| alpha.apply(i) == j)
                .map(|i| ObjectExpr::leaf(&format!("X{i}")))
                .collect();
            ObjectExpr::functor(ObjectExpr::right_comb(leaves))
        })
        .collect();
    ObjectExpr::right_comb(blocks)
}

pub fn fullness() -> Result<SuiteReport, OracleError> {
    let mut checks = Vec::new();
    let sym = Doctrine::new(DoctrineKind::Symmetric);
    let cg = enumerate_component(sym, &Graph::one_vertex(["X1", "X2", "X3"]), &edges(3), 0)?;
    let r = check_fullness(&cg, sym)?;
    checks.push(check("paths/symmetric-3", r.full, json!({"pairs": r.pairs, "expected": r.expected, "realized": r.realized})));

    let sh = Doctrine::new(DoctrineKind::Shadow);
    let cg = enumerate_component(sh, &Graph::cycle(3), &edges(3), 0)?;
    let r = check_fullness(&cg, sh)?;
    checks.push(check("paths/shadow-3", r.full, json!({"pairs": r.pairs, "expected": r.expected, "realized": r.realized})));

    let lax = Doctrine::new(DoctrineKind::LaxFunctor);
    let seed = canonical_object(&edges(2), lax);
    let cg = enumerate_within(&seed, lax, |o| o.unit_count() <= 2 && o.block_count() <= 3)?;
    let id2 = IndexMor::Delta(DeltaMap::identity(2));
    let sources: Vec<usize> =
        (0..cg.objects.len()).filter(|&i| supporting_object(&cg.objects[i], lax) == Some(id2.clone())).collect();
    let targets: Vec<usize> = (0..cg.objects.len()).filter(|&i| cg.objects[i].block_count() <= 3).collect();
    let r = check_fullness_between(&cg, lax, &sources, &targets)?;
    checks.push(check(
        "paths/lax-functor-2",
        r.full,
        json!({"objects": cg.objects.len(), "pairs": r.pairs, "expected": r.expected, "realized": r.realized}),
    ));

    checks.extend(witness_fullness()?);
    Ok(SuiteReport::new("fullness", checks))
}

/// Every permutation of four leaves, every rotation of four leaves, and
/// every morphism of `(3↓Δ)` into objects with at most three blocks is
/// realized by a synthesized witness.
pub fn witness_fullness() -> Result<Vec<Check>, OracleError> {
    let mut checks = Vec::new();
    let names = ["X1", "X2", "X3", "X4"];
    let comb = ObjectExpr::right_comb(names.iter().map(|n| ObjectExpr::leaf(n)).collect());

    let sym = Doctrine::new(DoctrineKind::Symmetric);
    let mut ok = 0;
    let perms = Perm::all(4);
    for p in &perms {
        let target = WitnessTarget { perm: Some(p.clone()), ..Default::default() };
        if let Ok(w) = witness(&comb, None, &target, sym) {
            if invariant(&w, sym)?.perm.as_ref() == Some(p) {
                ok += 1;
            }
        }
    }
    checks.push(check("witness/symmetric-4", ok == perms.len(), json!({"realized": ok, "expected": perms.len()})));

    let sh = Doctrine::new(DoctrineKind::Shadow);
    let shadow = ObjectExpr::shadow(comb.clone());
    let mut ok = 0;
    for r in 0..4 {
        let rot = Rot::new(4, r);
        let target = WitnessTarget { rot: Some(rot), ..Default::default() };
        if let Ok(w) = witness(&shadow, None, &target, sh) {
            if invariant(&w, sh)?.rot == Some(rot) {
                ok += 1;
            }
        }
    }
    checks.push(check("witness/shadow-4", ok == 4, json!({"realized": ok, "expected": 4})));

    let lax = Doctrine::new(DoctrineKind::LaxFunctor);
    let (mut ok, mut total) = (0, 0);
    for k in 0..=3 {
        for alpha in DeltaMap::all(3, k) {
            let a = object_with_support(&alpha);
            for k2 in 0..=3 {
                for beta in hom_set(Family::Delta, LambdaObj::Finite(k), LambdaObj::Finite(k2))? {
                    total += 1;
                    let target = WitnessTarget { support: Some(beta.clone()), ..Default::default() };
                    if let Ok(w) = witness(&a, None, &target, lax) {
                        if let Some(Support::Comma(c)) = invariant(&w, lax)?.support {
                            if c.map == beta && c.dom == IndexMor::Delta(alpha.clone()) {
                                ok += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(check("witness/lax-functor-3", ok == total, json!({"realized": ok, "expected": total})));
    Ok(checks)
}
