//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on
//! any failure.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coherence::decide::{decide_equal, Verdict};
use coherence::dsl::{parse_moves, parse_object, print_object};
use coherence::expr::{Doctrine, DoctrineKind, Graph, ObjectExpr};
use coherence::index::{
    compose_index, hom_set, hom_set_size, thin_reachable, CyclicMap, DeltaMap, Family, FinGen, FinMap, IndexMor,
    LambdaGen, LambdaObj, LambdaPrimeMor, Perm, Rot,
};
use coherence::invariant::{invariant, permutation_of, rotation_of, Support};
use coherence::morph::{moves_to_string, MorphTerm};
use coherence::oracle::category::{build_grothendieck, check_grothendieck, Group, SmallCategory};
use coherence::oracle::relations::{check_relations, relation_instances, RelationBounds};
use coherence::oracle::suites::{all_doctrines, object_with_support};
use coherence::oracle::{check_connected, enumerate_component};
use coherence::witness::{witness, WitnessTarget};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn term(dom: &str, moves: &str) -> MorphTerm {
    MorphTerm::new(parse_object(dom).unwrap(), parse_moves(moves).unwrap())
}

// ---------------------------------------------------------------- 1

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

fn bracketings(lo: usize, hi: usize) -> Vec<Tree> {
    if hi - lo == 1 {
        return vec![Tree::Leaf(lo)];
    }
    let mut out = Vec::new();
    for cut in lo + 1..hi {
        for l in bracketings(lo, cut) {
            for r in bracketings(cut, hi) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Every tree reached by one rewrite `a(bc) → (ab)c` anywhere in `t`.
fn assoc_rewrites(t: &Tree) -> Vec<Tree> {
    let mut out = Vec::new();
    if let Tree::Node(l, r) = t {
        if let Tree::Node(b, c) = r.as_ref() {
            out.push(Tree::Node(Box::new(Tree::Node(l.clone(), b.clone())), c.clone()));
        }
        for l2 in assoc_rewrites(l) {
            out.push(Tree::Node(Box::new(l2), r.clone()));
        }
        for r2 in assoc_rewrites(r) {
            out.push(Tree::Node(l.clone(), Box::new(r2)));
        }
    }
    out
}

fn criterion_associahedron() -> Outcome {
    let start = Instant::now();
    let d = Doctrine::new(DoctrineKind::Bicategory);
    let mut counts = Vec::new();
    for n in 2..=6 {
        let trees = bracketings(0, n);
        let edges: usize = trees.iter().map(|t| assoc_rewrites(t).len()).sum();
        let cg = enumerate_component(d, &Graph::chain(n), &common::edge_ids(n), 0).map_err(|e| e.to_string())?;
        ensure(cg.objects.len() == trees.len(), || format!("n={n}: {} objects, brute force {}", cg.objects.len(), trees.len()))?;
        ensure(cg.undirected_edges() == edges, || format!("n={n}: {} edges, brute force {edges}", cg.undirected_edges()))?;
        ensure(check_connected(&cg), || format!("n={n}: not connected"))?;
        counts.push(cg.objects.len());
    }
    ensure(counts == [1, 2, 5, 14, 42], || format!("catalan counts {counts:?}"))?;
    let cg = enumerate_component(d, &Graph::chain(5), &common::edge_ids(5), 0).map_err(|e| e.to_string())?;
    ensure(cg.objects.len() == 14 && cg.undirected_edges() == 21, || "n=5 is not 14/21".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("catalan {counts:?}, n=5 has 14 objects and 21 edges, {elapsed:.0?}"))
}

// ---------------------------------------------------------------- 2

fn criterion_relations() -> Outcome {
    let bounds = RelationBounds::default();
    let mut total = 0;
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for d in all_doctrines() {
        let r = check_relations(d, &bounds);
        ensure(r.instances > 0, || format!("{d}: no instances"))?;
        if let Some(f) = r.failures.first() {
            return Err(format!("{d}: {} failures, first {} on {}: {}", r.failures.len(), f.relation, f.domain, f.reason));
        }
        total += r.instances;
        seen.extend(r.by_relation.keys().cloned());
    }
    for name in [
        "pentagon",
        "triangle",
        "unit-agreement",
        "hexagon",
        "symmetry-involution",
        "shadow-unit",
        "shadow-associativity",
        "lax-left-unit",
        "lax-right-unit",
        "lax-associativity",
        "lax-symmetry",
        "shadow-comparison",
        "inverse",
        "whiskering",
        "naturality",
    ] {
        ensure(seen.contains(name), || format!("relation {name} never instantiated"))?;
    }
    Ok(format!("{total} instances over {} doctrines, 0 failures", all_doctrines().len()))
}

// ---------------------------------------------------------------- 3

fn brute_functions(n: usize, k: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let total = k.pow(n as u32);
    for mut code in 0..total {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(code % k + 1);
            code /= k;
        }
        out.insert(v);
    }
    out
}

fn fin_generators(m: usize) -> Vec<FinGen> {
    let mut gens: Vec<FinGen> = (1..=m + 1).map(FinGen::Coface).collect();
    gens.extend((1..m).map(FinGen::Codegeneracy));
    gens.extend((1..m).map(FinGen::Transposition));
    gens
}

fn criterion_fin_presentation() -> Outcome {
    let mut checked = 0;
    for n in 0..=3 {
        let mut seen: HashSet<FinMap> = HashSet::new();
        let mut frontier = vec![FinMap::identity(n)];
        seen.insert(FinMap::identity(n));
        for _ in 0..6 {
            let mut next = Vec::new();
            for f in &frontier {
                for g in fin_generators(f.target()) {
                    let step = g.at(f.target()).map_err(|e| e.to_string())?;
                    let h = FinMap::compose(&step, f).map_err(|e| e.to_string())?;
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        for k in 0..=4 {
            let realized: BTreeSet<Vec<usize>> =
                seen.iter().filter(|f| f.target() == k).map(|f| f.values().to_vec()).collect();
            let all: BTreeSet<Vec<usize>> =
                if k == 0 { if n == 0 { [vec![]].into() } else { BTreeSet::new() } } else { brute_functions(n, k) };
            ensure(realized == all, || format!("Hom({n},{k}): realized {} of {}", realized.len(), all.len()))?;
            ensure(FinMap::all(n, k).len() == all.len(), || format!("FinMap::all({n},{k}) has the wrong size"))?;
            checked += all.len();
        }
    }
    Ok(format!("{checked} maps of Hom(n,k), n ≤ 3, k ≤ 4, all realized by words of length ≤ 6"))
}

// ---------------------------------------------------------------- 4

fn lambda_objects() -> Vec<LambdaObj> {
    let mut v: Vec<LambdaObj> = (0..=4).map(LambdaObj::Finite).collect();
    v.push(LambdaObj::Star);
    v
}

fn criterion_lambda() -> Outcome {
    for n in 1..=5 {
        let homs = LambdaPrimeMor::all(LambdaObj::Finite(n), LambdaObj::Finite(1));
        ensure(homs.len() == n, || format!("|Hom({n},1)| = {}", homs.len()))?;
        ensure(hom_set_size(Family::Lambda, LambdaObj::Finite(n), LambdaObj::Finite(1)) == n as u128, || {
            format!("hom_set_size({n},1) disagrees")
        })?;
        let tau = CyclicMap::tau(n);
        let mut acc = CyclicMap::identity(n);
        for i in 1..=n {
            acc = CyclicMap::compose(&tau, &acc).map_err(|e| e.to_string())?;
            ensure((i == n) == (acc == CyclicMap::identity(n)), || format!("τ_{n}^{i} identity check failed"))?;
        }
    }
    let t = LambdaGen::Terminal.at(LambdaObj::Finite(1)).map_err(|e| e.to_string())?;
    let s1 = LambdaGen::Codegeneracy(1).at(LambdaObj::Finite(2)).map_err(|e| e.to_string())?;
    let tau2 = LambdaGen::Cycle.at(LambdaObj::Finite(2)).map_err(|e| e.to_string())?;
    let ts = LambdaPrimeMor::compose(&t, &s1).map_err(|e| e.to_string())?;
    let tst = LambdaPrimeMor::compose(&ts, &tau2).map_err(|e| e.to_string())?;
    ensure(ts == tst, || "t∘s¹ ≠ t∘s¹∘τ₂".into())?;
    ensure(LambdaPrimeMor::compose(&s1, &tau2).map_err(|e| e.to_string())? != s1, || "s¹∘τ₂ collapsed to s¹".into())?;

    let mut rng = StdRng::seed_from_u64(4);
    let objs = lambda_objects();
    let mut triples = 0;
    while triples < 1000 {
        let pick: Vec<LambdaObj> = (0..4).map(|_| objs[rng.gen_range(0..objs.len())]).collect();
        let homs: Vec<Vec<LambdaPrimeMor>> = (0..3).map(|i| LambdaPrimeMor::all(pick[i], pick[i + 1])).collect();
        if homs.iter().any(Vec::is_empty) {
            continue;
        }
        let [f, g, h] = [0, 1, 2].map(|i| homs[i][rng.gen_range(0..homs[i].len())].clone());
        let c = |a: &LambdaPrimeMor, b: &LambdaPrimeMor| LambdaPrimeMor::compose(a, b).map_err(|e| e.to_string());
        let left = c(&h, &c(&g, &f)?)?;
        let right = c(&c(&h, &g)?, &f)?;
        ensure(left == right, || format!("associativity fails for {f:?}, {g:?}, {h:?}"))?;
        ensure(left.source() == pick[0] && left.target() == pick[3], || "composite has wrong endpoints".into())?;
        triples += 1;
    }
    Ok("|Hom(n,1)| = n for n ≤ 5, τⁿ = id, t∘s¹ = t∘s¹∘τ₂, 1000 associative triples".into())
}

// ---------------------------------------------------------------- 5

fn brute_monotone(n: usize, k: usize) -> usize {
    if k == 0 {
        return usize::from(n == 0);
    }
    brute_functions(n, k).into_iter().filter(|v| v.windows(2).all(|w| w[0] <= w[1])).count()
}

fn criterion_witness_fullness() -> Outcome {
    let names = ["X1", "X2", "X3", "X4"];
    let comb = ObjectExpr::right_comb(names.iter().map(|n| ObjectExpr::leaf(n)).collect());

    let sym = Doctrine::new(DoctrineKind::Symmetric);
    let perms = Perm::all(4);
    ensure(perms.len() == 24, || "Perm::all(4) is not 24".into())?;
    for p in &perms {
        let target = WitnessTarget { perm: Some(p.clone()), ..Default::default() };
        let w = witness(&comb, None, &target, sym).map_err(|e| format!("perm {p:?}: {e}"))?;
        ensure(&permutation_of(&w, sym).map_err(|e| e.to_string())? == p, || format!("perm {p:?} not realized"))?;
        // The codomain frontier is the domain frontier permuted.
        let cod = w.codomain(sym).map_err(|e| e.to_string())?.frontier();
        let dom = comb.frontier();
        for i in 1..=4 {
            ensure(cod.edges[p.apply(i) - 1] == dom.edges[i - 1], || format!("perm {p:?} moves leaves elsewhere"))?;
        }
    }

    let sh = Doctrine::new(DoctrineKind::Shadow);
    let shadow = ObjectExpr::shadow(comb.clone());
    for r in 0..4 {
        let rot = Rot::new(4, r);
        let target = WitnessTarget { rot: Some(rot), ..Default::default() };
        let w = witness(&shadow, None, &target, sh).map_err(|e| format!("rot {r}: {e}"))?;
        ensure(rotation_of(&w, sh).map_err(|e| e.to_string())? == rot, || format!("rot {r} not realized"))?;
    }

    let lax = Doctrine::new(DoctrineKind::LaxFunctor);
    let mut realized = 0;
    let mut expected = 0;
    for k in 0..=3 {
        for k2 in 0..=3 {
            expected += brute_monotone(3, k) * brute_monotone(k, k2);
        }
        for alpha in DeltaMap::all(3, k) {
            let a = object_with_support(&alpha);
            for k2 in 0..=3 {
                for beta in hom_set(Family::Delta, LambdaObj::Finite(k), LambdaObj::Finite(k2)).map_err(|e| e.to_string())? {
                    let target = WitnessTarget { support: Some(beta.clone()), ..Default::default() };
                    let w = witness(&a, None, &target, lax).map_err(|e| format!("{alpha:?} then {beta:?}: {e}"))?;
                    match invariant(&w, lax).map_err(|e| e.to_string())?.support {
                        Some(Support::Comma(c)) if c.map == beta && c.dom == IndexMor::Delta(alpha.clone()) => realized += 1,
                        other => return Err(format!("{alpha:?} then {beta:?}: got {other:?}")),
                    }
                }
            }
        }
    }
    ensure(realized == expected, || format!("(3↓Δ): realized {realized} of {expected}"))?;
    Ok(format!("24 permutations, 4 rotations, {realized} morphisms of (3↓Δ)"))
}

// ---------------------------------------------------------------- 6

fn criterion_decisions() -> Outcome {
    let bicat = Doctrine::new(DoctrineKind::Bicategory);
    let sym = Doctrine::new(DoctrineKind::Symmetric);
    let lax = Doctrine::new(DoctrineKind::LaxFunctor);
    let decide = |f: &MorphTerm, g: &MorphTerm, d: Doctrine| decide_equal(f, g, d).map_err(|e| e.to_string());

    let pent = decide(
        &term("X1*(X2*(X3*X4))", "assoc; assoc"),
        &term("X1*(X2*(X3*X4))", "assoc@R; assoc; assoc@L"),
        bicat,
    )?;
    ensure(pent.verdict == Verdict::Equal, || format!("pentagon: {:?}", pent.verdict))?;

    let hex = decide(&term("X1*(X2*X3)", "assoc; sym; assoc"), &term("X1*(X2*X3)", "sym@R; assoc; sym@L"), sym)?;
    ensure(hex.verdict == Verdict::Equal, || format!("hexagon: {:?}", hex.verdict))?;

    let swap = decide(&term("X*X", ""), &term("X*X", "sym"), sym)?;
    ensure(swap.verdict == Verdict::NotEqual { differs: vec!["perm"] }, || format!("id vs sym: {:?}", swap.verdict))?;

    let fork = decide(&term("F(I)", "lu~; unit@L"), &term("F(I)", "ru~; unit@R"), lax)?;
    ensure(fork.verdict == Verdict::NotEqual { differs: vec!["support"] }, || format!("F(I) fork: {:?}", fork.verdict))?;
    Ok("pentagon, hexagon Equal; id vs sym on X*X and the F(I) fork NotEqual".into())
}

// ---------------------------------------------------------------- 7

fn brute_hom_bijective(base: &SmallCategory, objects: &[(usize, usize)], total: &SmallCategory) -> bool {
    for a in 0..objects.len() {
        for b in 0..objects.len() {
            let count = (0..total.morphism_count()).filter(|&m| total.source[m] == a && total.target[m] == b).count();
            let base_count = (0..base.morphism_count())
                .filter(|&m| base.source[m] == objects[a].0 && base.target[m] == objects[b].0)
                .count();
            if count != base_count {
                return false;
            }
        }
    }
    true
}

fn criterion_grothendieck() -> Outcome {
    let bases = [
        ("BΣ3", Group::symmetric(3).delooping(), false, 1, 6),
        ("EΣ2", Group::symmetric(2).translation(), true, 2, 4),
        ("EC3", Group::cyclic(3).translation(), true, 3, 9),
    ];
    for (name, base, clique, objects, morphisms) in bases {
        ensure(base.objects == objects && base.morphism_count() == morphisms, || {
            format!("{name}: {} objects, {} morphisms", base.objects, base.morphism_count())
        })?;
        base.check_laws().map_err(|e| format!("{name}: {e}"))?;
        for sizes in [vec![1; base.objects], vec![2; base.objects]] {
            let g = build_grothendieck(&base, &sizes);
            let report = check_grothendieck(&base, &g);
            ensure(report.passed(), || format!("{name} {sizes:?}: {report:?}"))?;
            let hit: HashSet<usize> = g.objects.iter().map(|&(i, _)| i).collect();
            ensure(hit.len() == base.objects, || format!("{name}: projection not surjective"))?;
            ensure(brute_hom_bijective(&base, &g.objects, &g.total), || format!("{name}: not hom-bijective"))?;
            let is_clique = g.total.is_thin() && g.total.is_groupoid() && g.total.is_connected();
            ensure(is_clique == clique, || format!("{name} {sizes:?}: clique = {is_clique}"))?;
        }
    }
    Ok("BΣ3, EΣ2, EC3 with singleton and pair fibers".into())
}

// ---------------------------------------------------------------- 8

/// Zig-zag reachability among the objects `n → k` (k ≤ n, plus `*` for Λ):
/// forward along any map, backward along injective maps.
fn zigzag_oracle(family: Family, n: usize) -> Result<(Vec<IndexMor>, Vec<Vec<bool>>), String> {
    let mut targets: Vec<LambdaObj> = (1..=n).map(LambdaObj::Finite).collect();
    if family == Family::Lambda {
        targets.push(LambdaObj::Star);
    }
    let mut objects = Vec::new();
    for &k in &targets {
        objects.extend(hom_set(family, LambdaObj::Finite(n), k).map_err(|e| e.to_string())?);
    }
    let index: HashMap<IndexMor, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (i, alpha) in objects.iter().enumerate() {
        for &k in &targets {
            for beta in hom_set(family, alpha.target(), k).map_err(|e| e.to_string())? {
                let gamma = compose_index(&beta, alpha).map_err(|e| e.to_string())?;
                let j = index[&gamma];
                adj[i].push(j);
                if beta.is_injective() {
                    adj[j].push(i);
                }
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut reach = vec![vec![false; objects.len()]; objects.len()];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut queue = VecDeque::from([s]);
        row[s] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !row[w] {
                    row[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok((objects, reach))
}

fn criterion_thin() -> Outcome {
    let mut pairs = 0;
    let mut incomparable = 0;
    for (kind, max_n) in [
        (DoctrineKind::NormalLaxFunctor, 4),
        (DoctrineKind::NormalLaxSymmetricFunctor, 4),
        (DoctrineKind::NormalLaxShadowFunctor, 3),
    ] {
        let loc = Doctrine::new(kind).thin_localization().ok_or("no thin localization")?;
        for n in 1..=max_n {
            let (objects, reach) = zigzag_oracle(loc.family, n)?;
            for (i, a) in objects.iter().enumerate() {
                for (j, b) in objects.iter().enumerate() {
                    let got = thin_reachable(loc, a, b).map_err(|e| format!("undefined on {a:?}, {b:?}: {e}"))?;
                    ensure(got == reach[i][j], || format!("{kind:?}: {a:?} to {b:?} is {got}, zig-zags say {}", reach[i][j]))?;
                    incomparable += usize::from(!reach[i][j] && !reach[j][i]);
                    pairs += 1;
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(8);
    let bounds = RelationBounds { max_frontier: 3, max_units: 1, max_depth: 2, generic_sample: Some(200) };
    let doctrines: Vec<Doctrine> = all_doctrines().into_iter().filter(|d| d.thin_localization().is_some()).collect();
    let pools: Vec<_> = doctrines.iter().map(|&d| relation_instances(d, &bounds)).collect();
    let mut generated = 0;
    while generated < 1000 {
        let which = generated % doctrines.len();
        let d = doctrines[which];
        let pool = &pools[which];
        let inst = &pool[rng.gen_range(0..pool.len())];
        let walk = { let len = rng.gen_range(0..4); common::random_invertible_walk(&mut rng, &inst.lhs.domain, d, len) };
        let p = walk.invert(d).map_err(|e| e.to_string())?;
        let cod = inst.lhs.codomain(d).map_err(|e| e.to_string())?;
        let q = { let len = rng.gen_range(0..4); common::random_walk(&mut rng, &cod, d, len) };
        let build = |mid: &MorphTerm| -> Result<MorphTerm, String> {
            p.then(mid, d).and_then(|t| t.then(&q, d)).map_err(|e| e.to_string())
        };
        let (f, g) = (build(&inst.lhs)?, build(&inst.rhs)?);
        let decision = decide_equal(&f, &g, d).map_err(|e| e.to_string())?;
        ensure(decision.is_equal(), || {
            format!("{d} {}: {} vs {}: {:?}", inst.name, moves_to_string(&f.moves), moves_to_string(&g.moves), decision.verdict)
        })?;
        generated += 1;
    }
    Ok(format!(
        "{pairs} pairs agree with zig-zag search ({incomparable} incomparable), 1000 rewrite pairs Equal in {} doctrines",
        doctrines.len()
    ))
}

// ---------------------------------------------------------------- 9

fn criterion_round_trips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let doctrines = all_doctrines();
    for i in 0..1000 {
        let d = doctrines[i % doctrines.len()];
        let a = { let len = rng.gen_range(1..=4); common::random_object(&mut rng, d, len, 2) };
        let f = { let len = rng.gen_range(1..=8); common::random_invertible_walk(&mut rng, &a, d, len) };
        let inv = f.invert(d).map_err(|e| e.to_string())?;
        let loop_ = f.then(&inv, d).map_err(|e| e.to_string())?;
        let decision = decide_equal(&loop_, &MorphTerm::identity(a.clone()), d).map_err(|e| e.to_string())?;
        ensure(decision.is_equal(), || format!("{d}: f∘f⁻¹ ≠ id for {} on {}", moves_to_string(&f.moves), print_object(&a)))?;
        let trace = loop_.replay(d).map_err(|e| e.to_string())?;
        ensure(trace.last() == Some(&a), || format!("{d}: replay does not return to {}", print_object(&a)))?;
        let cod = f.codomain(d).map_err(|e| e.to_string())?;
        ensure(trace[f.len()] == cod && inv.domain == cod, || format!("{d}: replay and codomain disagree"))?;

        let b = { let len = rng.gen_range(0..=5); common::random_object(&mut rng, doctrines[(i * 7) % doctrines.len()], len, 3) };
        let printed = print_object(&b);
        let back = parse_object(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure(back == b, || format!("{printed} reparses differently"))?;
        let text = moves_to_string(&f.moves);
        ensure(parse_moves(&text).map_err(|e| e.to_string())? == f.moves, || format!("moves {text} reparse differently"))?;
    }
    Ok("1000 invertible terms and 1000 expressions".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 9] = [
        ("associahedron-counts", criterion_associahedron),
        ("relation-soundness", criterion_relations),
        ("fin-presentation", criterion_fin_presentation),
        ("lambda-model", criterion_lambda),
        ("witness-fullness", criterion_witness_fullness),
        ("decision-spot-checks", criterion_decisions),
        ("grothendieck", criterion_grothendieck),
        ("thin-localization", criterion_thin),
        ("round-trips", criterion_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
