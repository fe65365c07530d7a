use coherence::expr::{Doctrine, DoctrineKind, EdgeId, Graph};
use coherence::morph::apply_move;
use coherence::oracle::category::{build_grothendieck, check_grothendieck, Group};
use coherence::oracle::suites::{run_suite, SUITES};
use coherence::oracle::{check_connected, enumerate_component, export_dot, CliqueGraph};

fn edges(n: usize) -> Vec<EdgeId> {
    (1..=n).map(|i| EdgeId::new(&format!("X{i}"))).collect()
}

#[test]
fn small_components() {
    let bicat = Doctrine::new(DoctrineKind::Bicategory);
    let cg = enumerate_component(bicat, &Graph::chain(3), &edges(3), 0).unwrap();
    assert_eq!((cg.objects.len(), cg.undirected_edges()), (2, 1));

    let sym = Doctrine::new(DoctrineKind::Symmetric);
    let cg = enumerate_component(sym, &Graph::one_vertex(["X1", "X2"]), &edges(2), 0).unwrap();
    assert_eq!(cg.objects.len(), 2);
    assert!(check_connected(&cg));
}

#[test]
fn every_edge_is_a_move() {
    for (kind, graph, n, units) in [
        (DoctrineKind::Bicategory, Graph::chain(4), 4, 1),
        (DoctrineKind::Shadow, Graph::cycle(3), 3, 1),
        (DoctrineKind::LaxFunctor, Graph::chain(2), 2, 1),
        (DoctrineKind::LaxShadowFunctor, Graph::cycle(2), 2, 0),
    ] {
        let d = Doctrine::new(kind);
        let cg = enumerate_component(d, &graph, &edges(n), units).unwrap();
        assert!(check_connected(&cg), "{d}");
        for (a, b, mv) in &cg.edges {
            assert_eq!(apply_move(&cg.objects[*a], mv, d).as_ref(), Ok(&cg.objects[*b]), "{d}: {mv}");
        }
    }
}

#[test]
fn unions_are_disconnected() {
    let bicat = Doctrine::new(DoctrineKind::Bicategory);
    let a = enumerate_component(bicat, &Graph::chain(3), &edges(3), 0).unwrap();
    assert!(!check_connected(&a.union(&a)));
}

#[test]
fn dot_export() {
    let bicat = Doctrine::new(DoctrineKind::Bicategory);
    let cg = enumerate_component(bicat, &Graph::chain(5), &edges(5), 0).unwrap();
    let dot = export_dot(&cg);
    assert!(dot.starts_with("digraph component {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 14);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 21);
    let empty = export_dot(&CliqueGraph { objects: Vec::new(), edges: Vec::new() });
    assert_eq!(empty, "digraph component {\n}\n");
}

#[test]
fn grothendieck_groupoid_laws() {
    let base = Group::cyclic(3).translation();
    let g = build_grothendieck(&base, &[1, 2, 1]);
    assert!(check_grothendieck(&base, &g).passed());
    assert!(g.total.is_clique());
    let base = Group::symmetric(3).delooping();
    let g = build_grothendieck(&base, &[2]);
    assert!(check_grothendieck(&base, &g).passed());
    assert!(!g.total.is_thin());
}

#[test]
fn fast_suites_pass() {
    for name in ["counts", "grothendieck"] {
        let report = run_suite(name).unwrap().unwrap();
        assert!(report.passed, "{name}");
    }
    assert!(run_suite("nope").is_none());
    assert_eq!(SUITES.len(), 4);
}
