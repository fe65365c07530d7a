mod common;

use coherence::dsl::{parse_graph, parse_moves, parse_object, print_object};
use coherence::expr::{validate, Doctrine, DoctrineKind, ObjectExpr};
use coherence::morph::moves_to_string;
use coherence::oracle::suites::all_doctrines;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn parses_nested_objects() {
    let obj = parse_object("⟨F(X1*I)*F(X2)⟩").unwrap();
    assert_eq!(parse_object(&print_object(&obj)).unwrap(), obj);
    assert_eq!(parse_object("sh[F(X1*I)*F(X2)]").unwrap(), obj);
    assert!(parse_object("X1*X2*X3").is_err());
    assert_eq!(obj.occurrences(), 2);
    assert_eq!(obj.block_count(), 2);
    assert_eq!(parse_object("I").unwrap(), ObjectExpr::Unit);
}

#[test]
fn reports_parse_errors_with_offsets() {
    let err = parse_object("F(X1*X2").unwrap_err();
    assert_eq!(err.offset, 7);
    assert!(parse_object("X1**X2").is_err());
    assert!(parse_object("").is_err());
    assert!(parse_moves("assoc@Q").is_err());
    assert!(parse_graph("a: x ->").is_err());
}

#[test]
fn graph_files_parse() {
    let g = parse_graph("# chain\nX1: a -> b\nX2: b -> c\n").unwrap();
    assert_eq!(g.vertex_count(), 3);
    let obj = parse_object("X1*X2").unwrap();
    assert!(validate(&obj, &g, Doctrine::new(DoctrineKind::Bicategory)).is_ok());
    let bad = parse_object("X2*X1").unwrap();
    assert!(validate(&bad, &g, Doctrine::new(DoctrineKind::Bicategory)).is_err());
}

#[test]
fn move_lists_round_trip() {
    for text in ["assoc; assoc@R; lu~@L/in", "rot:2; shcomm; comp@in", "sym; unit@R; ru~", ""] {
        let moves = parse_moves(text).unwrap();
        assert_eq!(parse_moves(&moves_to_string(&moves)).unwrap(), moves, "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), which in 0usize..22, n in 0usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = all_doctrines()[which];
        let obj = common::random_object(&mut rng, d, n, 3);
        let printed = print_object(&obj);
        prop_assert_eq!(parse_object(&printed).unwrap(), obj.clone());
        prop_assert!(validate(&obj, &common::one_vertex_graph(&obj), d).is_ok(), "{} invalid in {}", printed, d);
    }

    #[test]
    fn moves_print_then_parse(seed in any::<u64>(), which in 0usize..22, len in 0usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = all_doctrines()[which];
        let obj = common::random_object(&mut rng, d, 3, 2);
        let walk = common::random_walk(&mut rng, &obj, d, len);
        prop_assert_eq!(parse_moves(&moves_to_string(&walk.moves)).unwrap(), walk.moves);
    }
}
