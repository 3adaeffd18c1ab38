mod common;

use common::{oracle_is_hom, oracle_negative_girth, random_bipartite_partial_ttree, rng};
use signed_bounds::bounds::{
    all_cliques, check_bound, enumerate_wide_cliques, find_isomorphic_copy, walk_to_copy, map_partial_ttree,
    BoundError, BoundVerdict, CopyMode,
};
use signed_bounds::signed::{named_graph, NamedGraph, Sign, SignedGraph};
use signed_bounds::spc::{spc, spc_distance_graph};
use signed_bounds::ttree::recognize_partial_ttree;

#[test]
fn random_partial_3trees_map_to_spc3() {
    let mut r = rng(7);
    let d = spc_distance_graph(2).unwrap();
    let cert = all_cliques(&d, 3);
    let b = spc(3).unwrap();
    for i in 0..60 {
        let n = 2 + i % 19;
        let g = random_bipartite_partial_ttree(&mut r, n, 3, 0.8);
        let seq = recognize_partial_ttree(&g, 3).unwrap().expect("generated as a partial 3-tree");
        let f = map_partial_ttree(&g, &seq, &d, &cert).unwrap();
        assert!(oracle_is_hom(&g, &b, &f), "graph {i}");
    }
}

#[test]
fn random_forests_map_to_cneg4() {
    let mut r = rng(11);
    let b = named_graph(&NamedGraph::NegativeCycle(4)).unwrap();
    let BoundVerdict::Yes { certificate, .. } = check_bound(&b, 1, 2).unwrap() else {
        panic!("C_-4 bounds forests");
    };
    let d = signed_bounds::bounds::build_distance_graph(&b, 2).unwrap();
    for n in 1..25 {
        let g = random_bipartite_partial_ttree(&mut r, n, 1, 0.7);
        let seq = recognize_partial_ttree(&g, 1).unwrap().unwrap();
        let f = map_partial_ttree(&g, &seq, &d, &certificate).unwrap();
        assert!(oracle_is_hom(&g, &b, &f));
    }
}

#[test]
fn mapping_rejects_graphs_outside_the_class() {
    let d = spc_distance_graph(2).unwrap();
    let cert = all_cliques(&d, 3);
    // A negative digon has negative girth 2 < 4.
    let digon = SignedGraph::from_edges(2, [(0, 1, Sign::Positive), (0, 1, Sign::Negative)]).unwrap();
    assert_eq!(oracle_negative_girth(&digon), Some(2));
    let seq = recognize_partial_ttree(&digon, 3).unwrap().unwrap();
    assert!(matches!(map_partial_ttree(&digon, &seq, &d, &cert), Err(BoundError::BadParams(_))));
}

#[test]
fn walk_to_copy_reaches_every_list_member() {
    let d = spc_distance_graph(2).unwrap();
    let cert = all_cliques(&d, 3);
    let l = enumerate_wide_cliques(3, 2);
    assert!(!l.is_empty());
    for x in &l.members {
        let walk = walk_to_copy(&d, &cert, x).expect("closed certificate reaches every member");
        assert_eq!(&walk.effective_weights(&d), x);
        let copy = find_isomorphic_copy(&d, &cert, x, CopyMode::UpToSwitching).unwrap();
        assert_eq!(&copy.effective_weights(&d), x);
    }
}

#[test]
fn spc3_itself_is_too_wide_to_map_this_way() {
    // SPC(3) is K_{4,4} as an unsigned graph, which has treewidth 4.
    let b = spc(3).unwrap();
    assert_eq!(recognize_partial_ttree(&b, 3).unwrap(), None);
    assert!(recognize_partial_ttree(&b, 4).unwrap().is_some());
}
