//! Directed Hom tree-shifts: the answers that differ from the undirected case.

use homshift::conjugacy::{decide_conjugacy, graph_isomorphic};
use homshift::graph::{DirectedSimpleGraph, HomGraph};
use homshift::homdecide::{check_symmetric, decide_directed_hom, DirectedHomViolation};
use homshift::{amalgamation::total_amalgamation, catalog};

/// `a` reaches `x, y, z` and `b, c, d` one each; `x, y, z` reach all four.
fn four_fans() -> DirectedSimpleGraph {
    DirectedSimpleGraph::from_arcs(
        ["a", "b", "c", "d", "x", "y", "z"],
        [
            ("a", "x"),
            ("a", "y"),
            ("a", "z"),
            ("b", "x"),
            ("c", "y"),
            ("d", "z"),
            ("x", "a"),
            ("x", "b"),
            ("x", "c"),
            ("x", "d"),
            ("y", "a"),
            ("y", "b"),
            ("y", "c"),
            ("y", "d"),
            ("z", "a"),
            ("z", "b"),
            ("z", "c"),
            ("z", "d"),
        ],
    )
    .unwrap()
}

/// `a, b, c` reach the pairs of `x, y, z`; `x, y, z` reach all three.
fn three_pairs() -> DirectedSimpleGraph {
    DirectedSimpleGraph::from_arcs(
        ["a", "b", "c", "x", "y", "z"],
        [
            ("a", "x"),
            ("a", "y"),
            ("b", "x"),
            ("b", "z"),
            ("c", "y"),
            ("c", "z"),
            ("x", "a"),
            ("x", "b"),
            ("x", "c"),
            ("y", "a"),
            ("y", "b"),
            ("y", "c"),
            ("z", "a"),
            ("z", "b"),
            ("z", "c"),
        ],
    )
    .unwrap()
}

#[test]
fn non_isomorphic_graphs_with_conjugate_binary_shifts() {
    // {xyz} + {x} + {y} + {z} and {xy} + {xz} + {yz} cover every set of at
    // most two letters equally often
    let (g, h) = (four_fans(), three_pairs());
    assert!(graph_isomorphic(&g, &h).unwrap().is_none());
    for d in [1, 2] {
        let (a, b) = (g.hom_automaton(d).unwrap(), h.hom_automaton(d).unwrap());
        assert!(decide_conjugacy(&a, &b).unwrap().is_conjugate(), "d = {d}");
    }
    // the witness uses the fewest cubes, so it recovers the smaller graph
    let a = g.hom_automaton(2).unwrap();
    let w = decide_directed_hom(&a).unwrap();
    let w = w.witness().expect("Hom automaton");
    assert!(graph_isomorphic(&w.graph, &h).unwrap().is_some());
    // triples tell the two families apart
    let (a, b) = (g.hom_automaton(3).unwrap(), h.hom_automaton(3).unwrap());
    assert!(!decide_conjugacy(&a, &b).unwrap().is_conjugate());
}

#[test]
fn symmetric_but_not_directed_hom() {
    let k = total_amalgamation(&catalog::directed_example());
    assert!(check_symmetric(&k).is_ok());
    match decide_directed_hom(&catalog::directed_example()).unwrap() {
        homshift::homdecide::HomDecision::No {
            violation, reason, ..
        } => {
            assert_eq!(
                violation,
                DirectedHomViolation::NoCubeDecomposition { state: 0 }
            );
            assert!(reason.contains("(p+s)"));
        }
        _ => panic!("the merged row has no diagonal entries, so it is not a sum of cubes"),
    }
}
