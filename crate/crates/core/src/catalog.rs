//! Small named instances: worked examples and classic shifts.

use crate::automaton::EdgeTreeAutomaton;
use crate::compiler::SftPresentation;
use crate::graph::{DirectedSimpleGraph, UndirectedGraph};

/// Directed multigraph with adjacency matrix `[[2,2,1],[1,1,2],[1,1,0]]` on
/// states `1, 2, 3`; its first two columns coincide.
pub fn sequence_example() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_matrix(&[vec![2, 2, 1], vec![1, 1, 2], vec![1, 1, 0]]).expect("valid")
}

/// Total amalgamation of [`sequence_example`]: `[[3,3],[1,0]]`.
pub fn sequence_example_amalgamation() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_matrix(&[vec![3, 3], vec![1, 0]]).expect("valid")
}

/// Hom graph of the amalgamated sequence example: loops at 1, 2, 3, a
/// triangle among them, and a fourth vertex joined to all three.
pub fn sequence_example_hom_graph() -> UndirectedGraph {
    UndirectedGraph::from_edges(
        ["1", "2", "3", "4"],
        [
            ("1", "1"),
            ("2", "2"),
            ("3", "3"),
            ("1", "2"),
            ("1", "3"),
            ("2", "3"),
            ("1", "4"),
            ("2", "4"),
            ("3", "4"),
        ],
    )
    .expect("valid")
}

/// Two vertices `a`, `b`: a loop at `a` and the edge `a - b`. Its Hom shift
/// is the golden mean shift.
pub fn golden_mean_graph() -> UndirectedGraph {
    UndirectedGraph::from_edges(["a", "b"], [("a", "a"), ("a", "b")]).expect("valid")
}

/// Sequences avoiding `bb`, as a two-state graph `[[1,1],[1,0]]`.
pub fn golden_mean_sequences() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_matrix(&[vec![1, 1], vec![1, 0]]).expect("valid")
}

/// Binary trees with no two consecutive `b` on a path.
pub fn golden_mean_tree() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_transitions(
        2,
        ["a", "b"],
        [
            ("a", vec!["a", "a"], 1),
            ("a", vec!["a", "b"], 1),
            ("a", vec!["b", "a"], 1),
            ("a", vec!["b", "b"], 1),
            ("b", vec!["a", "a"], 1),
        ],
    )
    .expect("valid")
}

/// Forbidden blocks `(b,b,b)`, `(b,b,a)`, `(b,a,b)` over `{a, b}` at arity 2.
pub fn golden_mean_tree_sft() -> SftPresentation {
    SftPresentation::from_words(2, "ab", &["bbb", "bba", "bab"]).expect("valid")
}

/// State `1` with a loop and two edges to `2`, and one edge back.
pub fn split_figure_left() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_matrix(&[vec![1, 2], vec![1, 0]]).expect("valid")
}

/// Out-splitting of [`split_figure_left`] separating the loop of `1` from
/// its edges to `2`, on states `1_1, 1_2, 2`.
pub fn split_figure_right() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_transitions(
        1,
        ["1_1", "1_2", "2"],
        [
            ("1_1", vec!["1_1"], 1),
            ("1_1", vec!["1_2"], 1),
            ("1_2", vec!["2"], 2),
            ("2", vec!["1_1"], 1),
            ("2", vec!["1_2"], 1),
        ],
    )
    .expect("valid")
}

/// Three states where `q1` and `q2` have equal columns.
pub fn tree_example_one() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_transitions(
        2,
        ["q1", "q2", "q3"],
        [
            ("q1", vec!["q1", "q1"], 1),
            ("q1", vec!["q1", "q2"], 1),
            ("q1", vec!["q2", "q1"], 1),
            ("q1", vec!["q2", "q2"], 1),
            ("q2", vec!["q3", "q3"], 1),
            ("q3", vec!["q1", "q1"], 1),
            ("q3", vec!["q1", "q2"], 1),
            ("q3", vec!["q2", "q1"], 1),
            ("q3", vec!["q2", "q2"], 1),
        ],
    )
    .expect("valid")
}

/// Total amalgamation of [`tree_example_one`].
pub fn tree_example_one_amalgamation() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_transitions(
        2,
        ["q12", "q3"],
        [
            ("q12", vec!["q12", "q12"], 1),
            ("q12", vec!["q3", "q3"], 1),
            ("q3", vec!["q12", "q12"], 1),
        ],
    )
    .expect("valid")
}

/// The full binary tree-shift on two states with one transition to every pair.
pub fn tree_example_two() -> EdgeTreeAutomaton {
    let pairs = [["q1", "q1"], ["q1", "q2"], ["q2", "q1"], ["q2", "q2"]];
    let transitions = ["q1", "q2"]
        .into_iter()
        .flat_map(|p| pairs.iter().map(move |t| (p, t.to_vec(), 1)));
    EdgeTreeAutomaton::from_transitions(2, ["q1", "q2"], transitions).expect("valid")
}

/// Five-state non-symmetric automaton on `p, q, r, s, u` whose total
/// amalgamation merges `p` and `s`.
pub fn directed_example() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_transitions(
        2,
        ["p", "q", "r", "s", "u"],
        [
            ("p", vec!["q", "r"], 1),
            ("p", vec!["r", "u"], 1),
            ("p", vec!["u", "r"], 1),
            ("q", vec!["p", "p"], 1),
            ("q", vec!["p", "s"], 1),
            ("q", vec!["s", "p"], 1),
            ("q", vec!["s", "s"], 1),
            ("r", vec!["r", "u"], 1),
            ("r", vec!["u", "r"], 1),
            ("s", vec!["r", "q"], 1),
            ("s", vec!["r", "u"], 1),
            ("s", vec!["u", "r"], 1),
            ("u", vec!["q", "r"], 1),
            ("u", vec!["r", "q"], 1),
        ],
    )
    .expect("valid")
}

/// Total amalgamation of [`directed_example`], on states `(ps), q, r, u`.
pub fn directed_example_amalgamation() -> EdgeTreeAutomaton {
    EdgeTreeAutomaton::from_transitions(
        2,
        ["(ps)", "q", "r", "u"],
        [
            ("(ps)", vec!["q", "r"], 1),
            ("(ps)", vec!["r", "q"], 1),
            ("(ps)", vec!["r", "u"], 2),
            ("(ps)", vec!["u", "r"], 2),
            ("q", vec!["(ps)", "(ps)"], 1),
            ("r", vec!["r", "u"], 1),
            ("r", vec!["u", "r"], 1),
            ("u", vec!["q", "r"], 1),
            ("u", vec!["r", "q"], 1),
        ],
    )
    .expect("valid")
}

/// The six-vertex directed graph obtained by splitting each state of
/// [`directed_example_amalgamation`] by unordered child pair.
pub fn directed_example_graph() -> DirectedSimpleGraph {
    let ps_qr = "(ps)_{q,r}_1";
    let ps_ru1 = "(ps)_{r,u}_1";
    let ps_ru2 = "(ps)_{r,u}_2";
    let q = "q_{(ps)}_1";
    let r = "r_{r,u}_1";
    let u = "u_{q,r}_1";
    DirectedSimpleGraph::from_arcs(
        [ps_qr, ps_ru1, ps_ru2, q, r, u],
        [
            (ps_qr, q),
            (ps_qr, r),
            (q, ps_qr),
            (q, ps_ru1),
            (q, ps_ru2),
            (r, r),
            (r, u),
            (u, q),
            (u, r),
            (ps_ru1, r),
            (ps_ru2, r),
            (ps_ru1, u),
            (ps_ru2, u),
        ],
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HomGraph;

    #[test]
    fn fixtures_are_well_formed() {
        assert!(sequence_example().is_trim());
        assert!(directed_example().is_trim());
        assert_eq!(directed_example().total_mass(), 14);
        assert_eq!(directed_example_amalgamation().total_mass(), 11);
        assert_eq!(directed_example_graph().arc_count(), 13);
        assert_eq!(sequence_example_hom_graph().edge_count(), 9);
        assert_eq!(tree_example_two().total_mass(), 8);
        assert_eq!(
            golden_mean_graph().hom_automaton(2).unwrap(),
            golden_mean_tree()
        );
    }
}
