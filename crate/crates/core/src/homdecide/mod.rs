//! Deciding conjugacy to Hom shifts and synthesizing witness graphs.
//!
//! An edge tree shift is conjugate to a Hom shift exactly when the total
//! amalgamation of its trimmed automaton is regular ([`check_regular`]).
//!
//! For directed Hom tree-shifts the total amalgamation `K` must have every
//! row equal to a sum of cube indicators `1[R^d]`, one per vertex of the
//! witness graph (see [`cube_decomposition`]). Symmetry of `K` is necessary
//! but not sufficient for `d >= 2`: the automaton with
//! `p → (q,r), (r,q)` and loops `q → (q,q)`, `r → (r,r)` is symmetric and
//! has no directed Hom presentation.

mod cube;
mod regular;
mod symmetric;

use std::collections::HashMap;

pub use cube::{cube_decomposition, synthesize_cube_hom};
pub use regular::{check_regular, synthesize_hom, RegularityCertificate, RegularityViolation};
pub use symmetric::{check_symmetric, synthesize_directed_hom, SymmetryViolation};

use crate::amalgamation::total_amalgamation;
use crate::automaton::{EdgeTreeAutomaton, Tuple};
use crate::conjugacy::default_node_budget;
use crate::error::Result;
use crate::graph::{DirectedSimpleGraph, HomGraph, UndirectedGraph};

/// How a witness vertex refines its source state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    /// Copy `i` of a state of a regular automaton.
    Copy(u64),
    /// Copy of a state for one unordered child multiset.
    Multiset { children: Tuple, copy: u64 },
    /// Copy of a state owning the cube `successors^d`.
    Cube { successors: Vec<usize>, copy: u64 },
}

/// A Hom graph together with the state each of its vertices was split from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSynthesisWitness<G> {
    pub graph: G,
    /// Indexed by vertex: source state and selector.
    pub copy_map: Vec<(usize, Selector)>,
}

/// Answer of [`decide_hom`] or [`decide_directed_hom`].
#[derive(Clone, Debug)]
pub enum HomDecision<G, V> {
    Yes {
        /// Total amalgamation of the trimmed input.
        amalgamation: EdgeTreeAutomaton,
        witness: HomSynthesisWitness<G>,
        /// The input accepts no infinite tree; the witness is the empty graph.
        degenerate: bool,
    },
    No {
        amalgamation: EdgeTreeAutomaton,
        violation: V,
        /// Human-readable form of `violation`.
        reason: String,
    },
}

impl<G, V> HomDecision<G, V> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }

    pub fn amalgamation(&self) -> &EdgeTreeAutomaton {
        match self {
            Self::Yes { amalgamation, .. } | Self::No { amalgamation, .. } => amalgamation,
        }
    }

    pub fn witness(&self) -> Option<&HomSynthesisWitness<G>> {
        match self {
            Self::Yes { witness, .. } => Some(witness),
            Self::No { .. } => None,
        }
    }
}

/// Why an automaton has no directed Hom presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectedHomViolation {
    NotSymmetric(SymmetryViolation),
    /// Two tuples with the same set of children have different multiplicities.
    SupportDependent {
        state: usize,
        tuple: Tuple,
        other: Tuple,
    },
    /// The row of `state` is not a sum of cube indicators.
    NoCubeDecomposition {
        state: usize,
    },
}

impl DirectedHomViolation {
    pub fn describe(&self, a: &EdgeTreeAutomaton) -> String {
        match self {
            Self::NotSymmetric(v) => v.describe(a),
            Self::SupportDependent {
                state,
                tuple,
                other,
            } => format!(
                "M({p}, {}) = {} but M({p}, {}) = {} although both use the same children",
                a.tuple_name(tuple),
                a.multiplicity(*state, tuple),
                a.tuple_name(other),
                a.multiplicity(*state, other),
                p = a.state_name(*state),
            ),
            Self::NoCubeDecomposition { state } => format!(
                "row of {} is not a sum of full products R^{}",
                a.state_name(*state),
                a.arity()
            ),
        }
    }
}

/// Makes names distinct by appending primes to repeats.
pub(crate) fn unique_names(names: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for name in names {
        let mut candidate = name.clone();
        while seen.contains_key(&candidate) {
            candidate.push('\'');
        }
        seen.insert(candidate.clone(), 1);
        out.push(candidate);
    }
    out
}

/// Decides whether the edge tree shift of `a` is conjugate to a Hom shift.
///
/// Trims `a`, computes its total amalgamation `K`, and on success returns the
/// graph synthesized from the regularity certificate of `K`.
pub fn decide_hom(
    a: &EdgeTreeAutomaton,
) -> Result<HomDecision<UndirectedGraph, RegularityViolation>> {
    let k = total_amalgamation(&a.trim());
    if k.is_empty() {
        return Ok(HomDecision::Yes {
            amalgamation: k,
            witness: HomSynthesisWitness {
                graph: UndirectedGraph::new(Vec::<String>::new())?,
                copy_map: Vec::new(),
            },
            degenerate: true,
        });
    }
    match check_regular(&k) {
        Ok(cert) => {
            let witness = synthesize_hom(&k, &cert)?;
            Ok(HomDecision::Yes {
                amalgamation: k,
                witness,
                degenerate: false,
            })
        }
        Err(violation) => {
            let reason = violation.describe(&k);
            Ok(HomDecision::No {
                amalgamation: k,
                violation,
                reason,
            })
        }
    }
}

/// Decides whether the edge tree shift of `a` is conjugate to a directed Hom
/// tree-shift, using the node budget from the environment.
pub fn decide_directed_hom(
    a: &EdgeTreeAutomaton,
) -> Result<HomDecision<DirectedSimpleGraph, DirectedHomViolation>> {
    decide_directed_hom_with_budget(a, default_node_budget())
}

/// As [`decide_directed_hom`] with an explicit search budget for the cube
/// decompositions.
pub fn decide_directed_hom_with_budget(
    a: &EdgeTreeAutomaton,
    budget: u64,
) -> Result<HomDecision<DirectedSimpleGraph, DirectedHomViolation>> {
    let k = total_amalgamation(&a.trim());
    if k.is_empty() {
        return Ok(HomDecision::Yes {
            amalgamation: k,
            witness: HomSynthesisWitness {
                graph: DirectedSimpleGraph::new(Vec::<String>::new())?,
                copy_map: Vec::new(),
            },
            degenerate: true,
        });
    }
    let no = |k: EdgeTreeAutomaton, violation: DirectedHomViolation| {
        let reason = violation.describe(&k);
        Ok(HomDecision::No {
            amalgamation: k,
            violation,
            reason,
        })
    };
    if let Err(v) = check_symmetric(&k) {
        return no(k, DirectedHomViolation::NotSymmetric(v));
    }
    match synthesize_cube_hom(&k, budget)? {
        Ok(witness) => Ok(HomDecision::Yes {
            amalgamation: k,
            witness,
            degenerate: false,
        }),
        Err(v) => no(k, v),
    }
}

/// The witness graph's Hom automaton, for self-consistency checks.
pub fn witness_automaton<G: HomGraph>(
    w: &HomSynthesisWitness<G>,
    arity: usize,
) -> Result<EdgeTreeAutomaton> {
    w.graph.hom_automaton(arity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_names_adds_primes() {
        let names = unique_names(["a", "b", "a", "a"].map(String::from));
        assert_eq!(names, vec!["a", "b", "a'", "a''"]);
    }

    #[test]
    fn sequence_example_is_hom() {
        let a =
            EdgeTreeAutomaton::from_matrix(&[vec![2, 2, 1], vec![1, 1, 2], vec![1, 1, 0]]).unwrap();
        let d = decide_hom(&a).unwrap();
        let w = d.witness().unwrap();
        assert_eq!(w.graph.num_vertices(), 4);
        assert_eq!(w.graph.edge_count(), 9);
    }

    #[test]
    fn split_figure_is_not_hom() {
        // its total amalgamation [[1,2],[1,0]] has unequal entries in row 1
        let a =
            EdgeTreeAutomaton::from_matrix(&[vec![1, 1, 0], vec![0, 0, 2], vec![1, 1, 0]]).unwrap();
        let d = decide_hom(&a).unwrap();
        assert!(!d.is_yes());
        assert_eq!(
            d.amalgamation().to_matrix().unwrap(),
            vec![vec![1, 2], vec![1, 0]]
        );
    }

    #[test]
    fn empty_shift_is_degenerate_yes() {
        let a = EdgeTreeAutomaton::new(2, ["p"]).unwrap();
        match decide_hom(&a).unwrap() {
            HomDecision::Yes {
                degenerate,
                witness,
                ..
            } => {
                assert!(degenerate);
                assert_eq!(witness.graph.num_vertices(), 0);
            }
            HomDecision::No { .. } => panic!("empty shift answered NO"),
        }
        assert!(decide_directed_hom(&a).unwrap().is_yes());
    }

    #[test]
    fn symmetric_but_not_directed_hom() {
        let a = EdgeTreeAutomaton::from_transitions(
            2,
            ["p", "q", "r"],
            [
                ("p", vec!["q", "r"], 1),
                ("p", vec!["r", "q"], 1),
                ("q", vec!["q", "q"], 1),
                ("r", vec!["r", "r"], 1),
            ],
        )
        .unwrap();
        assert!(check_symmetric(&total_amalgamation(&a)).is_ok());
        let d = decide_directed_hom(&a).unwrap();
        assert!(!d.is_yes());
        // the multiset split graph defines a shift that is not conjugate
        let w = synthesize_directed_hom(&a).unwrap();
        let h = w.graph.hom_automaton(2).unwrap();
        assert!(!crate::conjugacy::decide_conjugacy(&h, &a)
            .unwrap()
            .is_conjugate());
    }

    #[test]
    fn arity_one_is_always_directed_hom() {
        let a = EdgeTreeAutomaton::from_matrix(&[vec![1, 2], vec![1, 0]]).unwrap();
        let d = decide_directed_hom(&a).unwrap();
        let w = d.witness().unwrap();
        let back = total_amalgamation(&w.graph.hom_automaton(1).unwrap());
        assert_eq!(back.num_states(), 2);
    }
}
