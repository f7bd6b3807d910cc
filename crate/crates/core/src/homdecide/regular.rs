use std::collections::BTreeSet;

use crate::automaton::{tuples_over, EdgeTreeAutomaton, Tuple};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

use super::{unique_names, HomSynthesisWitness, Selector};

/// Successor sets and levels showing that an automaton is regular.
///
/// For every state `p`: `M(p, t) = level[p]` when every child of `t` lies in
/// `successors[p]` and `0` otherwise, and `M(q, (p, ..., p)) > 0` for every
/// `q` in `successors[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub successors: Vec<Vec<usize>>,
    pub level: Vec<u64>,
}

/// First regularity condition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityViolation {
    /// All children of `tuple` occur below `state`, yet `M(state, tuple) = 0`.
    MissingProduct { state: usize, tuple: Tuple },
    /// Two positive entries of the row of `state` differ.
    UnequalLevel {
        state: usize,
        tuple: Tuple,
        expected: u64,
        found: u64,
    },
    /// `successor` occurs below `state`, but `M(successor, (state, ..., state)) = 0`.
    MissingBackEdge { state: usize, successor: usize },
}

impl RegularityViolation {
    pub fn describe(&self, a: &EdgeTreeAutomaton) -> String {
        match self {
            Self::MissingProduct { state, tuple } => format!(
                "M({}, {}) = 0 although every child occurs below {}",
                a.state_name(*state),
                a.tuple_name(tuple),
                a.state_name(*state)
            ),
            Self::UnequalLevel {
                state,
                tuple,
                expected,
                found,
            } => format!(
                "row of {} is not constant: M({}, {}) = {} but another entry is {}",
                a.state_name(*state),
                a.state_name(*state),
                a.tuple_name(tuple),
                found,
                expected
            ),
            Self::MissingBackEdge { state, successor } => {
                let back = vec![*state; a.arity()];
                format!(
                    "{} occurs below {} but M({}, {}) = 0",
                    a.state_name(*successor),
                    a.state_name(*state),
                    a.state_name(*successor),
                    a.tuple_name(&back)
                )
            }
        }
    }
}

/// Checks regularity state by state: product support, then constant level,
/// then back edges.
pub fn check_regular(a: &EdgeTreeAutomaton) -> Result<RegularityCertificate, RegularityViolation> {
    let d = a.arity();
    let n = a.num_states();
    let mut successors = Vec::with_capacity(n);
    let mut level = Vec::with_capacity(n);
    for p in 0..n {
        let support: Vec<usize> = a
            .row(p)
            .keys()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if let Some(tuple) = tuples_over(&support, d)
            .into_iter()
            .find(|t| a.multiplicity(p, t) == 0)
        {
            return Err(RegularityViolation::MissingProduct { state: p, tuple });
        }
        let mut values = a.row(p).iter();
        let n_p = values.next().map_or(1, |(_, &m)| m);
        if let Some((t, &m)) = values.find(|(_, &m)| m != n_p) {
            return Err(RegularityViolation::UnequalLevel {
                state: p,
                tuple: t.clone(),
                expected: n_p,
                found: m,
            });
        }
        let back = vec![p; d];
        if let Some(&q) = support.iter().find(|&&q| a.multiplicity(q, &back) == 0) {
            return Err(RegularityViolation::MissingBackEdge {
                state: p,
                successor: q,
            });
        }
        successors.push(support);
        level.push(n_p);
    }
    Ok(RegularityCertificate { successors, level })
}

/// Builds the undirected graph whose Hom shift is conjugate to the edge
/// tree shift of a regular automaton.
///
/// Each state `p` becomes `level[p]` vertices `p_1, ..., p_n`, and `p_i` is
/// adjacent to every copy of every successor of `p`.
pub fn synthesize_hom(
    a: &EdgeTreeAutomaton,
    cert: &RegularityCertificate,
) -> Result<HomSynthesisWitness<UndirectedGraph>> {
    match check_regular(a) {
        Ok(ref expected) if expected == cert => {}
        Ok(_) => {
            return Err(Error::InvalidCertificate(
                "certificate does not match the automaton".into(),
            ))
        }
        Err(v) => return Err(Error::InvalidCertificate(v.describe(a))),
    }
    let mut copy_map = Vec::new();
    let mut first_copy = Vec::with_capacity(a.num_states());
    for p in 0..a.num_states() {
        first_copy.push(copy_map.len());
        for i in 1..=cert.level[p] {
            copy_map.push((p, Selector::Copy(i)));
        }
    }
    let names = unique_names(copy_map.iter().map(|(p, sel)| match sel {
        Selector::Copy(i) => format!("{}_{}", a.state_name(*p), i),
        _ => unreachable!(),
    }));
    let mut graph = UndirectedGraph::new(names)?;
    for p in 0..a.num_states() {
        for &q in &cert.successors[p] {
            for i in 0..cert.level[p] as usize {
                for j in 0..cert.level[q] as usize {
                    graph.add_edge(first_copy[p] + i, first_copy[q] + j);
                }
            }
        }
    }
    Ok(HomSynthesisWitness { graph, copy_map })
}
