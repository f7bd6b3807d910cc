use std::collections::{BTreeMap, BTreeSet};

use crate::automaton::{EdgeTreeAutomaton, Tuple};
use crate::error::{Error, Result};
use crate::graph::DirectedSimpleGraph;

use super::{unique_names, HomSynthesisWitness, Selector};

/// A child tuple and a permutation of it with different multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryViolation {
    pub state: usize,
    pub tuple: Tuple,
    pub permuted: Tuple,
    pub multiplicity: u64,
    pub permuted_multiplicity: u64,
}

impl SymmetryViolation {
    pub fn describe(&self, a: &EdgeTreeAutomaton) -> String {
        format!(
            "M({}, {}) = {} but M({}, {}) = {}",
            a.state_name(self.state),
            a.tuple_name(&self.tuple),
            self.multiplicity,
            a.state_name(self.state),
            a.tuple_name(&self.permuted),
            self.permuted_multiplicity
        )
    }
}

/// Distinct rearrangements of `t`, in lexicographic order.
pub(crate) fn permutations(t: &[usize]) -> Vec<Tuple> {
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next lexicographic permutation until it wraps
    while let Some(i) = (0..sorted.len().saturating_sub(1))
        .rev()
        .find(|&i| sorted[i] < sorted[i + 1])
    {
        let j = (i + 1..sorted.len())
            .rev()
            .find(|&j| sorted[j] > sorted[i])
            .unwrap();
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// Checks that every multiplicity is invariant under permuting the children.
/// Always passes at arity 1.
pub fn check_symmetric(a: &EdgeTreeAutomaton) -> Result<(), SymmetryViolation> {
    for (p, t, m) in a.transitions() {
        for permuted in permutations(t) {
            let other = a.multiplicity(p, &permuted);
            if other != m {
                return Err(SymmetryViolation {
                    state: p,
                    tuple: t.clone(),
                    permuted,
                    multiplicity: m,
                    permuted_multiplicity: other,
                });
            }
        }
    }
    Ok(())
}

/// Splits every state of a symmetric automaton by unordered child multiset.
///
/// State `p` becomes one vertex `p_{χ,i}` for each multiset `χ` of children
/// reachable from `p` and each `i` up to the multiplicity of that multiset,
/// and `p_{χ,i}` has an arc to every vertex built from a state of `χ`.
///
/// The Hom automaton of this graph lets the children of `p_{χ,i}` range
/// over all of `χ` independently, so its shift matches the input only when
/// each multiset `χ` has a single element. [`super::decide_directed_hom`]
/// builds its witnesses with [`super::cube_decomposition`] instead.
pub fn synthesize_directed_hom(
    a: &EdgeTreeAutomaton,
) -> Result<HomSynthesisWitness<DirectedSimpleGraph>> {
    if !a.is_trim() {
        return Err(Error::NotTrim);
    }
    if let Err(v) = check_symmetric(a) {
        return Err(Error::NotSymmetric(v.describe(a)));
    }
    let mut copy_map = Vec::new();
    for p in 0..a.num_states() {
        let mut by_multiset: BTreeMap<Tuple, u64> = BTreeMap::new();
        for (t, &m) in a.row(p) {
            let mut chi = t.clone();
            chi.sort_unstable();
            by_multiset.insert(chi, m);
        }
        for (chi, m) in by_multiset {
            for copy in 1..=m {
                copy_map.push((
                    p,
                    Selector::Multiset {
                        children: chi.clone(),
                        copy,
                    },
                ));
            }
        }
    }
    let names = unique_names(copy_map.iter().map(|(p, sel)| match sel {
        Selector::Multiset { children, copy } => {
            let chi: Vec<&str> = children.iter().map(|&q| a.state_name(q)).collect();
            format!("{}_{{{}}}_{}", a.state_name(*p), chi.join(","), copy)
        }
        _ => unreachable!(),
    }));
    let vertices_of = |q: usize| -> Vec<usize> {
        copy_map
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| *s == q)
            .map(|(v, _)| v)
            .collect()
    };
    let mut graph = DirectedSimpleGraph::new(names)?;
    for (v, (_, sel)) in copy_map.iter().enumerate() {
        let Selector::Multiset { children, .. } = sel else {
            unreachable!()
        };
        let targets: BTreeSet<usize> = children.iter().copied().collect();
        for q in targets {
            for w in vertices_of(q) {
                graph.add_arc(v, w);
            }
        }
    }
    Ok(HomSynthesisWitness { graph, copy_map })
}
