//! Cube decompositions of automaton rows.
//!
//! In the Hom automaton of a directed graph, the row of `p` is the indicator
//! of `Out(p)^d`. Amalgamation sums such rows, so a row of a total
//! amalgamation with a directed Hom presentation is `sum_c 1[R_c^d]` for
//! nonempty sets `R_c`. Splitting the state into one copy per cube gives the
//! Hom automaton of a directed graph back.
//!
//! A tuple only sees the set of its children, so the row must be constant
//! on tuples with equal support. The number of cubes containing a set `S`
//! is then known for every `|S| <= d`, and the search below looks for a
//! family of sets with exactly those counts, using as few sets as possible.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::automaton::{tuples_over, EdgeTreeAutomaton, Tuple};
use crate::error::{Error, Result};
use crate::graph::DirectedSimpleGraph;

use super::{unique_names, DirectedHomViolation, HomSynthesisWitness, Selector};

/// Nonempty subsets of `mask` with at most `d` elements.
fn small_subsets(mask: u64, d: usize) -> Vec<u64> {
    if d == 0 {
        return Vec::new();
    }
    let bits: Vec<u64> = (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| 1u64 << b)
        .collect();
    let mut out = Vec::new();
    fn rec(bits: &[u64], start: usize, cur: u64, size: usize, d: usize, out: &mut Vec<u64>) {
        for i in start..bits.len() {
            let next = cur | bits[i];
            out.push(next);
            if size + 1 < d {
                rec(bits, i + 1, next, size + 1, d, out);
            }
        }
    }
    rec(&bits, 0, 0, 0, d, &mut out);
    out
}

struct Search {
    d: usize,
    n: usize,
    rem: HashMap<u64, u64>,
    current: Vec<u64>,
    best: Option<Vec<u64>>,
    floor: usize,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn rem(&self, s: u64) -> u64 {
        self.rem.get(&s).copied().unwrap_or(0)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Sets containing `q` and no smaller positive element whose small
    /// subsets all have positive remaining count.
    fn candidates(&mut self, q: usize) -> Result<Vec<u64>> {
        let others: Vec<usize> = (q + 1..self.n).filter(|&x| self.rem(1 << x) > 0).collect();
        let mut out = vec![1u64 << q];
        let mut stack = vec![(1u64 << q, 0usize)];
        while let Some((set, from)) = stack.pop() {
            for (i, &x) in others.iter().enumerate().skip(from) {
                self.tick()?;
                let bit = 1u64 << x;
                let ok = std::iter::once(0)
                    .chain(small_subsets(set, self.d - 1))
                    .all(|t| self.rem(t | bit) > 0);
                if ok {
                    out.push(set | bit);
                    stack.push((set | bit, i + 1));
                }
            }
        }
        out.sort_by_key(|&m| std::cmp::Reverse((m.count_ones(), m)));
        Ok(out)
    }

    fn go(&mut self, limit: (u32, u64), pivot: Option<usize>) -> Result<()> {
        self.tick()?;
        if self.best.as_ref().is_some_and(|b| b.len() == self.floor) {
            return Ok(());
        }
        let Some(q) = (0..self.n).find(|&x| self.rem(1 << x) > 0) else {
            if self.rem.values().all(|&c| c == 0)
                && self
                    .best
                    .as_ref()
                    .is_none_or(|b| self.current.len() < b.len())
            {
                self.best = Some(self.current.clone());
            }
            return Ok(());
        };
        let lower = (0..self.n).map(|x| self.rem(1 << x)).max().unwrap_or(0) as usize;
        if let Some(b) = &self.best {
            if self.current.len() + lower >= b.len() {
                return Ok(());
            }
        }
        // cubes containing the same pivot are taken in nonincreasing order
        let same_pivot = pivot == Some(q);
        for cand in self.candidates(q)? {
            let key = (cand.count_ones(), cand);
            if same_pivot && key > limit {
                continue;
            }
            let subs = small_subsets(cand, self.d);
            for s in &subs {
                *self.rem.get_mut(s).expect("positive count") -= 1;
            }
            self.current.push(cand);
            let result = self.go(key, Some(q));
            self.current.pop();
            for s in &subs {
                *self.rem.get_mut(s).expect("present") += 1;
            }
            result?;
        }
        Ok(())
    }
}

/// Row of `state` as counts per support set, or two tuples with the same
/// support and different multiplicities.
fn support_counts(
    a: &EdgeTreeAutomaton,
    state: usize,
    universe: &[usize],
) -> Result<Result<HashMap<u64, u64>, DirectedHomViolation>> {
    let bit: BTreeMap<usize, u64> = universe
        .iter()
        .enumerate()
        .map(|(i, &q)| (q, 1u64 << i))
        .collect();
    let mut first: HashMap<u64, &Tuple> = HashMap::new();
    let mut counts = HashMap::new();
    for (t, &m) in a.row(state) {
        let s = t.iter().fold(0, |acc, q| acc | bit[q]);
        first.entry(s).or_insert(t);
        counts.insert(s, m);
    }
    for (&s, &t) in &first {
        let members: Vec<usize> = universe
            .iter()
            .filter(|q| bit[q] & s != 0)
            .copied()
            .collect();
        for other in tuples_over(&members, a.arity()) {
            let os = other.iter().fold(0, |acc, q| acc | bit[q]);
            if os == s && a.multiplicity(state, &other) != a.multiplicity(state, t) {
                return Ok(Err(DirectedHomViolation::SupportDependent {
                    state,
                    tuple: t.clone(),
                    other,
                }));
            }
        }
    }
    Ok(Ok(counts))
}

/// Writes the row of `state` as a sum of cube indicators `1[R^d]` with as
/// few cubes as possible. `Ok(None)` when the row has no such form.
pub fn cube_decomposition(
    a: &EdgeTreeAutomaton,
    state: usize,
    budget: u64,
) -> Result<Option<Vec<Vec<usize>>>> {
    match row_cubes(a, state, budget)? {
        Ok(cubes) => Ok(Some(cubes)),
        Err(_) => Ok(None),
    }
}

fn row_cubes(
    a: &EdgeTreeAutomaton,
    state: usize,
    budget: u64,
) -> Result<Result<Vec<Vec<usize>>, DirectedHomViolation>> {
    let universe: Vec<usize> = a
        .row(state)
        .keys()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if universe.len() > 64 {
        return Err(Error::TooLarge(format!(
            "row with {} distinct children",
            universe.len()
        )));
    }
    let rem = match support_counts(a, state, &universe)? {
        Ok(rem) => rem,
        Err(v) => return Ok(Err(v)),
    };
    let n = universe.len();
    let floor = (0..n)
        .map(|x| rem.get(&(1 << x)).copied().unwrap_or(0))
        .max()
        .unwrap_or(0) as usize;
    let mut search = Search {
        d: a.arity(),
        n,
        rem,
        current: Vec::new(),
        best: None,
        floor,
        nodes: 0,
        budget,
    };
    search.go((u32::MAX, u64::MAX), None)?;
    let Some(best) = search.best else {
        return Ok(Err(DirectedHomViolation::NoCubeDecomposition { state }));
    };
    let mut cubes: Vec<Vec<usize>> = best
        .into_iter()
        .map(|m| {
            (0..n)
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| universe[i])
                .collect()
        })
        .collect();
    cubes.sort();
    Ok(Ok(cubes))
}

/// Splits every state of a trim automaton into one copy per cube of its row
/// and returns the directed graph whose Hom automaton is the split
/// automaton, or the first row with no cube decomposition.
pub fn synthesize_cube_hom(
    a: &EdgeTreeAutomaton,
    budget: u64,
) -> Result<Result<HomSynthesisWitness<DirectedSimpleGraph>, DirectedHomViolation>> {
    if !a.is_trim() {
        return Err(Error::NotTrim);
    }
    let mut copy_map = Vec::new();
    for p in 0..a.num_states() {
        let cubes = match row_cubes(a, p, budget)? {
            Ok(c) => c,
            Err(v) => return Ok(Err(v)),
        };
        for (c, successors) in cubes.into_iter().enumerate() {
            copy_map.push((
                p,
                Selector::Cube {
                    successors,
                    copy: c as u64 + 1,
                },
            ));
        }
    }
    let names = unique_names(copy_map.iter().map(|(p, sel)| match sel {
        Selector::Cube { copy, .. } => format!("{}_{}", a.state_name(*p), copy),
        _ => unreachable!(),
    }));
    let mut graph = DirectedSimpleGraph::new(names)?;
    for (v, (_, sel)) in copy_map.iter().enumerate() {
        let Selector::Cube { successors, .. } = sel else {
            unreachable!()
        };
        for (w, (q, _)) in copy_map.iter().enumerate() {
            if successors.binary_search(q).is_ok() {
                graph.add_arc(v, w);
            }
        }
    }
    Ok(Ok(HomSynthesisWitness { graph, copy_map }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HomGraph;

    const BUDGET: u64 = 1_000_000;

    fn row_of(d: usize, n: usize, cubes: &[&[&str]]) -> EdgeTreeAutomaton {
        let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        let mut a = EdgeTreeAutomaton::new(d, names.clone()).unwrap();
        for cube in cubes {
            let idx: Vec<usize> = cube.iter().map(|c| a.state_index(c).unwrap()).collect();
            for t in tuples_over(&idx, d) {
                a.add(0, &t, 1);
            }
        }
        a
    }

    #[test]
    fn small_subset_counts() {
        assert_eq!(small_subsets(0b111, 1).len(), 3);
        assert_eq!(small_subsets(0b111, 2).len(), 6);
        assert_eq!(small_subsets(0b1111, 3).len(), 14);
    }

    #[test]
    fn single_cube_recovered() {
        let a = row_of(2, 3, &[&["s1", "s2"]]);
        assert_eq!(
            cube_decomposition(&a, 0, BUDGET).unwrap(),
            Some(vec![vec![1, 2]])
        );
    }

    #[test]
    fn overlapping_cubes_recovered() {
        let a = row_of(3, 4, &[&["s1", "s2"], &["s2", "s3"], &["s1"]]);
        let cubes = cube_decomposition(&a, 0, BUDGET).unwrap().unwrap();
        assert_eq!(cubes, vec![vec![1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn pair_without_diagonal_has_no_decomposition() {
        let a = EdgeTreeAutomaton::from_transitions(
            2,
            ["p", "q", "r"],
            [("p", vec!["q", "r"], 1), ("p", vec!["r", "q"], 1)],
        )
        .unwrap();
        assert_eq!(cube_decomposition(&a, 0, BUDGET).unwrap(), None);
    }

    #[test]
    fn support_dependence_detected() {
        // (q,q,r) and (q,r,r) share the support {q,r}
        let a = EdgeTreeAutomaton::from_transitions(
            3,
            ["p", "q", "r"],
            [("p", vec!["q", "q", "r"], 1)],
        )
        .unwrap();
        assert!(matches!(
            row_cubes(&a, 0, BUDGET).unwrap(),
            Err(DirectedHomViolation::SupportDependent { .. })
        ));
    }

    #[test]
    fn arity_one_uses_max_multiplicity_cubes() {
        let a =
            EdgeTreeAutomaton::from_matrix(&[vec![1, 3, 2], vec![1, 0, 0], vec![1, 0, 0]]).unwrap();
        let cubes = cube_decomposition(&a, 0, BUDGET).unwrap().unwrap();
        assert_eq!(cubes.len(), 3);
    }

    #[test]
    fn witness_reproduces_split_automaton() {
        // p owns {q} and {q,r}; q and r loop back to p
        let a = EdgeTreeAutomaton::from_transitions(
            2,
            ["p", "q", "r"],
            [
                ("p", vec!["q", "q"], 2),
                ("p", vec!["q", "r"], 1),
                ("p", vec!["r", "q"], 1),
                ("p", vec!["r", "r"], 1),
                ("q", vec!["p", "p"], 1),
                ("r", vec!["p", "p"], 1),
            ],
        )
        .unwrap();
        let w = synthesize_cube_hom(&a, BUDGET).unwrap().unwrap();
        assert_eq!(w.graph.num_vertices(), 4);
        let h = w.graph.hom_automaton(2).unwrap();
        assert!(crate::conjugacy::decide_conjugacy(&h, &a)
            .unwrap()
            .is_conjugate());
    }

    #[test]
    fn budget_is_enforced() {
        let a = row_of(
            2,
            6,
            &[&["s1", "s2", "s3"], &["s3", "s4", "s5"], &["s1", "s5"]],
        );
        assert!(matches!(
            cube_decomposition(&a, 0, 3),
            Err(Error::BudgetExceeded(3))
        ));
    }
}
