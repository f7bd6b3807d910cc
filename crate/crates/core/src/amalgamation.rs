//! Out-splitting and amalgamation of edge tree automata.
//!
//! Two states can be merged when they are interchangeable as children: for
//! every child position and every context (parent state, other children) the
//! multiplicities agree. Merging sums the rows of the merged states and keeps
//! a single copy of their (identical) columns. Out-splitting is the inverse
//! move. Repeating merges until none applies gives the total amalgamation,
//! which is unique up to renaming of states and is a complete conjugacy
//! invariant for trim automata.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{product, EdgeTreeAutomaton, Tuple};
use crate::error::{Error, Result};

/// A partition of the states into classes that may be merged together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergePartition {
    classes: Vec<Vec<usize>>,
}

impl MergePartition {
    /// Partition from explicit classes. Coverage is checked against an
    /// automaton by [`general_amalgamation`].
    pub fn new(classes: Vec<Vec<usize>>) -> Self {
        Self { classes }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            classes: (0..n).map(|p| vec![p]).collect(),
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// No class has more than one state.
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    fn class_map(&self, n: usize) -> Result<Vec<usize>> {
        let mut class_of = vec![usize::MAX; n];
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            for &p in class {
                if p >= n {
                    return Err(Error::InvalidPartition(format!(
                        "state index {p} out of range"
                    )));
                }
                if class_of[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "state index {p} listed twice"
                    )));
                }
                class_of[p] = i;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "state index {p} not covered"
            )));
        }
        Ok(class_of)
    }
}

/// Positional columns of `q`: for each child position, the sorted list of
/// `(parent, tuple with that position blanked, count)` over positive entries.
type ColumnSignature = Vec<Vec<(usize, Tuple, u64)>>;

const BLANK: usize = usize::MAX;

fn column_signatures(a: &EdgeTreeAutomaton) -> Vec<ColumnSignature> {
    let d = a.arity();
    let mut sigs: Vec<ColumnSignature> = vec![vec![Vec::new(); d]; a.num_states()];
    for (p, t, m) in a.transitions() {
        for (pos, &q) in t.iter().enumerate() {
            let mut context = t.clone();
            context[pos] = BLANK;
            sigs[q][pos].push((p, context, m));
        }
    }
    for sig in &mut sigs {
        for column in sig.iter_mut() {
            column.sort_unstable();
        }
    }
    sigs
}

/// The coarsest partition whose classes consist of states with identical
/// positional columns. Classes are ordered by their first state.
pub fn coarsest_merge_partition(a: &EdgeTreeAutomaton) -> MergePartition {
    let sigs = column_signatures(a);
    let mut index: HashMap<&ColumnSignature, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (q, sig) in sigs.iter().enumerate() {
        let next = classes.len();
        let c = *index.entry(sig).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(q);
    }
    MergePartition { classes }
}

fn merged_name(a: &EdgeTreeAutomaton, class: &[usize]) -> String {
    if class.len() == 1 {
        return a.state_name(class[0]).to_string();
    }
    let parts: Vec<&str> = class.iter().map(|&p| a.state_name(p)).collect();
    format!("({})", parts.join("+"))
}

/// Makes every name distinct by priming later duplicates.
fn dedupe_names(names: Vec<String>) -> Vec<String> {
    let mut seen: HashSet<String> = HashSet::new();
    names
        .into_iter()
        .map(|mut n| {
            while !seen.insert(n.clone()) {
                n.push('\'');
            }
            n
        })
        .collect()
}

/// Merges every class of `partition` into one state.
///
/// The row of a merged state is the sum of the rows of its members; columns
/// of merged states are identical, so one representative column is kept.
pub fn general_amalgamation(
    a: &EdgeTreeAutomaton,
    partition: &MergePartition,
) -> Result<EdgeTreeAutomaton> {
    let class_of = partition.class_map(a.num_states())?;
    let sigs = column_signatures(a);
    for class in partition.classes() {
        let first = class[0];
        if let Some(&other) = class.iter().find(|&&q| sigs[q] != sigs[first]) {
            return Err(Error::InvalidPartition(format!(
                "columns of `{}` and `{}` differ",
                a.state_name(first),
                a.state_name(other)
            )));
        }
    }
    let reps: Vec<usize> = partition.classes().iter().map(|c| c[0]).collect();
    let is_rep: Vec<bool> = (0..a.num_states())
        .map(|q| reps[class_of[q]] == q)
        .collect();
    let rows = partition
        .classes()
        .iter()
        .map(|class| {
            let mut row: BTreeMap<Tuple, u64> = BTreeMap::new();
            for &p in class {
                for (t, &m) in a.row(p) {
                    if t.iter().all(|&q| is_rep[q]) {
                        let key: Tuple = t.iter().map(|&q| class_of[q]).collect();
                        *row.entry(key).or_insert(0) += m;
                    }
                }
            }
            row
        })
        .collect();
    let names = dedupe_names(
        partition
            .classes()
            .iter()
            .map(|c| merged_name(a, c))
            .collect(),
    );
    Ok(EdgeTreeAutomaton::from_parts(a.arity(), names, rows))
}

/// Result of running amalgamation rounds.
#[derive(Clone, Debug)]
pub struct AmalgamationTrace {
    pub result: EdgeTreeAutomaton,
    /// The partition applied in each round, against that round's input.
    pub rounds: Vec<MergePartition>,
}

/// Applies at most `max_rounds` rounds of coarsest general amalgamation,
/// stopping early at the fixpoint.
pub fn amalgamate_rounds(a: &EdgeTreeAutomaton, max_rounds: usize) -> AmalgamationTrace {
    let mut current = a.clone();
    let mut rounds = Vec::new();
    // every productive round removes at least one state
    let guard = a.num_states().saturating_sub(1);
    while rounds.len() < max_rounds {
        let partition = coarsest_merge_partition(&current);
        if partition.is_trivial() {
            break;
        }
        assert!(rounds.len() < guard, "amalgamation failed to terminate");
        current = general_amalgamation(&current, &partition)
            .expect("coarsest partition satisfies the merge condition");
        rounds.push(partition);
    }
    AmalgamationTrace {
        result: current,
        rounds,
    }
}

/// Merges states until no merge applies.
pub fn total_amalgamation(a: &EdgeTreeAutomaton) -> EdgeTreeAutomaton {
    amalgamate_rounds(a, usize::MAX).result
}

/// How to split one state: its outgoing transitions distributed into parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub state: usize,
    pub parts: Vec<BTreeMap<Tuple, u64>>,
}

impl SplitSpec {
    fn validate(&self, a: &EdgeTreeAutomaton) -> Result<()> {
        if self.state >= a.num_states() {
            return Err(Error::InvalidSplit(format!(
                "state index {} out of range",
                self.state
            )));
        }
        if self.parts.len() < 2 {
            return Err(Error::InvalidSplit(
                "at least two parts are required".into(),
            ));
        }
        let mut total: BTreeMap<Tuple, u64> = BTreeMap::new();
        for part in &self.parts {
            if part.values().all(|&m| m == 0) {
                return Err(Error::InvalidSplit("empty part".into()));
            }
            for (t, &m) in part {
                if m > 0 {
                    *total.entry(t.clone()).or_insert(0) += m;
                }
            }
        }
        if &total != a.row(self.state) {
            return Err(Error::InvalidSplit(format!(
                "parts do not cover the transitions of `{}` exactly once",
                a.state_name(self.state)
            )));
        }
        Ok(())
    }
}

/// Splits `spec.state` into one state per part.
///
/// Each new state keeps the transitions of its part; every transition
/// anywhere that had the split state as a child is fanned out over all the
/// new copies, at each child position.
pub fn out_split(a: &EdgeTreeAutomaton, spec: &SplitSpec) -> Result<EdgeTreeAutomaton> {
    spec.validate(a)?;
    let s = spec.state;
    let m = spec.parts.len();
    let n = a.num_states();
    // copies of s occupy indices s..s+m, later states shift by m - 1
    let images: Vec<Vec<usize>> = (0..n)
        .map(|q| match q.cmp(&s) {
            std::cmp::Ordering::Less => vec![q],
            std::cmp::Ordering::Equal => (s..s + m).collect(),
            std::cmp::Ordering::Greater => vec![q + m - 1],
        })
        .collect();
    let fan_out = |row: &BTreeMap<Tuple, u64>| -> BTreeMap<Tuple, u64> {
        let mut out = BTreeMap::new();
        for (t, &c) in row {
            if c == 0 {
                continue;
            }
            let choices: Vec<Vec<usize>> = t.iter().map(|&q| images[q].clone()).collect();
            for lifted in product(&choices) {
                *out.entry(lifted).or_insert(0) += c;
            }
        }
        out
    };
    let mut names = Vec::with_capacity(n + m - 1);
    let mut rows = Vec::with_capacity(n + m - 1);
    for q in 0..n {
        if q == s {
            for (i, part) in spec.parts.iter().enumerate() {
                names.push(format!("{}_{}", a.state_name(s), i + 1));
                rows.push(fan_out(part));
            }
        } else {
            names.push(a.state_name(q).to_string());
            rows.push(fan_out(a.row(q)));
        }
    }
    Ok(EdgeTreeAutomaton::from_parts(
        a.arity(),
        dedupe_names(names),
        rows,
    ))
}

/// Picks a random state with at least two outgoing transitions and a random
/// split of them into two or three nonempty parts. `None` when every state
/// has at most one outgoing transition.
pub fn random_split_spec<R: Rng>(a: &EdgeTreeAutomaton, rng: &mut R) -> Option<SplitSpec> {
    let candidates: Vec<usize> = (0..a.num_states())
        .filter(|&p| a.out_mass(p) >= 2)
        .collect();
    let &state = candidates.choose(rng)?;
    let mut units: Vec<&Tuple> = a
        .row(state)
        .iter()
        .flat_map(|(t, &c)| std::iter::repeat_n(t, c as usize))
        .collect();
    let max_parts = units.len().min(3);
    let parts_count = rng.gen_range(2..=max_parts);
    units.shuffle(rng);
    let mut parts = vec![BTreeMap::new(); parts_count];
    for (i, t) in units.into_iter().enumerate() {
        let k = if i < parts_count {
            i
        } else {
            rng.gen_range(0..parts_count)
        };
        *parts[k].entry(t.clone()).or_insert(0) += 1;
    }
    Some(SplitSpec { state, parts })
}

/// Applies `rounds` random out-splittings, seeded with ChaCha8 from `seed`.
/// Rounds where no state can be split leave the automaton unchanged.
pub fn random_split_walk(a: &EdgeTreeAutomaton, rounds: usize, seed: u64) -> EdgeTreeAutomaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = a.clone();
    for _ in 0..rounds {
        if let Some(spec) = random_split_spec(&current, &mut rng) {
            current = out_split(&current, &spec).expect("generated split is valid");
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sequence_example() -> EdgeTreeAutomaton {
        EdgeTreeAutomaton::from_matrix(&[vec![2, 2, 1], vec![1, 1, 2], vec![1, 1, 0]]).unwrap()
    }

    fn tree_example_one() -> EdgeTreeAutomaton {
        let mut t = Vec::new();
        for p in ["q1", "q3"] {
            for c in [["q1", "q1"], ["q1", "q2"], ["q2", "q1"], ["q2", "q2"]] {
                t.push((p, c.to_vec(), 1));
            }
        }
        t.push(("q2", vec!["q3", "q3"], 1));
        EdgeTreeAutomaton::from_transitions(2, ["q1", "q2", "q3"], t).unwrap()
    }

    fn tree_example_two() -> EdgeTreeAutomaton {
        let mut t = Vec::new();
        for p in ["q1", "q2"] {
            for c in [["q1", "q1"], ["q1", "q2"], ["q2", "q1"], ["q2", "q2"]] {
                t.push((p, c.to_vec(), 1));
            }
        }
        EdgeTreeAutomaton::from_transitions(2, ["q1", "q2"], t).unwrap()
    }

    #[test]
    fn sequence_example_partition() {
        let p = coarsest_merge_partition(&sequence_example());
        assert_eq!(p.classes(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn sequence_example_amalgamation() {
        let a = sequence_example();
        let merged = general_amalgamation(&a, &coarsest_merge_partition(&a)).unwrap();
        assert_eq!(merged.to_matrix().unwrap(), vec![vec![3, 3], vec![1, 0]]);
        assert_eq!(merged.states(), &["(1+2)".to_string(), "3".to_string()]);
        let trace = amalgamate_rounds(&a, usize::MAX);
        assert_eq!(trace.rounds.len(), 1);
        assert_eq!(trace.result, merged);
    }

    #[test]
    fn tree_example_one_partition_and_merge() {
        let a = tree_example_one();
        let p = coarsest_merge_partition(&a);
        assert_eq!(p.classes(), &[vec![0, 1], vec![2]]);
        let k = general_amalgamation(&a, &p).unwrap();
        assert_eq!(k.multiplicity(0, &[0, 0]), 1);
        assert_eq!(k.multiplicity(0, &[1, 1]), 1);
        assert_eq!(k.multiplicity(1, &[0, 0]), 1);
        assert_eq!(k.transitions().count(), 3);
        assert_eq!(total_amalgamation(&a), k);
    }

    #[test]
    fn tree_example_two_collapses() {
        let k = total_amalgamation(&tree_example_two());
        assert_eq!(k.num_states(), 1);
        assert_eq!(k.multiplicity(0, &[0, 0]), 2);
        assert_eq!(k.transitions().count(), 1);
    }

    #[test]
    fn distinct_columns_are_a_fixpoint() {
        let a = EdgeTreeAutomaton::from_matrix(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(coarsest_merge_partition(&a).is_trivial());
        assert_eq!(total_amalgamation(&a), a);
    }

    #[test]
    fn invalid_partition_rejected() {
        let a = sequence_example();
        let bad = MergePartition::new(vec![vec![0, 2], vec![1]]);
        assert!(matches!(
            general_amalgamation(&a, &bad),
            Err(Error::InvalidPartition(_))
        ));
        let uncovered = MergePartition::new(vec![vec![0, 1]]);
        assert!(general_amalgamation(&a, &uncovered).is_err());
    }

    #[test]
    fn figure_out_splitting() {
        let g = EdgeTreeAutomaton::from_matrix(&[vec![1, 2], vec![1, 0]]).unwrap();
        let spec = SplitSpec {
            state: 0,
            parts: vec![
                [(vec![0], 1)].into_iter().collect(),
                [(vec![1], 2)].into_iter().collect(),
            ],
        };
        let split = out_split(&g, &spec).unwrap();
        assert_eq!(
            split.states(),
            &["1_1".to_string(), "1_2".to_string(), "2".to_string()]
        );
        assert_eq!(
            split.to_matrix().unwrap(),
            vec![vec![1, 1, 0], vec![0, 0, 2], vec![1, 1, 0]]
        );
        assert_eq!(
            total_amalgamation(&split).to_matrix().unwrap(),
            g.to_matrix().unwrap()
        );
    }

    #[test]
    fn split_requires_two_nonempty_parts() {
        let g = EdgeTreeAutomaton::from_matrix(&[vec![1, 2], vec![1, 0]]).unwrap();
        let whole = SplitSpec {
            state: 0,
            parts: vec![g.row(0).clone()],
        };
        assert!(matches!(out_split(&g, &whole), Err(Error::InvalidSplit(_))));
        let empty_part = SplitSpec {
            state: 0,
            parts: vec![g.row(0).clone(), BTreeMap::new()],
        };
        assert!(out_split(&g, &empty_part).is_err());
        let wrong_mass = SplitSpec {
            state: 0,
            parts: vec![
                [(vec![0], 1)].into_iter().collect(),
                [(vec![1], 1)].into_iter().collect(),
            ],
        };
        assert!(out_split(&g, &wrong_mass).is_err());
    }

    #[test]
    fn split_of_binary_automaton_fans_out_children() {
        let a = tree_example_two();
        let spec = SplitSpec {
            state: 1,
            parts: vec![
                [(vec![0, 0], 1), (vec![0, 1], 1)].into_iter().collect(),
                [(vec![1, 0], 1), (vec![1, 1], 1)].into_iter().collect(),
            ],
        };
        let split = out_split(&a, &spec).unwrap();
        assert_eq!(split.num_states(), 3);
        // q1 -> (q1, q2) becomes q1 -> (q1, q2_1) and q1 -> (q1, q2_2)
        assert_eq!(split.multiplicity(0, &[0, 1]), 1);
        assert_eq!(split.multiplicity(0, &[0, 2]), 1);
        assert_eq!(split.out_mass(0), 9);
        assert_eq!(split.out_mass(1), 3);
        assert_eq!(split.out_mass(2), 6);
        let fixpoint = total_amalgamation(&split);
        assert_eq!(fixpoint.num_states(), 1);
        assert_eq!(fixpoint.multiplicity(0, &[0, 0]), 2);
    }

    #[test]
    fn split_walk_zero_rounds_is_identity() {
        let a = sequence_example();
        assert_eq!(random_split_walk(&a, 0, 42), a);
    }

    #[test]
    fn split_walk_is_deterministic() {
        let a = tree_example_one();
        assert_eq!(random_split_walk(&a, 3, 42), random_split_walk(&a, 3, 42));
        assert!(random_split_walk(&a, 3, 42).num_states() >= a.num_states() + 3);
    }

    #[test]
    fn golden_mean_single_split_amalgamates_back() {
        let a = EdgeTreeAutomaton::from_matrix(&[vec![1, 1], vec![1, 0]]).unwrap();
        let split = random_split_walk(&a, 1, 5);
        // only state 1 has two outgoing edges; the two parts may come in either order
        let m = split.to_matrix().unwrap();
        let loop_first = vec![vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 0]];
        let edge_first = vec![vec![0, 0, 1], vec![1, 1, 0], vec![1, 1, 0]];
        assert!(m == loop_first || m == edge_first, "{m:?}");
        assert_eq!(
            total_amalgamation(&split).to_matrix().unwrap(),
            a.to_matrix().unwrap()
        );
    }

    #[test]
    fn merged_names_are_unique() {
        let names = dedupe_names(vec!["(a+b)".into(), "(a+b)".into(), "c".into()]);
        assert_eq!(names, vec!["(a+b)", "(a+b)'", "c"]);
    }
}
