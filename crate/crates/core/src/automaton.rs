//! Edge tree automata.
//!
//! An edge tree automaton of arity `d` is a finite set of states together
//! with a multiplicity for every pair `(p, (q_1, ..., q_d))`: the number of
//! parallel transitions from `p` to that child tuple. All transitions carry
//! distinct labels, so the multiplicities describe the automaton completely
//! up to a renaming of labels. Arity 1 is a directed multigraph and the
//! accepted trees are right-infinite paths.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Child tuple of state indices, one entry per child position.
pub type Tuple = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTreeAutomaton {
    arity: usize,
    states: Vec<String>,
    rows: Vec<BTreeMap<Tuple, u64>>,
}

impl EdgeTreeAutomaton {
    /// Automaton over the given states with every multiplicity zero.
    pub fn new<S: Into<String>>(arity: usize, states: impl IntoIterator<Item = S>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity);
        }
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if seen.insert(s.as_str(), i).is_some() {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let rows = vec![BTreeMap::new(); states.len()];
        Ok(Self {
            arity,
            states,
            rows,
        })
    }

    /// The automaton with no states. It accepts the empty shift.
    pub fn empty(arity: usize) -> Self {
        Self {
            arity: arity.max(1),
            states: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Builds an automaton from named transitions `(from, children, count)`.
    /// Repeated `(from, children)` pairs are rejected.
    pub fn from_transitions<'a, S, I>(arity: usize, states: S, transitions: I) -> Result<Self>
    where
        S: IntoIterator,
        S::Item: Into<String>,
        I: IntoIterator<Item = (&'a str, Vec<&'a str>, u64)>,
    {
        let mut a = Self::new(arity, states)?;
        for (from, children, count) in transitions {
            let p = a.index_of(from)?;
            let t = children
                .iter()
                .map(|c| a.index_of(c))
                .collect::<Result<Tuple>>()?;
            if t.len() != arity {
                return Err(Error::TupleLength {
                    expected: arity,
                    found: t.len(),
                });
            }
            if count == 0 {
                return Err(Error::ZeroCount);
            }
            if a.rows[p].contains_key(&t) {
                return Err(Error::DuplicateTransition {
                    from: from.to_string(),
                    children: a.tuple_name(&t),
                });
            }
            a.rows[p].insert(t, count);
        }
        Ok(a)
    }

    /// Arity-1 automaton whose adjacency matrix is `matrix`. States are named
    /// `1`, `2`, ... in row order.
    pub fn from_matrix(matrix: &[Vec<u64>]) -> Result<Self> {
        let n = matrix.len();
        let mut a = Self::new(1, (1..=n).map(|i| i.to_string()))?;
        for (p, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::TupleLength {
                    expected: n,
                    found: row.len(),
                });
            }
            for (q, &m) in row.iter().enumerate() {
                a.set(p, &[q], m);
            }
        }
        Ok(a)
    }

    pub(crate) fn from_parts(
        arity: usize,
        states: Vec<String>,
        rows: Vec<BTreeMap<Tuple, u64>>,
    ) -> Self {
        debug_assert_eq!(states.len(), rows.len());
        Self {
            arity,
            states,
            rows,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, p: usize) -> &str {
        &self.states[p]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.state_index(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// Number of transitions from `p` to `children`.
    pub fn multiplicity(&self, p: usize, children: &[usize]) -> u64 {
        self.rows[p].get(children).copied().unwrap_or(0)
    }

    /// Multiplicity looked up by state names. Unknown names read as zero.
    pub fn multiplicity_by_name(&self, p: &str, children: &[&str]) -> u64 {
        let Some(p) = self.state_index(p) else {
            return 0;
        };
        let t: Option<Tuple> = children.iter().map(|c| self.state_index(c)).collect();
        t.map_or(0, |t| self.multiplicity(p, &t))
    }

    /// Sets a multiplicity; zero removes the entry.
    pub fn set(&mut self, p: usize, children: &[usize], count: u64) {
        assert_eq!(children.len(), self.arity, "tuple length must equal arity");
        if count == 0 {
            self.rows[p].remove(children);
        } else {
            self.rows[p].insert(children.to_vec(), count);
        }
    }

    pub fn add(&mut self, p: usize, children: &[usize], count: u64) {
        let m = self.multiplicity(p, children);
        self.set(p, children, m + count);
    }

    /// Positive entries of the row of `p`, in lexicographic tuple order.
    pub fn row(&self, p: usize) -> &BTreeMap<Tuple, u64> {
        &self.rows[p]
    }

    /// All positive entries `(p, children, count)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Tuple, u64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |(t, &m)| (p, t, m)))
    }

    /// Total number of transitions going out of `p`.
    pub fn out_mass(&self, p: usize) -> u64 {
        self.rows[p].values().sum()
    }

    pub fn total_mass(&self) -> u64 {
        (0..self.num_states()).map(|p| self.out_mass(p)).sum()
    }

    /// Every state has at least one outgoing transition.
    pub fn is_trim(&self) -> bool {
        self.rows.iter().all(|r| !r.is_empty())
    }

    /// Removes states that cannot start an infinite computation.
    ///
    /// States without outgoing transitions are deleted together with every
    /// transition pointing at them, until nothing changes. The survivors keep
    /// their relative order. The result is trim, or empty when the shift is.
    pub fn trim(&self) -> Self {
        let n = self.num_states();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for p in 0..n {
                if alive[p] && !self.rows[p].keys().any(|t| t.iter().all(|&q| alive[q])) {
                    alive[p] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.restrict(&alive)
    }

    /// Keeps the states flagged in `keep` and drops transitions touching the rest.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Self {
        let mut new_index = vec![usize::MAX; self.num_states()];
        let mut states = Vec::new();
        for (p, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            new_index[p] = states.len();
            states.push(self.states[p].clone());
        }
        let rows = (0..self.num_states())
            .filter(|&p| keep[p])
            .map(|p| {
                self.rows[p]
                    .iter()
                    .filter(|(t, _)| t.iter().all(|&q| keep[q]))
                    .map(|(t, &m)| (t.iter().map(|&q| new_index[q]).collect(), m))
                    .collect()
            })
            .collect();
        Self::from_parts(self.arity, states, rows)
    }

    /// Renumbers states: old state `p` becomes state `perm[p]`.
    /// Names travel with their states.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.num_states();
        assert_eq!(perm.len(), n);
        let mut states = vec![String::new(); n];
        let mut rows = vec![BTreeMap::new(); n];
        for p in 0..n {
            states[perm[p]] = self.states[p].clone();
            rows[perm[p]] = self.rows[p]
                .iter()
                .map(|(t, &m)| (t.iter().map(|&q| perm[q]).collect(), m))
                .collect();
        }
        Self::from_parts(self.arity, states, rows)
    }

    /// Same automaton with new state names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        let mut a = Self::new(self.arity, names)?;
        if a.num_states() != self.num_states() {
            return Err(Error::Document(
                "renaming must keep the number of states".into(),
            ));
        }
        a.rows = self.rows.clone();
        Ok(a)
    }

    /// Adjacency matrix of an arity-1 automaton.
    pub fn to_matrix(&self) -> Option<Vec<Vec<u64>>> {
        if self.arity != 1 {
            return None;
        }
        let n = self.num_states();
        Some(
            (0..n)
                .map(|p| (0..n).map(|q| self.multiplicity(p, &[q])).collect())
                .collect(),
        )
    }

    /// `(q,r,...)` with state names.
    pub fn tuple_name(&self, t: &[usize]) -> String {
        let names: Vec<&str> = t.iter().map(|&q| self.states[q].as_str()).collect();
        format!("({})", names.join(","))
    }
}

impl fmt::Display for EdgeTreeAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arity {}, {} states", self.arity, self.num_states())?;
        for p in 0..self.num_states() {
            let entries: Vec<String> = self.rows[p]
                .iter()
                .map(|(t, m)| format!("{}x{}", self.tuple_name(t), m))
                .collect();
            writeln!(f, "  {} -> {}", self.states[p], entries.join(" "))?;
        }
        Ok(())
    }
}

/// Cartesian product of the given choice lists, in lexicographic order.
pub fn product(choices: &[Vec<usize>]) -> Vec<Tuple> {
    let mut out: Vec<Tuple> = vec![Vec::with_capacity(choices.len())];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for &o in options {
                let mut t = prefix.clone();
                t.push(o);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// All tuples of length `d` over `items`, lexicographic in `items` order.
pub fn tuples_over(items: &[usize], d: usize) -> Vec<Tuple> {
    product(&vec![items.to_vec(); d])
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn golden_mean_tree() -> EdgeTreeAutomaton {
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
        .unwrap()
    }

    /// A state survives iff some computation of depth `depth` starts there.
    fn survives_to_depth(a: &EdgeTreeAutomaton, p: usize, depth: usize) -> bool {
        depth == 0
            || a.row(p)
                .keys()
                .any(|t| t.iter().all(|&q| survives_to_depth(a, q, depth - 1)))
    }

    #[test]
    fn trim_keeps_golden_mean() {
        let a = golden_mean_tree();
        assert!(a.is_trim());
        assert_eq!(a.trim(), a);
    }

    #[test]
    fn trim_single_dead_state() {
        let a = EdgeTreeAutomaton::new(2, ["p"]).unwrap();
        assert!(a.trim().is_empty());
    }

    #[test]
    fn trim_cascades() {
        let a =
            EdgeTreeAutomaton::from_transitions(2, ["p", "q"], [("p", vec!["q", "q"], 1)]).unwrap();
        // depth-|Q| reachability oracle agrees that nothing survives
        assert!(!survives_to_depth(&a, 0, 2));
        assert!(!survives_to_depth(&a, 1, 2));
        assert!(a.trim().is_empty());
    }

    #[test]
    fn trim_matches_depth_oracle() {
        let a = EdgeTreeAutomaton::from_transitions(
            1,
            ["a", "b", "c", "d"],
            [
                ("a", vec!["b"], 1),
                ("b", vec!["a"], 2),
                ("b", vec!["c"], 1),
                ("c", vec!["d"], 1),
            ],
        )
        .unwrap();
        let t = a.trim();
        let kept: Vec<&str> = t.states().iter().map(String::as_str).collect();
        let oracle: Vec<&str> = (0..a.num_states())
            .filter(|&p| survives_to_depth(&a, p, a.num_states()))
            .map(|p| a.state_name(p))
            .collect();
        assert_eq!(kept, oracle);
        assert_eq!(t.to_matrix().unwrap(), vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn duplicate_transition_rejected() {
        let err = EdgeTreeAutomaton::from_transitions(
            1,
            ["a"],
            [("a", vec!["a"], 1), ("a", vec!["a"], 2)],
        );
        assert!(matches!(err, Err(Error::DuplicateTransition { .. })));
    }

    #[test]
    fn wrong_tuple_length_rejected() {
        let err = EdgeTreeAutomaton::from_transitions(2, ["a"], [("a", vec!["a"], 1)]);
        assert!(matches!(
            err,
            Err(Error::TupleLength {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn matrix_round_trip() {
        let m = vec![vec![2, 2, 1], vec![1, 1, 2], vec![1, 1, 0]];
        let a = EdgeTreeAutomaton::from_matrix(&m).unwrap();
        assert_eq!(a.to_matrix().unwrap(), m);
        assert_eq!(a.total_mass(), 11);
    }

    #[test]
    fn permuted_moves_names_and_rows() {
        let a = golden_mean_tree();
        let b = a.permuted(&[1, 0]);
        assert_eq!(b.states(), &["b".to_string(), "a".to_string()]);
        assert_eq!(b.multiplicity(1, &[0, 1]), 1);
        assert_eq!(b.multiplicity(0, &[1, 1]), 1);
        assert_eq!(b.multiplicity(0, &[0, 0]), 0);
    }
}
