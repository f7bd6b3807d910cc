//! Isomorphism of automata and graphs, and conjugacy of edge tree shifts.
//!
//! Two trim edge tree automata define conjugate shifts exactly when their
//! total amalgamations agree up to renaming states. The renaming is found by
//! backtracking over state bijections, restricted to states with equal
//! colors under joint color refinement.

use std::collections::{BTreeMap, HashMap};

use crate::amalgamation::total_amalgamation;
use crate::automaton::{EdgeTreeAutomaton, Tuple};
use crate::error::{Error, Result};
use crate::graph::HomGraph;

/// Default limit on backtracking nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// The node budget from `HOMSHIFT_NODE_BUDGET`, or [`DEFAULT_NODE_BUDGET`].
pub fn default_node_budget() -> u64 {
    std::env::var("HOMSHIFT_NODE_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// A bijection between the states (or vertices) of two objects.
/// Color, outgoing transitions and incidences of a state, in colors.
type Signature = (usize, Vec<(u64, Tuple)>, Vec<(usize, u64, usize, Tuple)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// `mapping[p]` is the image of state `p`.
    pub mapping: Vec<usize>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (p, &q) in self.mapping.iter().enumerate() {
            inv[q] = p;
        }
        Self { mapping: inv }
    }

    /// Does this bijection carry every multiplicity of `a` onto `b`?
    pub fn is_valid_for(&self, a: &EdgeTreeAutomaton, b: &EdgeTreeAutomaton) -> bool {
        let n = a.num_states();
        if b.num_states() != n || a.arity() != b.arity() || self.mapping.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &q in &self.mapping {
            if q >= n || std::mem::replace(&mut seen[q], true) {
                return false;
            }
        }
        a.transitions().count() == b.transitions().count()
            && a.transitions().all(|(p, t, m)| {
                let image: Tuple = t.iter().map(|&q| self.mapping[q]).collect();
                b.multiplicity(self.mapping[p], &image) == m
            })
    }
}

/// Joint color refinement of two automata. Colors are comparable across
/// the two sides.
fn refine(a: &EdgeTreeAutomaton, b: &EdgeTreeAutomaton) -> (Vec<usize>, Vec<usize>) {
    let initial = |x: &EdgeTreeAutomaton| -> Vec<(u64, Vec<u64>, Vec<u64>)> {
        let d = x.arity();
        let mut incoming = vec![vec![0u64; d]; x.num_states()];
        for (_, t, m) in x.transitions() {
            for (l, &q) in t.iter().enumerate() {
                incoming[q][l] += m;
            }
        }
        (0..x.num_states())
            .map(|p| {
                let mut row: Vec<u64> = x.row(p).values().copied().collect();
                row.sort_unstable();
                (x.out_mass(p), row, incoming[p].clone())
            })
            .collect()
    };
    let (ca, cb) = recolor(&initial(a), &initial(b));
    let mut colors = (ca, cb);
    loop {
        let before = count_colors(&colors);
        let sig = |x: &EdgeTreeAutomaton, c: &[usize]| -> Vec<Signature> {
            let mut out: Vec<Vec<(u64, Tuple)>> = vec![Vec::new(); x.num_states()];
            let mut inc: Vec<Vec<(usize, u64, usize, Tuple)>> = vec![Vec::new(); x.num_states()];
            for (p, t, m) in x.transitions() {
                let tc: Tuple = t.iter().map(|&q| c[q]).collect();
                out[p].push((m, tc.clone()));
                for (l, &q) in t.iter().enumerate() {
                    inc[q].push((l, m, c[p], tc.clone()));
                }
            }
            (0..x.num_states())
                .map(|p| {
                    out[p].sort();
                    inc[p].sort();
                    (
                        c[p],
                        std::mem::take(&mut out[p]),
                        std::mem::take(&mut inc[p]),
                    )
                })
                .collect()
        };
        let next = recolor(&sig(a, &colors.0), &sig(b, &colors.1));
        let after = count_colors(&next);
        colors = next;
        if after == before {
            return colors;
        }
    }
}

fn count_colors(c: &(Vec<usize>, Vec<usize>)) -> usize {
    let mut all: Vec<usize> = c.0.iter().chain(&c.1).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn recolor<K: Ord + Clone>(a: &[K], b: &[K]) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    for k in a.iter().chain(b) {
        ids.entry(k.clone()).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (
        a.iter().map(|k| ids[k]).collect(),
        b.iter().map(|k| ids[k]).collect(),
    )
}

/// Transitions each state takes part in, as parent or child.
fn incidence(x: &EdgeTreeAutomaton) -> Vec<Vec<(usize, Tuple, u64)>> {
    let mut inc = vec![Vec::new(); x.num_states()];
    for (p, t, m) in x.transitions() {
        let mut states: Vec<usize> = t.clone();
        states.push(p);
        states.sort_unstable();
        states.dedup();
        for s in states {
            inc[s].push((p, t.clone(), m));
        }
    }
    inc
}

struct Backtrack<'a> {
    a: &'a EdgeTreeAutomaton,
    b: &'a EdgeTreeAutomaton,
    inc_a: Vec<Vec<(usize, Tuple, u64)>>,
    inc_b: Vec<Vec<(usize, Tuple, u64)>>,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn consistent(&self, p: usize, q: usize) -> bool {
        let map_a = |s: usize| if s == p { Some(q) } else { self.forward[s] };
        let map_b = |s: usize| if s == q { Some(p) } else { self.backward[s] };
        self.inc_a[p].iter().all(|(parent, t, m)| {
            let Some(img_p) = map_a(*parent) else {
                return true;
            };
            let img: Option<Tuple> = t.iter().map(|&s| map_a(s)).collect();
            img.is_none_or(|img| self.b.multiplicity(img_p, &img) == *m)
        }) && self.inc_b[q].iter().all(|(parent, t, m)| {
            let Some(img_p) = map_b(*parent) else {
                return true;
            };
            let img: Option<Tuple> = t.iter().map(|&s| map_b(s)).collect();
            img.is_none_or(|img| self.a.multiplicity(img_p, &img) == *m)
        })
    }

    fn search(&mut self, depth: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if depth == self.order.len() {
            return Ok(true);
        }
        let p = self.order[depth];
        for i in 0..self.candidates[p].len() {
            let q = self.candidates[p][i];
            if self.backward[q].is_some() || !self.consistent(p, q) {
                continue;
            }
            self.forward[p] = Some(q);
            self.backward[q] = Some(p);
            if self.search(depth + 1)? {
                return Ok(true);
            }
            self.forward[p] = None;
            self.backward[q] = None;
        }
        Ok(false)
    }
}

/// Finds a renaming of the states of `a` onto those of `b` preserving every
/// multiplicity, with the node budget from the environment.
pub fn automaton_isomorphic(
    a: &EdgeTreeAutomaton,
    b: &EdgeTreeAutomaton,
) -> Result<Option<Isomorphism>> {
    automaton_isomorphic_with_budget(a, b, default_node_budget())
}

pub fn automaton_isomorphic_with_budget(
    a: &EdgeTreeAutomaton,
    b: &EdgeTreeAutomaton,
    budget: u64,
) -> Result<Option<Isomorphism>> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch(a.arity(), b.arity()));
    }
    let n = a.num_states();
    if n != b.num_states() || a.transitions().count() != b.transitions().count() {
        return Ok(None);
    }
    let (ca, cb) = refine(a, b);
    let mut hist: HashMap<usize, (usize, usize)> = HashMap::new();
    for &c in &ca {
        hist.entry(c).or_default().0 += 1;
    }
    for &c in &cb {
        hist.entry(c).or_default().1 += 1;
    }
    if hist.values().any(|(x, y)| x != y) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (hist[&ca[p]].0, ca[p], p));
    let candidates = (0..n)
        .map(|p| (0..n).filter(|&q| cb[q] == ca[p]).collect())
        .collect();
    let mut bt = Backtrack {
        a,
        b,
        inc_a: incidence(a),
        inc_b: incidence(b),
        order,
        candidates,
        forward: vec![None; n],
        backward: vec![None; n],
        nodes: 0,
        budget,
    };
    if bt.search(0)? {
        let mapping = bt
            .forward
            .into_iter()
            .map(|q| q.expect("complete"))
            .collect();
        Ok(Some(Isomorphism { mapping }))
    } else {
        Ok(None)
    }
}

/// Graph isomorphism through the adjacency automata of the two graphs.
pub fn graph_isomorphic<G: HomGraph>(g: &G, h: &G) -> Result<Option<Isomorphism>> {
    automaton_isomorphic(&g.adjacency_automaton(), &h.adjacency_automaton())
}

/// Answer of [`decide_conjugacy`].
#[derive(Clone, Debug)]
pub struct ConjugacyDecision {
    /// Isomorphism between the two total amalgamations, if conjugate.
    pub isomorphism: Option<Isomorphism>,
    pub left: EdgeTreeAutomaton,
    pub right: EdgeTreeAutomaton,
    /// Whether trimming changed the respective input.
    pub trimmed_left: bool,
    pub trimmed_right: bool,
}

impl ConjugacyDecision {
    pub fn is_conjugate(&self) -> bool {
        self.isomorphism.is_some()
    }
}

/// Decides whether two edge tree shifts are conjugate by comparing the total
/// amalgamations of the trimmed automata.
pub fn decide_conjugacy(a: &EdgeTreeAutomaton, b: &EdgeTreeAutomaton) -> Result<ConjugacyDecision> {
    decide_conjugacy_with_budget(a, b, default_node_budget())
}

pub fn decide_conjugacy_with_budget(
    a: &EdgeTreeAutomaton,
    b: &EdgeTreeAutomaton,
    budget: u64,
) -> Result<ConjugacyDecision> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch(a.arity(), b.arity()));
    }
    let (ta, tb) = (a.trim(), b.trim());
    let trimmed_left = ta.num_states() != a.num_states();
    let trimmed_right = tb.num_states() != b.num_states();
    let left = total_amalgamation(&ta);
    let right = total_amalgamation(&tb);
    let isomorphism = automaton_isomorphic_with_budget(&left, &right, budget)?;
    Ok(ConjugacyDecision {
        isomorphism,
        left,
        right,
        trimmed_left,
        trimmed_right,
    })
}
