//! Seeded generators for test instances.
//!
//! All generators take a caller-owned RNG, so a `ChaCha8Rng` seeded with
//! [`rng`] gives the same instances on every platform.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automaton::{tuples_over, EdgeTreeAutomaton, Tuple};
use crate::block::{node_count, Block};
use crate::compiler::SftPresentation;
use crate::error::Result;
use crate::graph::{DirectedSimpleGraph, UndirectedGraph};
use crate::homdecide::check_regular;

/// The generator used throughout: ChaCha8 seeded from a `u64`.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A trim automaton: each tuple is present with probability `density` and
/// multiplicity up to `max_count`, and every state keeps at least one
/// transition.
pub fn random_automaton<R: Rng>(
    rng: &mut R,
    arity: usize,
    states: usize,
    density: f64,
    max_count: u64,
) -> EdgeTreeAutomaton {
    let mut a = EdgeTreeAutomaton::new(arity, names("s", states)).expect("arity >= 1");
    let all: Vec<usize> = (0..states).collect();
    let tuples = tuples_over(&all, arity);
    for p in 0..states {
        for t in &tuples {
            if rng.gen_bool(density) {
                a.set(p, t, rng.gen_range(1..=max_count));
            }
        }
        if a.out_mass(p) == 0 {
            let t = tuples.choose(rng).expect("states > 0");
            a.set(p, t, rng.gen_range(1..=max_count));
        }
    }
    a
}

/// A regular automaton: random symmetric successor sets with no empty set,
/// and a random level per state.
pub fn random_regular_automaton<R: Rng>(
    rng: &mut R,
    arity: usize,
    states: usize,
    max_level: u64,
) -> EdgeTreeAutomaton {
    let g = random_undirected_graph(rng, states, 0.4);
    let mut a = EdgeTreeAutomaton::new(arity, names("s", states)).expect("arity >= 1");
    for p in 0..states {
        let level = rng.gen_range(1..=max_level);
        let succ: Vec<usize> = (0..states).filter(|&q| g.has_edge(p, q)).collect();
        for t in tuples_over(&succ, arity) {
            a.set(p, &t, level);
        }
    }
    debug_assert!(check_regular(&a).is_ok());
    a
}

/// A symmetric trim automaton: multiplicities depend only on the multiset of
/// children.
pub fn random_symmetric_automaton<R: Rng>(
    rng: &mut R,
    arity: usize,
    states: usize,
    density: f64,
    max_count: u64,
) -> EdgeTreeAutomaton {
    let mut a = EdgeTreeAutomaton::new(arity, names("s", states)).expect("arity >= 1");
    let all: Vec<usize> = (0..states).collect();
    let multisets: Vec<Tuple> = tuples_over(&all, arity)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
        .collect();
    let fill = |a: &mut EdgeTreeAutomaton, p: usize, chi: &Tuple, m: u64| {
        for t in tuples_over(&all, arity) {
            let mut sorted = t.clone();
            sorted.sort_unstable();
            if &sorted == chi {
                a.set(p, &t, m);
            }
        }
    };
    for p in 0..states {
        for chi in &multisets {
            if rng.gen_bool(density) {
                let m = rng.gen_range(1..=max_count);
                fill(&mut a, p, chi, m);
            }
        }
        if a.out_mass(p) == 0 {
            let chi = multisets.choose(rng).expect("states > 0").clone();
            let m = rng.gen_range(1..=max_count);
            fill(&mut a, p, &chi, m);
        }
    }
    a
}

/// A random surjection from `n` states onto `m <= n` classes.
fn random_fibers<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    let mut pi: Vec<usize> = (0..n)
        .map(|i| if i < m { i } else { rng.gen_range(0..m) })
        .collect();
    pi.shuffle(rng);
    pi
}

/// A regular automaton on `states` states whose successor sets are pulled
/// back from a random graph on `classes` vertices, so that states in one
/// fiber have equal columns and amalgamate.
pub fn lifted_regular_automaton<R: Rng>(
    rng: &mut R,
    arity: usize,
    states: usize,
    classes: usize,
    max_level: u64,
) -> EdgeTreeAutomaton {
    let h = random_undirected_graph(rng, classes, 0.4);
    let pi = random_fibers(rng, states, classes);
    let mut a = EdgeTreeAutomaton::new(arity, names("s", states)).expect("arity >= 1");
    for p in 0..states {
        let level = rng.gen_range(1..=max_level);
        let succ: Vec<usize> = (0..states).filter(|&q| h.has_edge(pi[p], pi[q])).collect();
        for t in tuples_over(&succ, arity) {
            a.set(p, &t, level);
        }
    }
    debug_assert!(check_regular(&a).is_ok());
    a
}

/// A symmetric automaton with `M(p, t) = f_p(pi(t))` for a random
/// surjection `pi` onto `classes` and random symmetric rows `f_p`, so that
/// states in one fiber have equal columns.
pub fn lifted_symmetric_automaton<R: Rng>(
    rng: &mut R,
    arity: usize,
    states: usize,
    classes: usize,
    density: f64,
    max_count: u64,
) -> EdgeTreeAutomaton {
    let rows = random_symmetric_automaton(rng, arity, classes, density, max_count);
    let pi = random_fibers(rng, states, classes);
    let mut a = EdgeTreeAutomaton::new(arity, names("s", states)).expect("arity >= 1");
    let all: Vec<usize> = (0..states).collect();
    for p in 0..states {
        let f = rng.gen_range(0..classes);
        for t in tuples_over(&all, arity) {
            let image: Vec<usize> = t.iter().map(|&q| pi[q]).collect();
            let m = rows.multiplicity(f, &image);
            if m > 0 {
                a.set(p, &t, m);
            }
        }
    }
    a
}

/// A simple undirected graph with loops in which every vertex has a
/// neighbor, so that its Hom automaton is trim.
pub fn random_undirected_graph<R: Rng>(rng: &mut R, vertices: usize, p: f64) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(names("v", vertices)).expect("distinct names");
    for u in 0..vertices {
        for v in u..vertices {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    for u in 0..vertices {
        if !(0..vertices).any(|v| g.has_edge(u, v)) {
            g.add_edge(u, rng.gen_range(0..vertices));
        }
    }
    g
}

/// A simple directed graph with loops in which every vertex has an
/// out-neighbor.
pub fn random_directed_graph<R: Rng>(rng: &mut R, vertices: usize, p: f64) -> DirectedSimpleGraph {
    let mut g = DirectedSimpleGraph::new(names("v", vertices)).expect("distinct names");
    for u in 0..vertices {
        for v in 0..vertices {
            if rng.gen_bool(p) {
                g.add_arc(u, v);
            }
        }
        if !(0..vertices).any(|v| g.has_arc(u, v)) {
            g.add_arc(u, rng.gen_range(0..vertices));
        }
    }
    g
}

/// Renames the states of `a` by a random permutation; returns the permuted
/// automaton and the permutation (old index to new index).
pub fn shuffle_states<R: Rng>(
    rng: &mut R,
    a: &EdgeTreeAutomaton,
) -> (EdgeTreeAutomaton, Vec<usize>) {
    let mut perm: Vec<usize> = (0..a.num_states()).collect();
    perm.shuffle(rng);
    (a.permuted(&perm), perm)
}

/// Changes one multiplicity of `a` by one: an existing transition gains or
/// loses a copy, or an absent tuple appears. Never empties a row.
pub fn perturb_multiplicity<R: Rng>(rng: &mut R, a: &EdgeTreeAutomaton) -> EdgeTreeAutomaton {
    let mut b = a.clone();
    let n = a.num_states();
    let p = rng.gen_range(0..n);
    let t: Tuple = (0..a.arity()).map(|_| rng.gen_range(0..n)).collect();
    let m = a.multiplicity(p, &t);
    if m > 1 || (m == 1 && a.row(p).len() > 1 && rng.gen_bool(0.5)) {
        b.set(p, &t, m - 1);
    } else {
        b.set(p, &t, m + 1);
    }
    b
}

/// A random presentation over an alphabet of `symbols` letters with
/// `count` forbidden blocks of heights 1 to `max_height`. Height-1 blocks
/// are rare so that the shift is usually nonempty.
pub fn random_sft<R: Rng>(
    rng: &mut R,
    arity: usize,
    symbols: usize,
    count: usize,
    max_height: usize,
) -> Result<SftPresentation> {
    let alphabet: Vec<String> = (0..symbols)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let mut forbidden = Vec::new();
    for _ in 0..count {
        let h = if max_height > 1 && rng.gen_bool(0.9) {
            rng.gen_range(2..=max_height)
        } else {
            1
        };
        let nodes = node_count(arity, h).expect("small");
        let labels = (0..nodes)
            .map(|_| alphabet[rng.gen_range(0..symbols)].clone())
            .collect();
        let b = Block::new(arity, h, labels)?;
        if !forbidden.contains(&b) {
            forbidden.push(b);
        }
    }
    SftPresentation::new(arity, alphabet, forbidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HomGraph;
    use crate::homdecide::check_symmetric;

    #[test]
    fn generators_are_deterministic() {
        let a = random_automaton(&mut rng(5), 2, 4, 0.2, 3);
        let b = random_automaton(&mut rng(5), 2, 4, 0.2, 3);
        assert_eq!(a, b);
        assert!(a.is_trim());
    }

    #[test]
    fn regular_and_symmetric_generators() {
        for seed in 0..20 {
            let r = random_regular_automaton(&mut rng(seed), 2, 4, 3);
            assert!(check_regular(&r).is_ok());
            assert!(r.is_trim());
            let s = random_symmetric_automaton(&mut rng(seed), 3, 3, 0.3, 2);
            assert!(check_symmetric(&s).is_ok());
            assert!(s.is_trim());
        }
    }

    #[test]
    fn lifted_generators_amalgamate() {
        use crate::amalgamation::total_amalgamation;
        for seed in 0..20 {
            let r = lifted_regular_automaton(&mut rng(seed), 2, 5, 2, 3);
            assert!(check_regular(&r).is_ok());
            assert!(total_amalgamation(&r).num_states() <= 2);
            let s = lifted_symmetric_automaton(&mut rng(seed), 2, 5, 2, 0.5, 2);
            assert!(check_symmetric(&s).is_ok());
            assert!(s.is_trim());
            assert!(total_amalgamation(&s).num_states() <= 2);
        }
    }

    #[test]
    fn graphs_have_no_dead_vertices() {
        for seed in 0..20 {
            let g = random_undirected_graph(&mut rng(seed), 5, 0.1);
            assert!(g.hom_automaton(2).unwrap().is_trim());
            let d = random_directed_graph(&mut rng(seed), 5, 0.1);
            assert_eq!(d.trimmed().num_vertices(), 5);
        }
    }

    #[test]
    fn perturbation_changes_one_entry() {
        let a = random_automaton(&mut rng(3), 1, 3, 0.5, 2);
        let b = perturb_multiplicity(&mut rng(4), &a);
        let diff = (0..3)
            .flat_map(|p| (0..3).map(move |q| (p, q)))
            .filter(|&(p, q)| a.multiplicity(p, &[q]) != b.multiplicity(p, &[q]))
            .count();
        assert_eq!(diff, 1);
        assert!(b.is_trim());
    }
}
