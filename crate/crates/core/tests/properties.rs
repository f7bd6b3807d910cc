use homshift::amalgamation::{coarsest_merge_partition, random_split_walk, total_amalgamation};
use homshift::block::count_blocks;
use homshift::conjugacy::{automaton_isomorphic, decide_conjugacy};
use homshift::gen;
use homshift::graph::HomGraph;
use homshift::homdecide::{decide_directed_hom, decide_hom, witness_automaton};
use homshift::io::Document;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn total_amalgamation_is_a_fixpoint(seed: u64, arity in 1usize..=3, states in 1usize..=5) {
        let a = gen::random_automaton(&mut gen::rng(seed), arity, states, 0.3, 3);
        let k = total_amalgamation(&a);
        prop_assert!(coarsest_merge_partition(&k).is_trivial());
        prop_assert_eq!(k.total_mass() <= a.total_mass(), true);
        prop_assert_eq!(total_amalgamation(&k), k);
    }

    #[test]
    fn trim_is_idempotent(seed: u64, arity in 1usize..=3, states in 1usize..=6) {
        let mut rng = gen::rng(seed);
        let mut a = gen::random_automaton(&mut rng, arity, states, 0.2, 2);
        // knock out a row so that trimming has something to do
        let p = states - 1;
        for t in a.row(p).keys().cloned().collect::<Vec<_>>() {
            a.set(p, &t, 0);
        }
        let t = a.trim();
        prop_assert!(t.is_trim());
        prop_assert_eq!(t.trim(), t.clone());
        prop_assert!(t.state_index(a.state_name(p)).is_none());
    }

    #[test]
    fn splitting_preserves_block_counts_of_fixpoint(seed: u64, arity in 1usize..=2, rounds in 0usize..=3) {
        let a = gen::random_automaton(&mut gen::rng(seed), arity, 3, 0.4, 2);
        let b = random_split_walk(&a, rounds, seed);
        let (ka, kb) = (total_amalgamation(&a), total_amalgamation(&b));
        prop_assert!(automaton_isomorphic(&ka, &kb).unwrap().is_some());
        for h in 1..=3 {
            prop_assert_eq!(count_blocks(&ka, h).unwrap().total(), count_blocks(&kb, h).unwrap().total());
        }
    }

    #[test]
    fn conjugacy_is_symmetric(seed: u64, arity in 1usize..=2) {
        let mut rng = gen::rng(seed);
        let a = gen::random_automaton(&mut rng, arity, 3, 0.4, 2);
        let b = gen::perturb_multiplicity(&mut rng, &a);
        let ab = decide_conjugacy(&a, &b).unwrap().is_conjugate();
        let ba = decide_conjugacy(&b, &a).unwrap().is_conjugate();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn permuting_states_keeps_isomorphism(seed: u64, arity in 1usize..=3, states in 1usize..=7) {
        let mut rng = gen::rng(seed);
        let a = gen::random_automaton(&mut rng, arity, states, 0.3, 3);
        let (b, perm) = gen::shuffle_states(&mut rng, &a);
        let iso = automaton_isomorphic(&a, &b).unwrap().expect("permuted copy");
        prop_assert!(iso.is_valid_for(&a, &b));
        prop_assert_eq!(iso.mapping.len(), perm.len());
    }

    #[test]
    fn hom_witness_presents_a_conjugate_shift(seed: u64, arity in 1usize..=3) {
        let a = gen::random_regular_automaton(&mut gen::rng(seed), arity, 4, 3);
        let d = decide_hom(&a).unwrap();
        let w = d.witness().expect("regular automata are Hom");
        let h = witness_automaton(w, arity).unwrap();
        prop_assert!(decide_conjugacy(&a, &h).unwrap().is_conjugate());
    }

    #[test]
    fn directed_witness_presents_a_conjugate_shift(seed: u64, arity in 1usize..=3, n in 1usize..=5) {
        let g = gen::random_directed_graph(&mut gen::rng(seed), n, 0.4);
        let a = g.hom_automaton(arity).unwrap();
        let d = decide_directed_hom(&a).unwrap();
        let w = d.witness().expect("Hom automata are directed Hom");
        let h = witness_automaton(w, arity).unwrap();
        prop_assert!(decide_conjugacy(&a, &h).unwrap().is_conjugate());
    }

    #[test]
    fn documents_round_trip(seed: u64, arity in 1usize..=3, states in 1usize..=5) {
        let a = gen::random_automaton(&mut gen::rng(seed), arity, states, 0.3, 4);
        let text = Document::from(&a).to_json();
        prop_assert_eq!(Document::parse(&text).unwrap().to_automaton().unwrap(), a);
        let g = gen::random_undirected_graph(&mut gen::rng(seed), states, 0.5);
        let text = Document::from(&g).to_json();
        prop_assert_eq!(Document::parse(&text).unwrap().to_undirected_graph().unwrap(), g);
    }
}
