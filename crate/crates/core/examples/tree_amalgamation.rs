//! Amalgamating a binary tree automaton round by round.

use homshift::amalgamation::amalgamate_rounds;
use homshift::catalog;

fn main() {
    for a in [catalog::tree_example_one(), catalog::tree_example_two()] {
        println!("{a}");
        let trace = amalgamate_rounds(&a, usize::MAX);
        for (i, partition) in trace.rounds.iter().enumerate() {
            println!("round {}: classes {:?}", i + 1, partition.classes());
        }
        println!("fixpoint:\n{}", trace.result);
    }
}
