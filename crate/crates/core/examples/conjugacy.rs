//! Random state splittings leave the conjugacy class unchanged.

use homshift::{catalog, decide_conjugacy, random_split_walk};

fn main() -> homshift::Result<()> {
    let a = catalog::directed_example();
    for seed in 0..4 {
        let b = random_split_walk(&a, 3, seed);
        let decision = decide_conjugacy(&a, &b)?;
        println!(
            "seed {seed}: {} -> {} states, conjugate: {}",
            a.num_states(),
            b.num_states(),
            decision.is_conjugate()
        );
    }
    let other = catalog::tree_example_two();
    println!(
        "against the full 2-shift: {}",
        decide_conjugacy(&a, &other)?.is_conjugate()
    );
    Ok(())
}
