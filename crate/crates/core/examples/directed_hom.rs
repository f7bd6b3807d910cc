//! Directed Hom tree-shifts: one YES, one symmetric NO.

use homshift::homdecide::{check_symmetric, synthesize_directed_hom};
use homshift::io::{directed_dot, Document};
use homshift::{decide_directed_hom, total_amalgamation, HomDecision};

fn data(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn main() -> homshift::Result<()> {
    for name in ["cycle_hom.json", "directed.json"] {
        let a = Document::read(&data(name))?.to_automaton()?;
        print!("{name}: ");
        match decide_directed_hom(&a)? {
            HomDecision::Yes { witness, .. } => print!("YES\n{}", directed_dot(&witness.graph)),
            HomDecision::No {
                reason,
                amalgamation,
                ..
            } => {
                println!("NO: {reason}");
                // symmetry alone is not enough: this graph is what splitting
                // by child multisets would give
                if check_symmetric(&amalgamation).is_ok() {
                    let w = synthesize_directed_hom(&total_amalgamation(&a))?;
                    print!("multiset split, not conjugate:\n{}", directed_dot(&w.graph));
                }
            }
        }
    }
    Ok(())
}
