//! Is a graph shift conjugate to a Hom shift?
//!
//!     cargo run --example sequence_hom [automaton.json]

use homshift::io::Document;
use homshift::{decide_hom, total_amalgamation, HomDecision};

fn main() -> homshift::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sequence.json").into()
    });
    let a = Document::read(path.as_ref())?.to_automaton()?;
    println!("input:\n{a}");
    println!("total amalgamation:\n{}", total_amalgamation(&a));
    match decide_hom(&a)? {
        HomDecision::Yes { witness, .. } => {
            println!("YES, Hom shift of");
            print!("{}", homshift::io::undirected_dot(&witness.graph));
        }
        HomDecision::No { reason, .. } => println!("NO: {reason}"),
    }
    Ok(())
}
