//! From forbidden blocks to an automaton, and on to a Hom graph.
//!
//!     cargo run --example compile_forbidden [sft.json]

use homshift::io::Document;
use homshift::{compile, decide_hom};

fn main() -> homshift::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/tree_ex.json").into()
    });
    let p = Document::read(path.as_ref())?.to_sft()?;
    for b in p.forbidden() {
        println!("forbidden {b}");
    }
    let c = compile(&p)?;
    println!("states are blocks of height {}", c.state_height);
    println!("{}", c.automaton);
    if let Some(w) = decide_hom(&c.automaton)?.witness() {
        print!("Hom shift of\n{}", homshift::io::undirected_dot(&w.graph));
    }
    Ok(())
}
