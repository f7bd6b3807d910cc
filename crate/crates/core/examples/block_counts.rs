//! Counting blocks of the golden mean tree-shift, and listing the small ones.

use homshift::{catalog, count_blocks, enumerate_blocks};

fn main() -> homshift::Result<()> {
    let a = catalog::golden_mean_tree();
    for k in 1..=6 {
        println!("height {k}: {} blocks", count_blocks(&a, k)?.total());
    }
    for b in enumerate_blocks(&a, 2, 1000)? {
        println!("{}", b.map(|l| l.display(&a)));
    }
    Ok(())
}
