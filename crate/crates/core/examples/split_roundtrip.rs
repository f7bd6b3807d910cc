//! Split at random, amalgamate, and compare by exhaustive search.

use homshift::catalog;
use homshift::oracle::verify_split_roundtrip;

fn main() -> homshift::Result<()> {
    for seed in 0..5 {
        let r = verify_split_roundtrip(&catalog::directed_example(), 3, seed)?;
        println!(
            "seed {seed}: sizes {:?}, {}: {}",
            r.sizes,
            if r.passed { "pass" } else { "FAIL" },
            r.message
        );
    }
    Ok(())
}
