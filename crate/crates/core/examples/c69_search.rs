use std::time::Instant;

use toric_workbench::known::c69_complex;
use toric_workbench::{search_free, SearchConfig};

fn main() {
    let k = c69_complex();
    for dim in [2, 3] {
        let start = Instant::now();
        let out = search_free(&k, &SearchConfig::exhaustive(dim, vec![0, 1])).unwrap();
        println!(
            "k={dim}: {} subtori, {} raw hits, {} nodes, {:?}",
            out.found.len(),
            out.raw_hits,
            out.examined,
            start.elapsed()
        );
    }
}
