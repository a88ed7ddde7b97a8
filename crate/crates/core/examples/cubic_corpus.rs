//! Writes every connected cubic graph on at most 10 vertices, one graph6
//! line each, found by seeded sampling and deduplicated up to isomorphism.

use regcert_core::generators::gen_random_regular;
use regcert_core::iso::is_isomorphic;
use regcert_core::{encode_graph6, Graph};

fn main() {
    let mut seed = 0u64;
    for n in [4, 6, 8, 10] {
        let mut found: Vec<Graph> = Vec::new();
        let mut misses = 0;
        // stop after a long run of samples that add nothing new
        while misses < 20_000 {
            let g = gen_random_regular(n, 3, seed).unwrap();
            seed += 1;
            if found.iter().any(|h| is_isomorphic(h, &g)) {
                misses += 1;
            } else {
                found.push(g);
                misses = 0;
            }
        }
        for g in &found {
            println!("{}", encode_graph6(g));
        }
        eprintln!("n = {n}: {} graphs", found.len());
    }
}
