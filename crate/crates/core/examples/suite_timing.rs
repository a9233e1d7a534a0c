//! Runs the built-in suite and prints the report table with wall time.
//!
//! `cargo run --release -p rubikmap --example suite_timing [SEED]`

use std::time::Instant;

use rubikmap::map::default_suite;
use rubikmap::verify::{run_suite, to_table, VerifyOptions};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(1);
    let opts = VerifyOptions {
        seed,
        ..Default::default()
    };
    let t = Instant::now();
    let reports = run_suite(&default_suite(), &opts);
    print!("{}", to_table(&reports));
    println!("total {:.2}s", t.elapsed().as_secs_f64());
}
