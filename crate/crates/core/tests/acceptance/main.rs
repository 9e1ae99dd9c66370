//! Runs every acceptance criterion and prints one line each. Exits non-zero
//! if any criterion fails.

mod criteria;
mod fillings;
mod oracles;

use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let all = [
        Criterion { id: 1, name: "gervais verification", limit: Duration::from_secs(1), run: criteria::gervais },
        Criterion { id: 2, name: "counterexample detection", limit: Duration::from_secs(5), run: criteria::counterexample },
        Criterion { id: 3, name: "mapping class group table", limit: Duration::from_secs(1), run: criteria::mcg_table },
        Criterion { id: 4, name: "constants", limit: Duration::from_secs(10), run: criteria::constants },
        Criterion { id: 5, name: "lemma probes", limit: Duration::from_secs(300), run: criteria::probes },
        Criterion { id: 6, name: "van kampen products", limit: Duration::from_secs(60), run: criteria::van_kampen },
        Criterion { id: 7, name: "end-to-end filling", limit: Duration::from_secs(60), run: fillings::end_to_end },
        Criterion { id: 8, name: "mixed-assignment filling", limit: Duration::from_secs(120), run: fillings::mixed },
        Criterion { id: 9, name: "sphere combinatorics", limit: Duration::from_secs(120), run: fillings::sphere },
        Criterion { id: 10, name: "determinism", limit: Duration::from_secs(120), run: fillings::determinism },
    ];
    let mut failed = 0;
    for c in &all {
        let start = Instant::now();
        let r = (c.run)();
        let took = start.elapsed();
        let r = match r {
            Ok(d) if took > c.limit => Err(format!("{d}; over time limit {:?}", c.limit)),
            r => r,
        };
        match r {
            Ok(d) => println!("criterion {:>2} PASS  {} ({:.2?}): {d}", c.id, c.name, took),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({:.2?}): {d}", c.id, c.name, took);
            }
        }
    }
    println!("{} of {} criteria passed", all.len() - failed, all.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
