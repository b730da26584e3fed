//! Regenerates the golden 100-step environment traces used by the test
//! suite. The traces drive each benchmark environment with a fixed
//! open-loop action pattern (switch action every 3 steps) from a fixed
//! initial state and classify the visited prefix with the benchmark
//! specification.
//!
//! The committed goldens under `tests/golden/` were produced by this
//! program once and then frozen; the test suite compares against the files,
//! not against this program. Run with `--write` to overwrite them.

use std::path::Path;

use broccoli::env::{by_name, PrefixVerdict};
use broccoli::trace::{Trace, TraceVerdict};
use broccoli::StateVector;

const STEPS: usize = 100;

fn fixed_pattern_trace(env_name: &str, start: &[f64]) -> Trace {
    let bench = by_name(env_name).expect("known environment");
    let spec = bench.spec(10_000);
    let actions_available = bench.env.actions().to_vec();
    let mut states = vec![StateVector::from(start)];
    let mut actions = Vec::new();
    for step in 0..STEPS {
        let action = actions_available[(step / 3) % actions_available.len()];
        let next = bench.env.step(states.last().expect("nonempty"), action);
        actions.push(action);
        states.push(next);
    }
    let verdict = match spec.classify(&states) {
        PrefixVerdict::Satisfied => {
            // satisfied at the first state where the goal held
            let mut monitor = spec.monitor();
            let at = states
                .iter()
                .position(|s| monitor.observe(s) == PrefixVerdict::Satisfied)
                .expect("classify said satisfied");
            TraceVerdict::Satisfied(at)
        }
        PrefixVerdict::Violated => TraceVerdict::Violated,
        PrefixVerdict::Undetermined => TraceVerdict::Undetermined,
    };
    Trace {
        states,
        actions,
        verdict,
    }
}

fn main() {
    let write = std::env::args().any(|a| a == "--write");
    let cases: [(&str, &[f64]); 3] = [
        ("cartpole", &[0.01, 0.0, 0.02, 0.0]),
        ("mountaincar", &[-0.5, 0.0]),
        ("pendulum", &[0.3, -0.1]),
    ];
    for (name, start) in cases {
        let trace = fixed_pattern_trace(name, start);
        let csv = trace.to_csv_string();
        if write {
            let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
            std::fs::create_dir_all(&dir).expect("create golden dir");
            let path = dir.join(format!("{name}.csv"));
            std::fs::write(&path, &csv).expect("write golden");
            println!(
                "wrote {} ({} rows, {})",
                path.display(),
                STEPS + 1,
                trace.verdict
            );
        } else {
            println!("=== {name} ({}) ===", trace.verdict);
            print!("{csv}");
        }
    }
}
