//! Minimal end-to-end use of the library: synthesise an optimal decision
//! tree for one of the built-in benchmarks and print it together with the
//! search statistics.
//!
//! Usage: `cargo run --release --example synthesise [cartpole|mountaincar|pendulum]`

use broccoli::env::by_name;
use broccoli::{synthesise, PredicateSpace, SearchProblem, StateVector};

fn main() {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "mountaincar".to_string());
    let bench = by_name(&name).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(1);
    });

    let predicates =
        PredicateSpace::from_increments(bench.env.bounds().clone(), &bench.default_increments)
            .expect("benchmark defaults are valid");
    let step_bound = bench.default_step_bound;
    let initial_states: Vec<StateVector> = bench.sampler(0).sample(1);
    let dim_names = bench.env.dim_names();
    let mode = bench.mode;

    println!(
        "benchmark {name}: {} predicates, start {:?}, k = {step_bound}",
        predicates.len(),
        initial_states[0].values(),
    );

    let problem = SearchProblem {
        spec: bench.spec(step_bound),
        env: bench.env,
        predicates,
        initial_states,
        depth_bound: 2,
        node_budget: 3,
        mode,
        step_bound,
    };

    let result = synthesise(&problem).expect("search runs to completion");
    match &result.best {
        Some((tree, outcome)) => {
            println!(
                "best outcome: {:?} at step {} with {} predicate node(s)",
                outcome.verdict, outcome.steps, outcome.predicate_nodes
            );
            print!("{}", tree.render(&dim_names));
        }
        None => println!("no tree completed evaluation"),
    }
    println!(
        "evaluated {} trees ({} rejected early, {} skipped symmetric) in {} ms",
        result.stats.trees_evaluated,
        result.stats.trees_rejected_early,
        result.stats.trees_skipped_symmetry,
        result.stats.wall_millis,
    );
}
