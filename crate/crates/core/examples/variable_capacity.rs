//! Aware against naive advertisement when capacity follows demand.
//!
//! cargo run --example variable_capacity -- [scenario file]

use std::env;

use womcap::{
    check_capacity_optimality, exhaustive_variable, solve_aware_variable, solve_naive_variable, voi,
};
use womcap::{Scenario, ScenarioParams};

fn main() -> womcap::Result<()> {
    let path = env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../scenarios/r1_variable.txt"
        )
        .into()
    });
    let sc = Scenario::new(ScenarioParams::from_file(&path)?.with_capacity(None))?;

    let aware = solve_aware_variable(&sc)?;
    let naive = solve_naive_variable(&sc)?;
    println!(
        "aware  {:>14.3}  {}",
        aware.total_profit,
        aware.policy.to_compact()
    );
    println!(
        "naive  {:>14.3}  {}",
        naive.total_profit,
        naive.policy.to_compact()
    );
    println!(
        "value of foresight {:.2}%",
        voi(aware.total_profit, naive.total_profit)
    );

    // Brute force agrees with the switching search on short horizons.
    let short = sc.with_horizon(sc.horizon.min(12))?;
    let brute = exhaustive_variable(&short, 12)?;
    let fast = solve_aware_variable(&short)?;
    println!(
        "N={} brute {} vs search {}",
        short.horizon,
        brute.policy.to_compact(),
        fast.policy.to_compact()
    );

    let matched = check_capacity_optimality(&sc, &aware.policy, 0.05)?;
    println!("matching capacity to demand beats +-5% capacity: {matched}");
    Ok(())
}
