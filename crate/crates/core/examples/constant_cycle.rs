//! Fixed capacity: the myopic firm's reputation falls into a two-period cycle
//! while the exact and grid solvers plan around it.

use womcap::{solve_aware_constant_exact, solve_aware_constant_grid, solve_naive_constant, voi};
use womcap::{Scenario, ScenarioParams};

fn main() -> womcap::Result<()> {
    let sc = Scenario::new(ScenarioParams::from_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../scenarios/cycling_constant.txt"
    ))?)?;

    let naive = solve_naive_constant(&sc)?;
    let reps: Vec<String> = naive
        .trajectory
        .reputations()
        .map(|r| format!("{r:.2}"))
        .collect();
    println!(
        "naive  {:>10.2}  {}",
        naive.total_profit,
        naive.policy.to_compact()
    );
    println!("  reputations {}", reps.join(" "));

    let exact = solve_aware_constant_exact(&sc, womcap::constant::DEFAULT_NODE_CAP)?;
    println!(
        "exact  {:>10.2}  {}  ({} nodes)",
        exact.total_profit,
        exact.policy.to_compact(),
        exact.nodes_explored
    );

    for points in [101, 501, 2001] {
        let grid = solve_aware_constant_grid(&sc, points)?;
        println!(
            "grid {points:>4} {:>10.2}  {}",
            grid.total_profit,
            grid.policy.to_compact()
        );
    }
    println!(
        "value of foresight {:.2}%",
        voi(exact.total_profit, naive.total_profit)
    );
    Ok(())
}
