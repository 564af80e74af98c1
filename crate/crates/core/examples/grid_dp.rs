//! Accuracy of the discretized solver against branch and bound as the grid grows.

use std::time::Instant;

use womcap::constant::DEFAULT_NODE_CAP;
use womcap::{
    sample_params, solve_aware_constant_exact, solve_aware_constant_grid, Mode, Scenario,
};

fn main() -> womcap::Result<()> {
    let sizes = [51, 201, 1001, 4001];
    println!(
        "seed  N  {:>12} {}",
        "exact",
        sizes
            .map(|s| format!("{:>10}", format!("gap@{s}")))
            .join("")
    );
    for seed in 0..8 {
        let sc = Scenario::new(sample_params(seed, Mode::Constant)?)?.with_horizon(16)?;
        let t = Instant::now();
        let exact = solve_aware_constant_exact(&sc, DEFAULT_NODE_CAP)?;
        let exact_time = t.elapsed();
        let mut row = format!("{seed:>4} {:>2}  {:>12.2}", sc.horizon, exact.total_profit);
        for points in sizes {
            let grid = solve_aware_constant_grid(&sc, points)?;
            let gap = (exact.total_profit - grid.total_profit) / exact.total_profit.abs().max(1.0);
            row.push_str(&format!("{:>9.4}%", 100.0 * gap));
        }
        println!("{row}  ({exact_time:.1?} exact)");
    }
    Ok(())
}
