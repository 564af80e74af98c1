//! Simulates a hand-written advertisement policy and prints each period.
//!
//! cargo run --example simulate_policy -- [scenario file] [policy]

use std::env;

use womcap::{simulate_default, AdPolicy, Scenario, ScenarioParams};

fn main() -> womcap::Result<()> {
    let mut args = env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../scenarios/cycling_constant.txt"
        )
        .into()
    });
    let policy: AdPolicy = args.next().unwrap_or_else(|| "3H-15L".into()).parse()?;

    let sc = Scenario::new(ScenarioParams::from_file(&path)?)?;
    let traj = simulate_default(&sc, &policy)?;
    println!(
        "{:>3} {:>8} {:>8} {:>2} {:>9} {:>6} {:>10}",
        "t", "R", "R'", "A", "demand", "fill", "profit"
    );
    for r in &traj.records {
        println!(
            "{:>3} {:>8.4} {:>8.4} {:>2} {:>9.2} {:>6.3} {:>10.2}",
            r.period, r.reputation_in, r.post_ad, r.ad, r.demand, r.fill_rate, r.profit
        );
    }
    println!(
        "total {:.3}, final reputation {:.4}",
        traj.total_profit, traj.final_reputation
    );
    Ok(())
}
