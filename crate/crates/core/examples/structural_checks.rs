//! Which structural results apply to the constant-capacity scenarios, checked
//! against the exact optimum.

use std::fs;

use womcap::constant::DEFAULT_NODE_CAP;
use womcap::{
    lemma1_upper_bound, prop4_applies, prop5_check, solve_aware_constant_exact, Scenario,
    ScenarioParams,
};

fn main() -> womcap::Result<()> {
    let mut files: Vec<_> = fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios"))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with("_constant.txt"))
        .collect();
    files.sort();
    for path in files {
        let sc = Scenario::new(ScenarioParams::from_file(&path)?)?;
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let bound = match lemma1_upper_bound(&sc) {
            Ok(h) => h.to_string(),
            Err(_) => "n/a".into(),
        };
        let p5 = prop5_check(&sc)?;
        let best = solve_aware_constant_exact(&sc, DEFAULT_NODE_CAP)?;
        println!(
            "{name:<22} absorbing={:<5} stays_in_A={:<5} max_high={bound:<4} optimum has {} high, single switch: {}",
            prop4_applies(&sc)?,
            p5.applicable,
            best.policy.h_count(),
            best.policy.is_single_switch()
        );
    }
    Ok(())
}
