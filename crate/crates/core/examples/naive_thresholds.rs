//! Decision thresholds of the myopic firm and the choice they imply across reputations.

use womcap::thresholds::constant_decision;
use womcap::{constant_thresholds, variable_thresholds, Scenario, ScenarioParams};

fn show(name: &str, v: Option<f64>) {
    match v {
        Some(x) => println!("  {name:<6} {x:.6}"),
        None => println!("  {name:<6} undefined"),
    }
}

fn main() -> womcap::Result<()> {
    let var = Scenario::new(
        ScenarioParams::from_file(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../scenarios/price_variable_1.txt"
        ))?
        .with_capacity(None),
    )?;
    let t = variable_thresholds(&var);
    println!("variable capacity");
    show("iota", Some(t.iota));
    show("rho", Some(t.rho));
    show("kappa", t.kappa);
    show("tau", Some(t.tau));
    show("nu", t.nu);

    let con = Scenario::new(ScenarioParams::from_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../scenarios/cycling_constant.txt"
    ))?)?;
    let c = constant_thresholds(&con)?;
    println!("constant capacity");
    show("gamma", c.gamma);
    show("omega", c.omega);
    show("phi", Some(c.phi));
    show("beta", c.beta);

    print!("choice by reputation (variable | constant):\n  ");
    for i in 0..=20 {
        let r = i as f64 / 20.0;
        print!("{}{} ", t.decide(r), constant_decision(&con, r)?);
    }
    println!();
    Ok(())
}
