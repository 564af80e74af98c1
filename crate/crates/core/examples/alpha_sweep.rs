//! Sweeps the advertisement curvature and writes the rows as CSV to stdout.
//!
//! cargo run --release --example alpha_sweep -- [samples] [seed]

use std::env;
use std::io;

use womcap::output::write_sweep;
use womcap::{run_sweep, Mode, ParamKey, ScenarioParams, SweepSpec};

fn main() -> womcap::Result<()> {
    let mut args = env::args().skip(1);
    let samples = args.next().map_or(Ok(24), |s| s.parse()).expect("samples");
    let seed = args.next().map_or(Ok(11), |s| s.parse()).expect("seed");
    let spec = SweepSpec {
        base: ScenarioParams::from_file(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../scenarios/alpha_variable.txt"
        ))?,
        param: ParamKey::Alpha,
        samples,
        seed,
        mode: Mode::Variable,
    };
    let rows = run_sweep(&spec, true)?;
    write_sweep(io::stdout().lock(), &rows)?;
    let peak = rows.iter().max_by(|a, b| a.voi_pct.total_cmp(&b.voi_pct));
    if let Some(r) = peak {
        eprintln!("largest gap {:.2}% at alpha = {:.3}", r.voi_pct, r.value);
    }
    Ok(())
}
