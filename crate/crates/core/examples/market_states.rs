//! Market states by reputation for each capacity scenario.

use std::fs;

use womcap::{classify_state, omega, thresholds, Scenario, ScenarioParams};

fn main() -> womcap::Result<()> {
    let mut files: Vec<_> = fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios"))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with("_constant.txt"))
        .collect();
    files.sort();
    for path in files {
        let sc = Scenario::new(ScenarioParams::from_file(&path)?)?;
        let t = thresholds(&sc)?;
        let strip: String = (0..=40)
            .map(|i| classify_state(&sc, i as f64 / 40.0).map(|s| s.as_char()))
            .collect::<womcap::Result<_>>()?;
        println!("{}", path.file_stem().unwrap().to_string_lossy());
        println!(
            "  x1 {:.4}  x2 {:.4}  y1 {:.4}  y2 {:.4}",
            t.x1, t.x2, t.y1, t.y2
        );
        println!("  omega {}  R 0..1: {strip}", omega(&sc)?);
    }
    Ok(())
}
