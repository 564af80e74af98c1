use std::path::Path;

use womcap::experiments::{run_values, solve_pair, sweep_values, voi, SweepSpec};
use womcap::output::{read_sweep, write_sweep};
use womcap::*;

fn base(name: &str) -> ScenarioParams {
    ScenarioParams::from_file(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../scenarios")
            .join(name),
    )
    .unwrap()
}

fn spec(name: &str, param: ParamKey, samples: usize, seed: u64, mode: Mode) -> SweepSpec {
    SweepSpec {
        base: base(name),
        param,
        samples,
        seed,
        mode,
    }
}

#[test]
fn sweeps_are_deterministic() {
    let s = spec("alpha_variable.txt", ParamKey::Alpha, 16, 3, Mode::Variable);
    let a = run_sweep(&s, true).unwrap();
    assert_eq!(a, run_sweep(&s, true).unwrap());
    assert_eq!(a, run_sweep(&s, false).unwrap());
    assert!(a.windows(2).all(|w| w[0].value <= w[1].value));
    assert_ne!(sweep_values(&s), sweep_values(&SweepSpec { seed: 4, ..s }));
}

#[test]
fn value_of_information_is_a_bounded_percentage() {
    assert_eq!(voi(-5.0, -10.0), 0.0);
    assert_eq!(voi(0.0, 3.0), 0.0);
    assert_eq!(voi(10.0, -1.0), 100.0);
    assert_eq!(voi(10.0, 12.0), 0.0);
    for (name, param, mode) in [
        ("cycling_constant.txt", ParamKey::W, Mode::Constant),
        ("price_variable_1.txt", ParamKey::P, Mode::Variable),
    ] {
        for row in run_sweep(&spec(name, param, 20, 9, mode), true).unwrap() {
            assert!((0.0..=100.0).contains(&row.voi_pct), "{row:?}");
            if row.profit_aware == 0.0 {
                assert_eq!(row.voi_pct, 0.0);
            }
        }
    }
}

#[test]
fn aware_profit_rises_along_a_start_sweep() {
    let rows = run_sweep(
        &spec("r1_variable.txt", ParamKey::R1, 30, 21, Mode::Variable),
        true,
    )
    .unwrap();
    assert!(rows
        .windows(2)
        .all(|w| w[1].profit_aware >= w[0].profit_aware - 1e-9));
}

#[test]
fn capacity_sweep_peaks_and_favours_foresight_when_tight() {
    let p = base("cycling_constant.txt");
    let values: Vec<f64> = (1..=20).map(|i| i as f64 * p.market_size / 20.0).collect();
    let rows = run_values(&p, ParamKey::S, &values, Mode::Constant, true).unwrap();
    let profits: Vec<f64> = rows.iter().map(|r| r.profit_aware).collect();
    let peak = profits
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!(peak > 0 && peak < profits.len() - 1);
    assert!(profits[..=peak].windows(2).all(|w| w[1] >= w[0]));
    assert!(profits[peak..].windows(2).all(|w| w[1] <= w[0]));
    let best_voi = rows
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.voi_pct.total_cmp(&b.1.voi_pct))
        .unwrap()
        .0;
    assert!(best_voi < rows.len() / 4);
    assert!(rows[best_voi].voi_pct > 50.0);
}

#[test]
fn single_sample_matches_a_direct_solve() {
    for (name, param, mode) in [
        ("alpha_constant.txt", ParamKey::Alpha, Mode::Constant),
        ("alpha_variable.txt", ParamKey::Lambda, Mode::Variable),
    ] {
        let s = spec(name, param, 1, 77, mode);
        let row = &run_sweep(&s, false).unwrap()[0];
        let mut p = s.base;
        if mode == Mode::Variable {
            p = p.with_capacity(None);
        }
        param.set(&mut p, row.value);
        let (aware, naive) = solve_pair(&Scenario::new(p).unwrap(), mode).unwrap();
        assert_eq!(row.policy_aware, aware.policy);
        assert_eq!(row.policy_naive, naive.policy);
        assert_eq!(row.profit_aware, aware.total_profit.max(0.0));
        assert_eq!(row.profit_naive, naive.total_profit.max(0.0));
    }
}

#[test]
fn sweep_csv_round_trip() {
    let p = base("alpha_constant.txt");
    // The last value violates the parameter bounds and comes back as a skipped row.
    let rows = run_values(
        &p,
        ParamKey::W,
        &[0.2, 0.5, 0.8, 1.5],
        Mode::Constant,
        false,
    )
    .unwrap();
    assert!(rows[3].skipped.is_some());
    let mut buf = Vec::new();
    write_sweep(&mut buf, &rows).unwrap();
    let back = read_sweep(buf.as_slice()).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in rows.iter().zip(&back) {
        assert_eq!(a.policy_aware, b.policy_aware);
        assert_eq!(a.omega, b.omega);
        assert_eq!(a.method, b.method);
        assert_eq!(a.skipped.is_some(), b.skipped.is_some());
        assert!((a.profit_aware - b.profit_aware).abs() <= 1e-3 * a.profit_aware.max(1.0));
        assert!((a.voi_pct - b.voi_pct).abs() <= 1e-6);
    }
}
