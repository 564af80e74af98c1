//! Random instances, one-parameter sweeps and the value of information.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constant::{
    solve_aware_constant_exact, solve_aware_constant_grid, solve_naive_constant, DEFAULT_GRID,
    DEFAULT_NODE_CAP,
};
use crate::error::{Error, Result};
use crate::params::{ParamKey, Scenario, ScenarioParams};
use crate::policy::AdPolicy;
use crate::states::{omega, OmegaSet};
use crate::variable::{solve_aware_variable, solve_naive_variable, SolveMethod, SolveResult};

/// Capacity regime of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Variable,
    Constant,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Variable => "variable",
            Mode::Constant => "constant",
        }
    }

    /// Keys that may be swept in this mode.
    pub fn sweepable(self) -> Vec<ParamKey> {
        ParamKey::ALL
            .into_iter()
            .filter(|k| match self {
                Mode::Variable => *k != ParamKey::S,
                Mode::Constant => *k != ParamKey::C,
            })
            .collect()
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "variable" => Ok(Mode::Variable),
            "constant" => Ok(Mode::Constant),
            _ => Err(Error::Usage(format!("unknown mode `{s}`"))),
        }
    }
}

/// Longest horizon swept with the exact constant-capacity solver.
pub const SWEEP_EXACT_MAX_N: usize = 20;

const MAX_REJECTIONS: usize = 10_000;

/// Draws one value of `key` from its sampling distribution. `ctx` supplies
/// the parameters a distribution depends on (`h` on `l`, `p` on `c`, `s` on `lambda`).
fn draw(rng: &mut ChaCha8Rng, key: ParamKey, ctx: &ScenarioParams, mode: Mode) -> f64 {
    let mut uniform = |lo: f64, hi: f64| lo + (hi - lo) * rng.random::<f64>();
    match key {
        ParamKey::R1 | ParamKey::L | ParamKey::W => uniform(0.0, 1.0),
        ParamKey::H => uniform(ctx.l_level, 1.0),
        ParamKey::Alpha => uniform(0.0, 10.0),
        ParamKey::Lambda => uniform(500.0, 2500.0),
        ParamKey::C => uniform(0.0, 10.0),
        ParamKey::M => uniform(5.0, 40.0),
        ParamKey::U => uniform(0.0, 5.0),
        ParamKey::P => uniform(ctx.cap_cost, 25.0),
        ParamKey::CA => uniform(1.0, 1000.0),
        ParamKey::N => match mode {
            Mode::Variable => uniform(5.0, 50.0).round(),
            Mode::Constant => uniform(5.0, 25.0).round(),
        },
        ParamKey::S => uniform(1.0, ctx.market_size),
    }
}

/// A random valid instance. The same seed always gives the same instance.
pub fn sample_params(seed: u64, mode: Mode) -> Result<ScenarioParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let mut p = ScenarioParams {
            r1: 0.0,
            l_level: 0.0,
            h_level: 0.0,
            alpha: 0.0,
            w: 0.0,
            market_size: 0.0,
            cap_cost: 0.0,
            rep_value: 0.0,
            reservation: 0.0,
            price: 0.0,
            ad_cost: 0.0,
            horizon: 0,
            capacity: None,
        };
        for key in ParamKey::ALL {
            if key == ParamKey::S && mode == Mode::Variable {
                continue;
            }
            let v = draw(&mut rng, key, &p, mode);
            key.set(&mut p, v);
        }
        if p.validate().is_ok() {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(MAX_REJECTIONS))
}

/// Percentage profit gap between the aware and naive firm. Negative profits
/// count as zero since a firm would not operate at a loss.
pub fn voi(profit_aware: f64, profit_naive: f64) -> f64 {
    let a = profit_aware.max(0.0);
    let n = profit_naive.max(0.0);
    if a <= 0.0 {
        0.0
    } else {
        ((a - n) / a * 100.0).clamp(0.0, 100.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub base: ScenarioParams,
    pub param: ParamKey,
    pub samples: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.mode.sweepable().contains(&self.param) {
            return Err(Error::Usage(format!(
                "parameter `{}` cannot be swept in {} mode",
                self.param, self.mode
            )));
        }
        let base = normalize_base(self.base, self.mode)?;
        base.validate()
    }
}

/// One evaluated sample of a sweep. Skipped samples carry a reason and zeroed results.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: ParamKey,
    pub value: f64,
    /// Aware total profit, clamped at zero.
    pub profit_aware: f64,
    /// Naive total profit, clamped at zero.
    pub profit_naive: f64,
    pub voi_pct: f64,
    pub policy_aware: AdPolicy,
    pub policy_naive: AdPolicy,
    pub omega: Option<OmegaSet>,
    pub method: Option<SolveMethod>,
    pub skipped: Option<String>,
}

impl SweepRow {
    fn skipped(param: ParamKey, value: f64, reason: String) -> Self {
        SweepRow {
            param,
            value,
            profit_aware: 0.0,
            profit_naive: 0.0,
            voi_pct: 0.0,
            policy_aware: AdPolicy::default(),
            policy_naive: AdPolicy::default(),
            omega: None,
            method: None,
            skipped: Some(reason),
        }
    }
}

fn normalize_base(base: ScenarioParams, mode: Mode) -> Result<ScenarioParams> {
    match mode {
        Mode::Variable => Ok(base.with_capacity(None)),
        Mode::Constant if base.capacity.is_some() => Ok(base),
        Mode::Constant => Err(Error::CapacityMode(
            "constant-mode sweep needs a base capacity `s`",
        )),
    }
}

/// Aware and naive solutions for one instance in the given mode.
pub fn solve_pair(sc: &Scenario, mode: Mode) -> Result<(SolveResult, SolveResult)> {
    match mode {
        Mode::Variable => Ok((solve_aware_variable(sc)?, solve_naive_variable(sc)?)),
        Mode::Constant => {
            let aware = if sc.horizon <= SWEEP_EXACT_MAX_N {
                match solve_aware_constant_exact(sc, DEFAULT_NODE_CAP) {
                    Err(Error::NodeCapExceeded { .. }) => {
                        solve_aware_constant_grid(sc, DEFAULT_GRID)?
                    }
                    other => other?,
                }
            } else {
                solve_aware_constant_grid(sc, DEFAULT_GRID)?
            };
            Ok((aware, solve_naive_constant(sc)?))
        }
    }
}

fn evaluate(base: &ScenarioParams, param: ParamKey, value: f64, mode: Mode) -> SweepRow {
    let mut p = *base;
    param.set(&mut p, value);
    let sc = match Scenario::new(p) {
        Ok(sc) => sc,
        Err(e) => return SweepRow::skipped(param, value, e.to_string()),
    };
    let (aware, naive) = match solve_pair(&sc, mode) {
        Ok(pair) => pair,
        Err(e) => return SweepRow::skipped(param, value, e.to_string()),
    };
    let omega = match mode {
        Mode::Constant => omega(&sc).ok(),
        Mode::Variable => None,
    };
    SweepRow {
        param,
        value,
        profit_aware: aware.total_profit.max(0.0),
        profit_naive: naive.total_profit.max(0.0),
        voi_pct: voi(aware.total_profit, naive.total_profit),
        policy_aware: aware.policy,
        policy_naive: naive.policy,
        omega,
        method: Some(aware.method),
        skipped: None,
    }
}

fn sort_rows(mut rows: Vec<SweepRow>) -> Vec<SweepRow> {
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    rows
}

/// Evaluates `values` of `param` on top of `base`, keeping all other parameters fixed.
pub fn run_values(
    base: &ScenarioParams,
    param: ParamKey,
    values: &[f64],
    mode: Mode,
    parallel: bool,
) -> Result<Vec<SweepRow>> {
    let base = normalize_base(*base, mode)?;
    let rows = if parallel {
        values
            .par_iter()
            .map(|&v| evaluate(&base, param, v, mode))
            .collect()
    } else {
        values
            .iter()
            .map(|&v| evaluate(&base, param, v, mode))
            .collect()
    };
    Ok(sort_rows(rows))
}

/// Values drawn for a sweep: sample `i` uses its own generator seeded with `seed ^ i`.
pub fn sweep_values(spec: &SweepSpec) -> Vec<f64> {
    (0..spec.samples)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ i as u64);
            draw(&mut rng, spec.param, &spec.base, spec.mode)
        })
        .collect()
}

/// Runs a sweep; rows are sorted by the swept value. Serial and parallel
/// runs give identical rows.
pub fn run_sweep(spec: &SweepSpec, parallel: bool) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    run_values(
        &spec.base,
        spec.param,
        &sweep_values(spec),
        spec.mode,
        parallel,
    )
}

/// The full experiment grid: `scenarios` random base instances, each swept
/// over every sweepable parameter. Base instance `j` is drawn with seed
/// `seed + j`, and its sweeps reuse that seed.
pub fn run_grid(
    seed: u64,
    mode: Mode,
    scenarios: usize,
    samples: usize,
) -> Result<Vec<(usize, Vec<SweepRow>)>> {
    let mut out = Vec::new();
    for j in 0..scenarios {
        let base_seed = seed.wrapping_add(j as u64);
        let base = sample_params(base_seed, mode)?;
        for param in mode.sweepable() {
            let spec = SweepSpec {
                base,
                param,
                samples,
                seed: base_seed,
                mode,
            };
            out.push((j, run_sweep(&spec, true)?));
        }
    }
    Ok(out)
}
