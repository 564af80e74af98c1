//! Policies when capacity is chosen every period.
//!
//! Matching capacity to demand is optimal period by period, so only the
//! advertisement sequence has to be searched. The aware optimum advertises
//! high for some prefix of the horizon and low afterwards, which leaves
//! `N + 1` candidates.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{advance, simulate, MatchDemand, Trajectory};
use crate::params::{AdLevel, Scenario};
use crate::policy::AdPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    SwitchingSearch,
    Myopic,
    Exhaustive,
    BranchAndBound,
    GridDp,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::SwitchingSearch => "switching_search",
            SolveMethod::Myopic => "myopic",
            SolveMethod::Exhaustive => "exhaustive",
            SolveMethod::BranchAndBound => "branch_and_bound",
            SolveMethod::GridDp => "grid_dp",
        }
    }
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub policy: AdPolicy,
    pub trajectory: Trajectory,
    pub total_profit: f64,
    pub method: SolveMethod,
    pub nodes_explored: u64,
    pub switching_points: Vec<usize>,
}

impl SolveResult {
    pub(crate) fn new(
        policy: AdPolicy,
        trajectory: Trajectory,
        method: SolveMethod,
        nodes_explored: u64,
    ) -> Self {
        SolveResult {
            switching_points: policy.switching_points(),
            total_profit: trajectory.total_profit,
            policy,
            trajectory,
            method,
            nodes_explored,
        }
    }
}

/// Absolute slack below which two total profits count as tied.
pub(crate) fn tie_tol(best: f64) -> f64 {
    1e-12 * best.abs().max(1.0)
}

/// Default horizon cap of [`exhaustive_variable`].
pub const EXHAUSTIVE_MAX_N: usize = 14;

/// Best single-switch policy `H^k L^(N-k)`; ties go to the smallest `k`.
pub fn solve_aware_variable(sc: &Scenario) -> Result<SolveResult> {
    sc.require_variable()?;
    let n = sc.horizon;
    let mut best: Option<(AdPolicy, Trajectory)> = None;
    for k in 0..=n {
        let policy = AdPolicy::single_switch(k, n);
        let traj = simulate(sc, &policy, &MatchDemand)?;
        let better = match &best {
            None => true,
            Some((_, b)) => traj.total_profit > b.total_profit + tie_tol(b.total_profit),
        };
        if better {
            best = Some((policy, traj));
        }
    }
    let (policy, traj) = best.expect("at least one candidate");
    Ok(SolveResult::new(
        policy,
        traj,
        SolveMethod::SwitchingSearch,
        n as u64 + 1,
    ))
}

/// Period-by-period profit maximization; ties go to low advertisement.
pub fn solve_naive_variable(sc: &Scenario) -> Result<SolveResult> {
    sc.require_variable()?;
    let mut r = sc.r1;
    let mut levels = Vec::with_capacity(sc.horizon);
    for _ in 0..sc.horizon {
        let low = advance(sc, r, AdLevel::Low, None);
        let high = advance(sc, r, AdLevel::High, None);
        let (level, out) = if high.profit > low.profit {
            (AdLevel::High, high)
        } else {
            (AdLevel::Low, low)
        };
        levels.push(level);
        r = out.next;
    }
    let policy = AdPolicy::new(levels);
    let traj = simulate(sc, &policy, &MatchDemand)?;
    Ok(SolveResult::new(
        policy,
        traj,
        SolveMethod::Myopic,
        sc.horizon as u64,
    ))
}

/// True optimum over all `2^N` sequences with capacity matched to demand.
///
/// Among tied optima the one with the fewest high periods wins, then the
/// one that advertises high earliest.
pub fn exhaustive_variable(sc: &Scenario, max_n: usize) -> Result<SolveResult> {
    sc.require_variable()?;
    if sc.horizon > max_n {
        return Err(Error::HorizonTooLarge {
            horizon: sc.horizon,
            cap: max_n,
        });
    }
    struct Search<'a> {
        sc: &'a Scenario,
        prefix: Vec<AdLevel>,
        best: Option<(f64, usize, Vec<AdLevel>)>,
        nodes: u64,
    }
    impl Search<'_> {
        fn go(&mut self, r: f64, acc: f64, highs: usize) {
            if self.prefix.len() == self.sc.horizon {
                let better = match &self.best {
                    None => true,
                    Some((bp, bh, bl)) => {
                        let tol = tie_tol(*bp);
                        acc > bp + tol
                            || ((acc - bp).abs() <= tol
                                && (highs < *bh || (highs == *bh && self.prefix > *bl)))
                    }
                };
                if better {
                    self.best = Some((acc, highs, self.prefix.clone()));
                }
                return;
            }
            self.nodes += 1;
            for level in [AdLevel::High, AdLevel::Low] {
                let out = advance(self.sc, r, level, None);
                self.prefix.push(level);
                self.go(
                    out.next,
                    acc + out.profit,
                    highs + (level == AdLevel::High) as usize,
                );
                self.prefix.pop();
            }
        }
    }
    let mut search = Search {
        sc,
        prefix: Vec::with_capacity(sc.horizon),
        best: None,
        nodes: 0,
    };
    search.go(sc.r1, 0.0, 0);
    let (_, _, levels) = search.best.expect("nonempty search");
    let policy = AdPolicy::new(levels);
    let traj = simulate(sc, &policy, &MatchDemand)?;
    Ok(SolveResult::new(
        policy,
        traj,
        SolveMethod::Exhaustive,
        search.nodes,
    ))
}

/// Checks that moving any single period's capacity to `D_i (1 +/- fraction)`
/// never raises total profit. Periods without demand are skipped.
pub fn check_capacity_optimality(sc: &Scenario, policy: &AdPolicy, fraction: f64) -> Result<bool> {
    if fraction.is_nan() || fraction <= 0.0 {
        return Err(Error::Domain(format!(
            "perturbation {fraction} must be positive"
        )));
    }
    let base = simulate(sc, policy, &MatchDemand)?;
    for rec in &base.records {
        if rec.demand <= 0.0 {
            continue;
        }
        for sign in [-1.0, 1.0] {
            let target = rec.period;
            let rule = |period: usize, d: f64| {
                if period == target {
                    d * (1.0 + sign * fraction)
                } else {
                    d
                }
            };
            let perturbed = simulate(sc, policy, &rule)?;
            if perturbed.total_profit > base.total_profit + tie_tol(base.total_profit) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
