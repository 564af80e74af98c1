//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use womcap::{
    classify_state, sample_params, simulate, thresholds, AdLevel, AdPolicy, FixedCapacity,
    MarketState, MatchDemand, Mode, OmegaSet, Scenario, ScenarioParams,
};

/// A random instance with its horizon redrawn on `1..=max_n`.
pub fn random_instance(seed: u64, mode: Mode, max_n: usize) -> Scenario {
    let mut p = sample_params(seed, mode).expect("sampling succeeds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    p.horizon = rng.random_range(1..=max_n);
    Scenario::new(p).unwrap()
}

pub fn policy_from_mask(mask: u64, n: usize) -> AdPolicy {
    // Period 1 is the most significant bit, so increasing masks are in L-first lexicographic order.
    (0..n)
        .map(|i| {
            if mask >> (n - 1 - i) & 1 == 1 {
                AdLevel::High
            } else {
                AdLevel::Low
            }
        })
        .collect()
}

/// Unpruned enumeration of every advertisement sequence. Returns the best
/// profit and the first sequence (in L-first order) attaining it.
pub fn enumerate(sc: &Scenario) -> (f64, AdPolicy) {
    let n = sc.horizon;
    let mut best = f64::NEG_INFINITY;
    let mut best_policy = AdPolicy::default();
    for mask in 0..(1u64 << n) {
        let policy = policy_from_mask(mask, n);
        let traj = match sc.capacity {
            Some(s) => simulate(sc, &policy, &FixedCapacity(s)),
            None => simulate(sc, &policy, &MatchDemand),
        }
        .unwrap();
        if best == f64::NEG_INFINITY || traj.total_profit > best + 1e-12 * best.abs().max(1.0) {
            best = traj.total_profit;
            best_policy = policy;
        }
    }
    (best, best_policy)
}

/// All optimal sequences, within a relative tolerance.
pub fn all_optima(sc: &Scenario, rel: f64) -> Vec<AdPolicy> {
    let n = sc.horizon;
    let profits: Vec<(f64, AdPolicy)> = (0..(1u64 << n))
        .map(|mask| {
            let policy = policy_from_mask(mask, n);
            let traj = match sc.capacity {
                Some(s) => simulate(sc, &policy, &FixedCapacity(s)),
                None => simulate(sc, &policy, &MatchDemand),
            }
            .unwrap();
            (traj.total_profit, policy)
        })
        .collect();
    let best = profits
        .iter()
        .map(|p| p.0)
        .fold(f64::NEG_INFINITY, f64::max);
    profits
        .into_iter()
        .filter(|(p, _)| *p >= best - rel * best.abs().max(1.0))
        .map(|(_, pol)| pol)
        .collect()
}

/// One-period profit computed from first principles.
pub fn period_profit_direct(p: &ScenarioParams, r: f64, level: AdLevel) -> f64 {
    let a = match level {
        AdLevel::Low => p.l_level,
        AdLevel::High => p.h_level,
    };
    let post = r + (1.0 - r) * a.powf(p.alpha);
    let d = if post > 0.0 {
        (p.market_size * (1.0 - (p.reservation + p.price) / (p.rep_value * post))).max(0.0)
    } else {
        0.0
    };
    let s = p.capacity.unwrap_or(d);
    p.price * s.min(d) - p.cap_cost * s - p.ad_cost * a
}

/// Myopic choice by comparing both levels directly; ties go to L.
pub fn direct_choice(p: &ScenarioParams, r: f64) -> AdLevel {
    if period_profit_direct(p, r, AdLevel::High) > period_profit_direct(p, r, AdLevel::Low) {
        AdLevel::High
    } else {
        AdLevel::Low
    }
}

/// Locates the sign change of `f` on a uniform grid of `points` over `(0, 1)`,
/// returning the midpoint of the bracketing cell.
pub fn grid_scan_root(f: impl Fn(f64) -> f64, points: usize) -> Option<f64> {
    let step = 1.0 / (points + 1) as f64;
    let mut prev_x = step;
    let mut prev = f(prev_x);
    for i in 2..=points {
        let x = i as f64 * step;
        let v = f(x);
        if (prev > 0.0) != (v > 0.0) {
            return Some(0.5 * (prev_x + x));
        }
        prev = v;
        prev_x = x;
    }
    None
}

/// States observed when sampling reputation densely on `[0, 1]`, plus the
/// threshold points themselves, points just beside them, and the midpoint of
/// every gap between consecutive thresholds.
pub fn dense_omega(sc: &Scenario, grid: usize) -> OmegaSet {
    let t = thresholds(sc).unwrap();
    let mut probes: Vec<f64> = (0..=grid).map(|i| i as f64 / grid as f64).collect();
    let mut cuts: Vec<f64> = [t.x1, t.x2, t.y1, t.y2]
        .into_iter()
        .filter(|x| x.is_finite() && (0.0..=1.0).contains(x))
        .collect();
    cuts.extend([0.0, 1.0]);
    cuts.sort_by(f64::total_cmp);
    for pair in cuts.windows(2) {
        probes.push(0.5 * (pair[0] + pair[1]));
    }
    for c in &cuts {
        probes.extend([*c, c - 1e-9, c + 1e-9]);
    }
    probes
        .into_iter()
        .filter(|r| (0.0..=1.0).contains(r))
        .map(|r| classify_state(sc, r).unwrap())
        .collect()
}

pub fn is_state(sc: &Scenario, r: f64, state: MarketState) -> bool {
    classify_state(sc, r).unwrap() == state
}
