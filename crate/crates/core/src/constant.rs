//! Policies under a fixed service capacity `S`.
//!
//! When demand exceeds capacity the fill rate drops and word-of-mouth pulls
//! reputation down, so reputation can fall as well as rise. With the
//! dynamics deterministic, the exact optimum is a search over
//! advertisement prefixes. A discretized value iteration is the
//! approximation for long horizons.

use crate::error::{Error, Result};
use crate::model::{advance, demand, lift, simulate, FixedCapacity};
use crate::params::{AdLevel, Scenario, EPS};
use crate::policy::AdPolicy;
use crate::states::{capacity_ratio, classify_state, omega, MarketState};
use crate::variable::{tie_tol, SolveMethod, SolveResult};

/// Default node budget of the exact search.
pub const DEFAULT_NODE_CAP: u64 = 1 << 27;

/// Default grid size of the discretized solver.
pub const DEFAULT_GRID: usize = 2001;

/// Longest horizon solved exactly by default.
pub const EXACT_MAX_N: usize = 25;

/// Upper bound on the profit of the remaining `remaining` periods from
/// reputation `r`. Each period earns at most what high advertisement would
/// sell at low advertisement cost, along the fastest possible reputation path.
fn optimistic_tail(sc: &Scenario, s: f64, mut r: f64, remaining: usize) -> f64 {
    let flat = sc.price * s.min(sc.market_size) - sc.cap_cost * s - sc.ad_cost * sc.l_level;
    let hp = sc.ad_power(AdLevel::High);
    let mut total = 0.0;
    for j in 0..remaining {
        if r >= 1.0 {
            return total + flat * (remaining - j) as f64;
        }
        let post = lift(r, hp);
        let sold = s.min(demand(sc, post));
        total += sc.price * sold - sc.cap_cost * s - sc.ad_cost * sc.l_level;
        r = (1.0 - sc.w) * post + sc.w;
    }
    total
}

/// Exact optimum by depth-first branch and bound.
///
/// Low advertisement is explored first and an incumbent is only replaced by
/// a strictly better sequence, so among tied optima the lexicographically
/// L-first sequence is returned.
pub fn solve_aware_constant_exact(sc: &Scenario, node_cap: u64) -> Result<SolveResult> {
    let s = sc.require_capacity()?;
    struct Search<'a> {
        sc: &'a Scenario,
        s: f64,
        cap: u64,
        nodes: u64,
        prefix: Vec<AdLevel>,
        best: f64,
        best_levels: Vec<AdLevel>,
    }
    impl Search<'_> {
        fn go(&mut self, r: f64, acc: f64) -> Result<()> {
            let depth = self.prefix.len();
            if depth == self.sc.horizon {
                if self.best == f64::NEG_INFINITY || acc > self.best + tie_tol(self.best) {
                    self.best = acc;
                    self.best_levels.clone_from(&self.prefix);
                }
                return Ok(());
            }
            if self.best.is_finite() {
                let bound = acc + optimistic_tail(self.sc, self.s, r, self.sc.horizon - depth);
                if bound <= self.best + tie_tol(self.best) {
                    return Ok(());
                }
            }
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::NodeCapExceeded { cap: self.cap });
            }
            for level in AdLevel::BOTH {
                let out = advance(self.sc, r, level, Some(self.s));
                self.prefix.push(level);
                self.go(out.next, acc + out.profit)?;
                self.prefix.pop();
            }
            Ok(())
        }
    }
    let mut search = Search {
        sc,
        s,
        cap: node_cap,
        nodes: 0,
        prefix: Vec::with_capacity(sc.horizon),
        best: f64::NEG_INFINITY,
        best_levels: Vec::new(),
    };
    search.go(sc.r1, 0.0)?;
    let policy = AdPolicy::new(search.best_levels);
    let traj = simulate(sc, &policy, &FixedCapacity(s))?;
    Ok(SolveResult::new(
        policy,
        traj,
        SolveMethod::BranchAndBound,
        search.nodes,
    ))
}

/// Linear interpolation of grid values at `r` in `[0, 1]`.
fn interpolate(values: &[f64], r: f64) -> f64 {
    let last = values.len() - 1;
    let x = r.clamp(0.0, 1.0) * last as f64;
    let i = (x.floor() as usize).min(last - 1);
    let t = x - i as f64;
    values[i] * (1.0 - t) + values[i + 1] * t
}

/// Approximate optimum from backward induction on a uniform reputation grid.
///
/// Continuation values between grid points are interpolated linearly. The
/// policy is then read off forward from the exact starting reputation and
/// simulated exactly, so the reported profit is attained.
pub fn solve_aware_constant_grid(sc: &Scenario, grid_size: usize) -> Result<SolveResult> {
    let s = sc.require_capacity()?;
    if grid_size < 2 {
        return Err(Error::Domain(format!(
            "grid size {grid_size} must be at least 2"
        )));
    }
    let n = sc.horizon;
    let step = 1.0 / (grid_size - 1) as f64;
    // values[i] is the value function at the start of period i + 1; values[n] = 0.
    let mut values = vec![vec![0.0; grid_size]; n + 1];
    for i in (0..n).rev() {
        let (head, tail) = values.split_at_mut(i + 1);
        let next = &tail[0];
        for (g, v) in head[i].iter_mut().enumerate() {
            let r = g as f64 * step;
            *v = AdLevel::BOTH
                .iter()
                .map(|&a| {
                    let out = advance(sc, r, a, Some(s));
                    out.profit + interpolate(next, out.next)
                })
                .fold(f64::NEG_INFINITY, f64::max);
        }
    }
    let mut r = sc.r1;
    let mut levels = Vec::with_capacity(n);
    for next in &values[1..] {
        let low = advance(sc, r, AdLevel::Low, Some(s));
        let high = advance(sc, r, AdLevel::High, Some(s));
        let (level, out) = if high.profit + interpolate(next, high.next)
            > low.profit + interpolate(next, low.next)
        {
            (AdLevel::High, high)
        } else {
            (AdLevel::Low, low)
        };
        levels.push(level);
        r = out.next;
    }
    let policy = AdPolicy::new(levels);
    let traj = simulate(sc, &policy, &FixedCapacity(s))?;
    Ok(SolveResult::new(
        policy,
        traj,
        SolveMethod::GridDp,
        (n * grid_size) as u64,
    ))
}

/// Period-by-period profit maximization under the fixed capacity; ties go to L.
pub fn solve_naive_constant(sc: &Scenario) -> Result<SolveResult> {
    let s = sc.require_capacity()?;
    let mut r = sc.r1;
    let mut levels = Vec::with_capacity(sc.horizon);
    for _ in 0..sc.horizon {
        let low = advance(sc, r, AdLevel::Low, Some(s));
        let high = advance(sc, r, AdLevel::High, Some(s));
        let (level, out) = if high.profit > low.profit {
            (AdLevel::High, high)
        } else {
            (AdLevel::Low, low)
        };
        levels.push(level);
        r = out.next;
    }
    let policy = AdPolicy::new(levels);
    let traj = simulate(sc, &policy, &FixedCapacity(s))?;
    Ok(SolveResult::new(
        policy,
        traj,
        SolveMethod::Myopic,
        sc.horizon as u64,
    ))
}

/// True when a permanently fixed capacity can absorb the market's largest
/// possible demand, `Lambda (1 - (u+p)/m) <= S`.
pub fn prop4_applies(sc: &Scenario) -> Result<bool> {
    let s = sc.require_capacity()?;
    Ok(sc.market_size * (1.0 - sc.taste_ratio()) <= s + EPS)
}

/// Number of high periods under the rule "low in state A, high otherwise".
///
/// Requires that high advertisement always fills capacity, i.e. the only
/// observable states are A, B and D.
pub fn lemma1_upper_bound(sc: &Scenario) -> Result<usize> {
    let s = sc.require_capacity()?;
    let om = omega(sc)?;
    if !om.is_subset_of(&[MarketState::A, MarketState::B, MarketState::D]) {
        return Err(Error::LemmaInapplicable(format!(
            "states {om} include one where high advertisement leaves capacity idle"
        )));
    }
    let mut r = sc.r1;
    let mut highs = 0;
    for _ in 0..sc.horizon {
        let level = if classify_state(sc, r)? == MarketState::A {
            AdLevel::Low
        } else {
            highs += 1;
            AdLevel::High
        };
        r = advance(sc, r, level, Some(s)).next;
    }
    Ok(highs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prop5Report {
    /// Both conditions hold: once in state A, low advertisement keeps the firm there.
    pub applicable: bool,
    pub x1: f64,
    /// Reputations whose low-advertisement successor would leave state A,
    /// as an interval `(lo, hi)`. `None` when no real interval exists.
    pub roots: Option<(f64, f64)>,
    /// `1 > K > L^alpha`: state A exists and is not the only state.
    pub condition15_holds: bool,
    /// The leaving interval misses `[x1, 1)`.
    pub intervals_disjoint: bool,
}

/// Checks whether state A is absorbing under low advertisement.
///
/// In state A with low advertisement the next reputation falls below `x1`
/// exactly when the post-ad reputation `R'` satisfies
/// `(1-w) R'^2 + b R' + x1 k < 0` with `b = wS/Lambda - x1 - (1-w) k`.
pub fn prop5_check(sc: &Scenario) -> Result<Prop5Report> {
    let s = sc.require_capacity()?;
    let st = crate::states::thresholds(sc)?;
    let k = sc.taste_ratio();
    let big_k = capacity_ratio(sc, s);
    let lp = sc.ad_power(AdLevel::Low);
    let x1 = st.x1;
    let condition15_holds = big_k < 1.0 && big_k > lp;

    let to_r = |post: f64| (post - lp) / (1.0 - lp);
    let a = 1.0 - sc.w;
    let b = sc.w * s / sc.market_size - x1 - a * k;
    let c = x1 * k;
    let roots = if !x1.is_finite() || x1 <= 0.0 {
        None
    } else if a <= EPS {
        // Linear case: b R' + c < 0.
        (b < 0.0).then(|| (to_r(-c / b), f64::INFINITY))
    } else {
        let disc = b * b - 4.0 * a * c;
        (disc >= 0.0).then(|| {
            let sq = disc.sqrt();
            (to_r((-b - sq) / (2.0 * a)), to_r((-b + sq) / (2.0 * a)))
        })
    };
    let intervals_disjoint = match roots {
        None => true,
        Some((lo, hi)) => lo.max(x1) >= hi.min(1.0),
    };
    Ok(Prop5Report {
        applicable: condition15_holds && intervals_disjoint,
        x1,
        roots,
        condition15_holds,
        intervals_disjoint,
    })
}
