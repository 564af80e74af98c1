//! Market dynamics: advertisement, demand, fill rate, word-of-mouth and profit.
//!
//! One period runs in a fixed order. Advertisement lifts the observed
//! reputation `R_i` to the post-advertisement reputation `R'_i`, consumers
//! with a high enough taste generate demand `D_i`, the firm serves
//! `min(S_i, D_i)` of it, and word-of-mouth about the realized fill rate
//! `F_i` produces the next reputation `R_{i+1}`.

use crate::error::{Error, Result};
use crate::params::{AdLevel, Scenario, ScenarioParams};
use crate::policy::AdPolicy;

/// Reputation after advertisement, `r + (1 - r) a^alpha`.
pub fn post_ad_reputation(r: f64, a: f64, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("reputation {r} outside [0, 1]")));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "advertisement intensity {a} outside (0, 1]"
        )));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!(
            "advertisement resistance {alpha} must be positive"
        )));
    }
    Ok(lift(r, a.powf(alpha)))
}

/// `r + (1 - r) * power` with the power precomputed.
#[inline]
pub(crate) fn lift(r: f64, power: f64) -> f64 {
    (r + (1.0 - r) * power).min(1.0)
}

/// Realized demand `max(0, Lambda (1 - (u+p) / (m R')))`; zero at `R' = 0`.
#[inline]
pub fn demand(params: &ScenarioParams, post_ad: f64) -> f64 {
    if post_ad <= 0.0 {
        return 0.0;
    }
    (params.market_size * (1.0 - params.taste_ratio() / post_ad)).max(0.0)
}

/// Served fraction of demand. Reported as 1 when there is no demand.
#[inline]
pub fn fill_rate(demand: f64, capacity: f64) -> f64 {
    if demand > 0.0 {
        capacity.min(demand) / demand
    } else {
        1.0
    }
}

/// Next reputation: `(1 - w) R' + w F` when demand was realized, else `R'`.
#[inline]
pub fn wom_update(params: &ScenarioParams, post_ad: f64, fill_rate: f64, demand: f64) -> f64 {
    if demand > 0.0 {
        ((1.0 - params.w) * post_ad + params.w * fill_rate).clamp(0.0, 1.0)
    } else {
        post_ad
    }
}

/// Period profit `p min(S, D) - c S - c_A A`.
#[inline]
pub fn period_profit(
    params: &ScenarioParams,
    demand: f64,
    capacity_used: f64,
    ad_intensity: f64,
) -> f64 {
    params.price * capacity_used.min(demand)
        - params.cap_cost * capacity_used
        - params.ad_cost * ad_intensity
}

/// Everything that happens in one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Outcome {
    pub post_ad: f64,
    pub demand: f64,
    pub capacity: f64,
    pub fill_rate: f64,
    pub profit: f64,
    pub next: f64,
}

/// Runs one period; `capacity = None` matches capacity to demand.
#[inline]
pub(crate) fn advance(sc: &Scenario, r: f64, level: AdLevel, capacity: Option<f64>) -> Outcome {
    let post_ad = lift(r, sc.ad_power(level));
    let demand = demand(sc, post_ad);
    let capacity = capacity.unwrap_or(demand);
    let fill = fill_rate(demand, capacity);
    Outcome {
        post_ad,
        demand,
        capacity,
        fill_rate: fill,
        profit: period_profit(sc, demand, capacity, level.intensity(sc)),
        next: wom_update(sc, post_ad, fill, demand),
    }
}

/// Capacity chosen in a period given the realized demand.
pub trait CapacityRule {
    /// `period` is 1-based.
    fn capacity(&self, period: usize, demand: f64) -> f64;
}

/// `S_i = D_i`, the optimal rule under variable capacity.
#[derive(Debug, Clone, Copy, Default)]
pub struct MatchDemand;

impl CapacityRule for MatchDemand {
    fn capacity(&self, _period: usize, demand: f64) -> f64 {
        demand
    }
}

/// The same capacity in every period.
#[derive(Debug, Clone, Copy)]
pub struct FixedCapacity(pub f64);

impl CapacityRule for FixedCapacity {
    fn capacity(&self, _period: usize, _demand: f64) -> f64 {
        self.0
    }
}

impl<F: Fn(usize, f64) -> f64> CapacityRule for F {
    fn capacity(&self, period: usize, demand: f64) -> f64 {
        self(period, demand)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodRecord {
    pub period: usize,
    pub reputation_in: f64,
    pub post_ad: f64,
    pub ad: AdLevel,
    pub demand: f64,
    pub capacity_used: f64,
    pub fill_rate: f64,
    pub profit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub records: Vec<PeriodRecord>,
    pub total_profit: f64,
    /// Reputation `R_{N+1}` after the last word-of-mouth update.
    pub final_reputation: f64,
}

impl Trajectory {
    pub fn reputations(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.reputation_in)
    }

    pub fn policy(&self) -> AdPolicy {
        self.records.iter().map(|r| r.ad).collect()
    }
}

/// Deterministic forward simulation of `policy` under `rule`.
pub fn simulate(sc: &Scenario, policy: &AdPolicy, rule: &impl CapacityRule) -> Result<Trajectory> {
    if policy.len() != sc.horizon {
        return Err(Error::PolicyLength {
            expected: sc.horizon,
            got: policy.len(),
        });
    }
    let mut records = Vec::with_capacity(sc.horizon);
    let mut r = sc.r1;
    let mut total = 0.0;
    for (idx, &level) in policy.levels().iter().enumerate() {
        let period = idx + 1;
        let post_ad = lift(r, sc.ad_power(level));
        let d = demand(sc, post_ad);
        let s = rule.capacity(period, d);
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!(
                "capacity {s} in period {period} must be nonnegative"
            )));
        }
        let fill = fill_rate(d, s);
        let profit = period_profit(sc, d, s, level.intensity(sc));
        records.push(PeriodRecord {
            period,
            reputation_in: r,
            post_ad,
            ad: level,
            demand: d,
            capacity_used: s,
            fill_rate: fill,
            profit,
        });
        total += profit;
        r = wom_update(sc, post_ad, fill, d);
    }
    Ok(Trajectory {
        records,
        total_profit: total,
        final_reputation: r,
    })
}

/// Simulation with the capacity rule implied by the scenario: the fixed `S`
/// when present, otherwise matching demand.
pub fn simulate_default(sc: &Scenario, policy: &AdPolicy) -> Result<Trajectory> {
    match sc.capacity {
        Some(s) => simulate(sc, policy, &FixedCapacity(s)),
        None => simulate(sc, policy, &MatchDemand),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::fixtures::*;
    use proptest::prelude::*;

    fn simple() -> ScenarioParams {
        ScenarioParams {
            r1: 0.3,
            l_level: 0.2,
            h_level: 0.5,
            alpha: 2.0,
            w: 0.5,
            market_size: 1000.0,
            cap_cost: 2.0,
            rep_value: 12.0,
            reservation: 1.0,
            price: 5.0,
            ad_cost: 100.0,
            horizon: 3,
            capacity: None,
        }
    }

    #[test]
    fn post_ad_examples() {
        assert_eq!(post_ad_reputation(0.5, 1.0, 3.7).unwrap(), 1.0);
        assert_eq!(post_ad_reputation(1.0, 0.3, 2.0).unwrap(), 1.0);
        assert!((post_ad_reputation(0.4, 0.5, 2.0).unwrap() - 0.55).abs() < 1e-15);
        assert!(post_ad_reputation(1.2, 0.5, 2.0).is_err());
        assert!(post_ad_reputation(0.2, 0.0, 2.0).is_err());
        assert!(post_ad_reputation(0.2, 0.5, 0.0).is_err());
    }

    #[test]
    fn demand_examples() {
        let p = simple();
        assert_eq!(p.reservation + p.price, 6.0);
        assert_eq!(demand(&p, 1.0), 500.0);
        assert_eq!(demand(&p, 0.5), 0.0);
        assert_eq!(demand(&p, 0.0), 0.0);
    }

    #[test]
    fn wom_examples() {
        let mut p = simple();
        p.w = 0.5;
        assert!((wom_update(&p, 0.8, 1.0, 10.0) - 0.9).abs() < 1e-15);
        p.w = 0.3;
        assert_eq!(wom_update(&p, 0.6, 0.2, 0.0), 0.6);
        for w in [0.0, 0.37, 1.0] {
            p.w = w;
            assert!((wom_update(&p, 0.7, 0.7, 5.0) - 0.7).abs() < 1e-15);
        }
    }

    #[test]
    fn profit_examples() {
        let mut p = simple();
        p.price = 10.0;
        p.cap_cost = 2.0;
        p.ad_cost = 100.0;
        assert_eq!(period_profit(&p, 50.0, 50.0, 0.5), 350.0);
        assert_eq!(period_profit(&p, 0.0, 0.0, p.l_level), -100.0 * p.l_level);
        let d = 37.5;
        assert_eq!(
            period_profit(&p, d, d, 0.2),
            (p.price - p.cap_cost) * d - p.ad_cost * 0.2
        );
    }

    #[test]
    fn simulate_matches_hand_unrolled_recursion() {
        let sc = Scenario::new(simple()).unwrap();
        let policy: AdPolicy = "HLH".parse().unwrap();
        let capacities = [30.0, 1000.0, 10.0];
        let rule = |period: usize, _d: f64| capacities[period - 1];
        let traj = simulate(&sc, &policy, &rule).unwrap();

        let k = 6.0 / 12.0;
        let mut r = 0.3;
        let mut total = 0.0;
        for (i, a) in [0.5f64, 0.2, 0.5].into_iter().enumerate() {
            let rp = r + (1.0 - r) * a * a;
            let d = (1000.0 * (1.0 - k / rp)).max(0.0);
            let s = capacities[i];
            let pi = 5.0 * s.min(d) - 2.0 * s - 100.0 * a;
            let rec = traj.records[i];
            assert!((rec.reputation_in - r).abs() < 1e-12);
            assert!((rec.post_ad - rp).abs() < 1e-12);
            assert!((rec.demand - d).abs() < 1e-9);
            assert!((rec.profit - pi).abs() < 1e-9);
            total += pi;
            r = if d > 0.0 {
                0.5 * rp + 0.5 * s.min(d) / d
            } else {
                rp
            };
        }
        assert!((traj.total_profit - total).abs() < 1e-9);
        assert!((traj.final_reputation - r).abs() < 1e-12);
    }

    #[test]
    fn zero_capacity_all_low_costs_only_advertising() {
        let sc = Scenario::new(alpha_sweep_base(5.33)).unwrap();
        let n = sc.horizon as f64;
        let traj = simulate(
            &sc,
            &AdPolicy::constant(AdLevel::Low, sc.horizon),
            &|_, _| 0.0,
        )
        .unwrap();
        assert!((traj.total_profit + n * sc.ad_cost * sc.l_level).abs() < 1e-9);
    }

    #[test]
    fn policy_length_mismatch_is_an_error() {
        let sc = Scenario::new(simple()).unwrap();
        let err = simulate(&sc, &AdPolicy::constant(AdLevel::Low, 2), &MatchDemand).unwrap_err();
        assert!(matches!(
            err,
            Error::PolicyLength {
                expected: 3,
                got: 2
            }
        ));
    }

    #[test]
    fn zero_demand_records_full_fill_rate() {
        let mut p = simple();
        p.r1 = 0.0;
        p.l_level = 0.01;
        let sc = Scenario::new(p).unwrap();
        let traj = simulate(&sc, &AdPolicy::constant(AdLevel::Low, 3), &MatchDemand).unwrap();
        assert_eq!(traj.records[0].demand, 0.0);
        assert_eq!(traj.records[0].fill_rate, 1.0);
    }

    fn arb_params() -> impl Strategy<Value = ScenarioParams> {
        (
            0.0..=1.0f64,
            0.001..0.999f64,
            0.0..1.0f64,
            0.01..10.0f64,
            0.0..=1.0f64,
            (0.05..0.95f64, 5.0..40.0f64),
            1..8usize,
        )
            .prop_map(|(r1, l, h_frac, alpha, w, (k, m), n)| {
                let h = l + (1.0 - l) * h_frac.max(1e-3);
                ScenarioParams {
                    r1,
                    l_level: l,
                    h_level: h.min(1.0),
                    alpha,
                    w,
                    market_size: 1000.0,
                    cap_cost: 1.0,
                    rep_value: m,
                    reservation: 0.0,
                    price: (k * m).max(1.0 + 1e-6),
                    ad_cost: 50.0,
                    horizon: n,
                    capacity: None,
                }
            })
            .prop_filter("valid", |p| p.validate().is_ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn post_ad_is_monotone(r in 0.0..=1.0f64, a1 in 0.01..=1.0f64, a2 in 0.01..=1.0f64,
                               al1 in 0.1..10.0f64, al2 in 0.1..10.0f64) {
            let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
            prop_assert!(post_ad_reputation(r, lo, al1).unwrap() <= post_ad_reputation(r, hi, al1).unwrap());
            let (small, big) = if al1 <= al2 { (al1, al2) } else { (al2, al1) };
            if lo < 1.0 {
                prop_assert!(post_ad_reputation(r, lo, big).unwrap() <= post_ad_reputation(r, lo, small).unwrap());
            }
            let v = post_ad_reputation(r, lo, al1).unwrap();
            prop_assert!(v >= r && v <= 1.0);
        }

        #[test]
        fn demand_is_monotone(p in arb_params(), x in 0.0..=1.0f64, y in 0.0..=1.0f64) {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            prop_assert!(demand(&p, lo) <= demand(&p, hi));
            if demand(&p, lo) > 0.0 && lo < hi {
                prop_assert!(demand(&p, lo) < demand(&p, hi));
            }
        }

        #[test]
        fn reputation_stays_in_unit_interval(p in arb_params(), bits in proptest::collection::vec(any::<bool>(), 8),
                                             caps in proptest::collection::vec(0.0..1500.0f64, 8)) {
            let sc = Scenario::new(p).unwrap();
            let policy: AdPolicy = bits.iter().take(sc.horizon)
                .map(|&b| if b { AdLevel::High } else { AdLevel::Low }).collect();
            let rule = |period: usize, _d: f64| caps[period - 1];
            let traj = simulate(&sc, &policy, &rule).unwrap();
            for rec in &traj.records {
                prop_assert!((0.0..=1.0).contains(&rec.reputation_in));
                prop_assert!(rec.post_ad >= rec.reputation_in && rec.post_ad <= 1.0);
                prop_assert!((0.0..=1.0).contains(&rec.fill_rate));
            }
            prop_assert!((0.0..=1.0).contains(&traj.final_reputation));
            let sum: f64 = traj.records.iter().map(|r| r.profit).sum();
            prop_assert!((sum - traj.total_profit).abs() <= 1e-9 * sum.abs().max(1.0));
        }

        #[test]
        fn matched_capacity_never_lowers_reputation(p in arb_params(), bits in proptest::collection::vec(any::<bool>(), 8)) {
            let sc = Scenario::new(p).unwrap();
            let policy: AdPolicy = bits.iter().take(sc.horizon)
                .map(|&b| if b { AdLevel::High } else { AdLevel::Low }).collect();
            let traj = simulate(&sc, &policy, &MatchDemand).unwrap();
            let mut prev = sc.r1;
            for r in traj.reputations().skip(1).chain([traj.final_reputation]) {
                prop_assert!(r >= prev);
                prev = r;
            }
            for rec in &traj.records {
                if rec.demand > 0.0 { prop_assert_eq!(rec.fill_rate, 1.0); }
            }
            let again = simulate(&sc, &policy, &MatchDemand).unwrap();
            prop_assert_eq!(traj, again);
        }
    }

    #[test]
    fn range_safety_over_many_compositions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = simple();
        for _ in 0..100_000 {
            let r: f64 = rng.random();
            let a: f64 = rng.random_range(1e-6..=1.0);
            let alpha: f64 = rng.random_range(1e-3..10.0);
            let fill: f64 = rng.random();
            let d: f64 = rng.random_range(0.0..10.0);
            let p = ScenarioParams {
                w: rng.random(),
                ..base
            };
            let rp = post_ad_reputation(r, a, alpha).unwrap();
            let next = wom_update(&p, rp, fill, d);
            assert!((0.0..=1.0).contains(&rp) && (0.0..=1.0).contains(&next));
        }
    }
}
