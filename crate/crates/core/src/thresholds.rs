//! Reputation thresholds behind the naive firm's one-period decisions.
//!
//! The naive firm compares the profit of this period under both advertisement
//! levels. Under either capacity regime the comparison reduces to checking the
//! current reputation against a handful of closed-form thresholds plus one
//! implicit threshold found by bisection.

use crate::error::Result;
use crate::params::{AdLevel, Scenario, EPS};
use crate::roots::root_solve;
use crate::states::{capacity_ratio, reputation_threshold, thresholds, StateThresholds};

/// Gap `1/R'_L - 1/R'_H` between the inverse post-ad reputations. Strictly
/// decreasing on `[0, 1)` and zero at `R = 1`.
fn inverse_gap(sc: &Scenario, r: f64) -> f64 {
    let lp = sc.ad_power(AdLevel::Low);
    let hp = sc.ad_power(AdLevel::High);
    1.0 / (r + (1.0 - r) * lp) - 1.0 / (r + (1.0 - r) * hp)
}

/// Solves `inverse_gap(R) = rhs` on `(EPS, 1 - EPS)`. Returns the root, if
/// any, and the effective upper bound of the set `{R : inverse_gap(R) > rhs}`
/// on `[0, 1)`: `1` when the gap exceeds `rhs` everywhere, `-inf` when nowhere.
fn gap_root(sc: &Scenario, rhs: f64) -> (Option<f64>, f64) {
    let g = |r: f64| inverse_gap(sc, r) - rhs;
    let (lo, hi) = (EPS, 1.0 - EPS);
    if g(hi) >= 0.0 {
        return (None, 1.0);
    }
    if g(lo) <= 0.0 {
        return (None, f64::NEG_INFINITY);
    }
    match root_solve(g, lo, hi, 1e-12) {
        Some(root) => (Some(root), root),
        None => (None, f64::NEG_INFINITY),
    }
}

/// Thresholds of the naive decision when capacity follows demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariableThresholds {
    /// Below this, high advertisement yields no demand.
    pub iota: f64,
    /// Below this, low advertisement yields no demand.
    pub rho: f64,
    /// Where high advertisement starts to pay while low yields no demand.
    /// Absent when `tau = 0`.
    pub kappa: Option<f64>,
    /// `Lambda (p - c) - c_A (H - L)`.
    pub tau: f64,
    /// Root of the equal-profit condition when both levels yield demand.
    pub nu: Option<f64>,
    /// Upper end of the high-advertisement interval. Equals `nu` when that
    /// exists, `1` when high advertisement wins at every reputation below 1,
    /// `-inf` when it never wins.
    pub nu_bound: f64,
}

impl VariableThresholds {
    /// Naive choice at reputation `r`; ties go to low advertisement.
    pub fn decide(&self, r: f64) -> AdLevel {
        if self.tau <= 0.0 {
            return AdLevel::Low;
        }
        let kappa = self.kappa.unwrap_or(f64::INFINITY);
        let lower = self.iota.max(kappa).min(self.rho);
        let upper = self.rho.max(self.nu_bound);
        if r > lower && r < upper {
            AdLevel::High
        } else {
            AdLevel::Low
        }
    }
}

pub fn variable_thresholds(sc: &Scenario) -> VariableThresholds {
    let k = sc.taste_ratio();
    let lp = sc.ad_power(AdLevel::Low);
    let hp = sc.ad_power(AdLevel::High);
    let margin = sc.price - sc.cap_cost;
    let ad_gap = sc.ad_cost * (sc.h_level - sc.l_level);
    let tau = sc.market_size * margin - ad_gap;
    let kappa = if tau.abs() <= EPS * sc.market_size * margin {
        None
    } else {
        Some(reputation_threshold(k * sc.market_size * margin / tau, hp))
    };
    let rhs = sc.rep_value * ad_gap / (sc.market_size * margin * (sc.reservation + sc.price));
    let (nu, nu_bound) = gap_root(sc, rhs);
    let t = VariableThresholds {
        iota: reputation_threshold(k, hp),
        rho: reputation_threshold(k, lp),
        kappa,
        tau,
        nu,
        nu_bound,
    };
    debug_assert!(t.iota < t.rho, "iota must lie below rho");
    t
}

/// Thresholds of the naive decision under a fixed capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantThresholds {
    /// Where high advertisement starts to pay while low yields no demand.
    /// Absent when high advertisement can never recover its extra cost alone.
    pub gamma: Option<f64>,
    /// Below this, high advertisement pays when it fills capacity and low does not.
    pub omega: Option<f64>,
    /// `p S - c_A (H - L)`.
    pub phi: f64,
    /// Root of the equal-profit condition when neither level fills capacity.
    pub beta: Option<f64>,
    /// Effective upper bound, with the same conventions as `nu_bound`.
    pub beta_bound: f64,
}

impl ConstantThresholds {
    /// Naive choice at reputation `r`; ties go to low advertisement.
    pub fn decide(&self, st: &StateThresholds, r: f64) -> AdLevel {
        let first = match self.gamma {
            Some(g) => r > g && r < st.x2.min(self.beta_bound),
            None => false,
        };
        let second = match self.omega {
            Some(o) => r > st.y1.max(st.x2) && r < o,
            None => false,
        };
        let third = self.phi > 0.0 && r > st.x2 && r < st.y1;
        if first || second || third {
            AdLevel::High
        } else {
            AdLevel::Low
        }
    }
}

pub fn constant_thresholds(sc: &Scenario) -> Result<ConstantThresholds> {
    let s = sc.require_capacity()?;
    let k = sc.taste_ratio();
    let lp = sc.ad_power(AdLevel::Low);
    let hp = sc.ad_power(AdLevel::High);
    let revenue = sc.price * sc.market_size;
    let ad_gap = sc.ad_cost * (sc.h_level - sc.l_level);

    let gamma_den = revenue - ad_gap;
    let gamma =
        (gamma_den > EPS * revenue).then(|| reputation_threshold(k * revenue / gamma_den, hp));
    let omega_den = revenue - sc.price * s + ad_gap;
    let omega =
        (omega_den > EPS * revenue).then(|| reputation_threshold(k * revenue / omega_den, lp));
    let rhs = sc.rep_value * ad_gap / (revenue * (sc.reservation + sc.price));
    let (beta, beta_bound) = gap_root(sc, rhs);
    debug_assert!(capacity_ratio(sc, s) >= k);
    Ok(ConstantThresholds {
        gamma,
        omega,
        phi: sc.price * s - ad_gap,
        beta,
        beta_bound,
    })
}

/// Naive constant-capacity decision at `r`, evaluated through the thresholds.
pub fn constant_decision(sc: &Scenario, r: f64) -> Result<AdLevel> {
    Ok(constant_thresholds(sc)?.decide(&thresholds(sc)?, r))
}
