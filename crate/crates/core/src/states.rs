//! Market states A to F and the set of states a parameter set can produce.
//!
//! A state describes how demand compares with the fixed capacity under each
//! advertisement level:
//!
//! | state | low ad      | high ad     |
//! |-------|-------------|-------------|
//! | A     | `D >= S`    | `D >= S`    |
//! | B     | `0 < D < S` | `D >= S`    |
//! | C     | `0 < D < S` | `0 < D < S` |
//! | D     | `D = 0`     | `D >= S`    |
//! | E     | `D = 0`     | `0 < D < S` |
//! | F     | `D = 0`     | `D = 0`     |

use std::fmt;

use crate::error::Result;
use crate::model::{demand, lift};
use crate::params::{AdLevel, Scenario, EPS};

/// Smallest pre-advertisement reputation whose post-advertisement value under
/// ad power `power` reaches `target`, i.e. `(target - power) / (1 - power)`.
///
/// A power of 1 lifts every reputation to 1, so the threshold is then either
/// `-inf` (target reachable) or `+inf`.
pub fn reputation_threshold(target: f64, power: f64) -> f64 {
    if power >= 1.0 {
        if target <= 1.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        (target - power) / (1.0 - power)
    }
}

/// Reputation thresholds separating the states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateThresholds {
    /// Minimum reputation with `D >= S` under low advertisement.
    pub x1: f64,
    /// Minimum reputation with `D >= S` under high advertisement.
    pub x2: f64,
    /// Reputation below which low advertisement yields no demand.
    pub y1: f64,
    /// Reputation below which high advertisement yields no demand.
    pub y2: f64,
}

/// `K = (u+p)/m * Lambda / (Lambda - S)`, the post-ad reputation at which demand equals `S`.
pub(crate) fn capacity_ratio(sc: &Scenario, s: f64) -> f64 {
    let gap = sc.market_size - s;
    if gap <= 0.0 {
        f64::INFINITY
    } else {
        sc.taste_ratio() * sc.market_size / gap
    }
}

pub fn thresholds(sc: &Scenario) -> Result<StateThresholds> {
    let s = sc.require_capacity()?;
    let k = sc.taste_ratio();
    let big_k = capacity_ratio(sc, s);
    let (lp, hp) = (sc.ad_power(AdLevel::Low), sc.ad_power(AdLevel::High));
    Ok(StateThresholds {
        x1: reputation_threshold(big_k, lp),
        x2: reputation_threshold(big_k, hp),
        y1: reputation_threshold(k, lp),
        y2: reputation_threshold(k, hp),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarketState {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl MarketState {
    pub const ALL: [MarketState; 6] = [
        MarketState::A,
        MarketState::B,
        MarketState::C,
        MarketState::D,
        MarketState::E,
        MarketState::F,
    ];

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for MarketState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Served {
    Zero,
    Partial,
    Full,
}

fn served(d: f64, s: f64) -> Served {
    if d <= 0.0 {
        Served::Zero
    } else if d >= s - EPS {
        Served::Full
    } else {
        Served::Partial
    }
}

/// State of a period starting at reputation `r`, found by computing the
/// demand under both advertisement levels.
pub fn classify_state(sc: &Scenario, r: f64) -> Result<MarketState> {
    let s = sc.require_capacity()?;
    let low = served(demand(sc, lift(r, sc.ad_power(AdLevel::Low))), s);
    let high = served(demand(sc, lift(r, sc.ad_power(AdLevel::High))), s);
    use MarketState::*;
    use Served::*;
    Ok(match (low, high) {
        (Full, _) => A,
        (Partial, Full) => B,
        (Partial, _) => C,
        (Zero, Full) => D,
        (Zero, Partial) => E,
        (Zero, Zero) => F,
    })
}

/// State of reputation `r` found by comparing it with the thresholds.
pub fn classify_by_thresholds(t: &StateThresholds, r: f64) -> MarketState {
    use MarketState::*;
    let low_zero = r <= t.y1;
    if r <= t.y2 {
        F
    } else if r >= t.x2 - EPS && low_zero {
        D
    } else if r >= t.x1 - EPS {
        A
    } else if r >= t.x2 - EPS {
        B
    } else if low_zero {
        E
    } else {
        C
    }
}

/// A set of market states, printed as a tag such as `ABCEF`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OmegaSet(u8);

impl OmegaSet {
    /// The eleven sets that can arise.
    pub const LEGAL: [&'static str; 11] = [
        "A", "AB", "ABC", "ABD", "ABCE", "ABDE", "ABCEF", "ABDEF", "C", "CE", "CEF",
    ];

    pub fn empty() -> Self {
        OmegaSet(0)
    }

    pub fn insert(&mut self, state: MarketState) {
        self.0 |= 1 << state as u8;
    }

    pub fn contains(&self, state: MarketState) -> bool {
        self.0 & (1 << state as u8) != 0
    }

    pub fn states(&self) -> impl Iterator<Item = MarketState> + '_ {
        MarketState::ALL.into_iter().filter(|s| self.contains(*s))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn tag(&self) -> String {
        self.states().map(MarketState::as_char).collect()
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        let mut set = OmegaSet::empty();
        for ch in tag.chars() {
            let idx = (ch as u32).checked_sub('A' as u32)?;
            set.insert(*MarketState::ALL.get(idx as usize)?);
        }
        Some(set)
    }

    pub fn is_legal(&self) -> bool {
        Self::LEGAL.contains(&self.tag().as_str())
    }

    /// True when every member is one of `allowed`.
    pub fn is_subset_of(&self, allowed: &[MarketState]) -> bool {
        self.states().all(|s| allowed.contains(&s))
    }
}

impl FromIterator<MarketState> for OmegaSet {
    fn from_iter<I: IntoIterator<Item = MarketState>>(iter: I) -> Self {
        let mut set = OmegaSet::empty();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// States observable at some reputation in `[0, 1]`, from the closed-form case list.
pub fn omega(sc: &Scenario) -> Result<OmegaSet> {
    let s = sc.require_capacity()?;
    let t = thresholds(sc)?;
    let k = sc.taste_ratio();
    let big_k = capacity_ratio(sc, s);
    let (lp, hp) = (sc.ad_power(AdLevel::Low), sc.ad_power(AdLevel::High));

    let tag = if t.y1 > t.x2 {
        if lp >= big_k {
            "A"
        } else if lp >= k {
            "AB"
        } else if hp >= k {
            if big_k <= hp {
                "ABD"
            } else {
                "ABDE"
            }
        } else {
            "ABDEF"
        }
    } else if lp >= big_k {
        "A"
    } else if big_k >= 1.0 {
        if lp >= k {
            "C"
        } else if hp >= k {
            "CE"
        } else {
            "CEF"
        }
    } else if big_k <= hp {
        "AB"
    } else if lp >= k {
        "ABC"
    } else if hp >= k {
        "ABCE"
    } else {
        "ABCEF"
    };
    Ok(OmegaSet::from_tag(tag).expect("static tag"))
}
