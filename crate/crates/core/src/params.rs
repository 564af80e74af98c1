//! Scenario parameters, their invariants, and the `key = value` scenario file.

use std::fmt;
use std::ops::Deref;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::format_sig;

/// Absolute tolerance used for comparisons against thresholds and boundaries.
pub const EPS: f64 = 1e-12;

/// All market and firm parameters of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    /// Starting reputation `R_1`.
    pub r1: f64,
    /// Low advertisement intensity `L`.
    pub l_level: f64,
    /// High advertisement intensity `H`.
    pub h_level: f64,
    /// Advertisement resistance `alpha`.
    pub alpha: f64,
    /// Word-of-mouth weight `w`.
    pub w: f64,
    /// Market size `Lambda`.
    pub market_size: f64,
    /// Cost per unit of capacity per period `c`.
    pub cap_cost: f64,
    /// Monetary value of reputation `m`.
    pub rep_value: f64,
    /// Reservation utility `u`.
    pub reservation: f64,
    /// Service price `p`.
    pub price: f64,
    /// Cost per unit of advertisement effort `c_A`.
    pub ad_cost: f64,
    /// Number of periods `N`.
    pub horizon: usize,
    /// Fixed service capacity `S`; `None` for variable-capacity problems.
    pub capacity: Option<f64>,
}

fn violated(invariant: &'static str, detail: String) -> Error {
    Error::InvalidParams { invariant, detail }
}

impl ScenarioParams {
    /// `(u + p) / m`, the taste threshold at full post-advertisement reputation.
    pub fn taste_ratio(&self) -> f64 {
        (self.reservation + self.price) / self.rep_value
    }

    pub fn with_capacity(mut self, capacity: Option<f64>) -> Self {
        self.capacity = capacity;
        self
    }

    /// Checks every parameter invariant, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let reals = [
            self.r1,
            self.l_level,
            self.h_level,
            self.alpha,
            self.w,
            self.market_size,
            self.cap_cost,
            self.rep_value,
            self.reservation,
            self.price,
            self.ad_cost,
            self.capacity.unwrap_or(0.0),
        ];
        if reals.iter().any(|x| !x.is_finite()) {
            return Err(violated("finite parameters", format!("{self:?}")));
        }
        if !(0.0..=1.0).contains(&self.r1) {
            return Err(violated("0 <= r1 <= 1", format!("r1={}", self.r1)));
        }
        if !(self.l_level > 0.0 && self.l_level < self.h_level && self.h_level <= 1.0) {
            return Err(violated(
                "0 < l_level < h_level <= 1",
                format!("l={} h={}", self.l_level, self.h_level),
            ));
        }
        if self.alpha <= 0.0 {
            return Err(violated("alpha > 0", format!("alpha={}", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.w) {
            return Err(violated("0 <= w <= 1", format!("w={}", self.w)));
        }
        if self.market_size <= 0.0 {
            return Err(violated(
                "market_size > 0",
                format!("lambda={}", self.market_size),
            ));
        }
        if self.rep_value <= 0.0 {
            return Err(violated("rep_value > 0", format!("m={}", self.rep_value)));
        }
        if self.cap_cost < 0.0 {
            return Err(violated("cap_cost >= 0", format!("c={}", self.cap_cost)));
        }
        if self.ad_cost < 0.0 {
            return Err(violated("ad_cost >= 0", format!("c_a={}", self.ad_cost)));
        }
        if self.reservation < 0.0 {
            return Err(violated(
                "reservation >= 0",
                format!("u={}", self.reservation),
            ));
        }
        if self.price <= self.cap_cost {
            return Err(violated(
                "price > cap_cost",
                format!("p={} c={}", self.price, self.cap_cost),
            ));
        }
        if self.taste_ratio() >= 1.0 {
            return Err(violated(
                "(reservation + price) / rep_value < 1",
                format!("(u+p)/m={}", self.taste_ratio()),
            ));
        }
        if self.horizon == 0 {
            return Err(violated("horizon >= 1", "n=0".to_string()));
        }
        if let Some(s) = self.capacity {
            if !(0.0..=self.market_size).contains(&s) {
                return Err(violated(
                    "0 <= capacity <= market_size",
                    format!("s={} lambda={}", s, self.market_size),
                ));
            }
        }
        Ok(())
    }

    /// Parses the `key = value` scenario format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values: [Option<f64>; ParamKey::ALL.len()] = [None; ParamKey::ALL.len()];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            let key: ParamKey = key.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("unknown key `{}`", key.trim()),
            })?;
            let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{}` is not a number", value.trim()),
            })?;
            let slot = &mut values[key as usize];
            if slot.is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key `{}`", key.as_str()),
                });
            }
            *slot = Some(value);
        }

        let get = |key: ParamKey| {
            values[key as usize].ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing key `{}`", key.as_str()),
            })
        };
        let n = get(ParamKey::N)?;
        if n < 0.0 || n.fract() != 0.0 {
            return Err(Error::Parse {
                line: 0,
                message: format!("`n` must be a nonnegative integer, found {n}"),
            });
        }
        Ok(ScenarioParams {
            r1: get(ParamKey::R1)?,
            l_level: get(ParamKey::L)?,
            h_level: get(ParamKey::H)?,
            alpha: get(ParamKey::Alpha)?,
            w: get(ParamKey::W)?,
            market_size: get(ParamKey::Lambda)?,
            cap_cost: get(ParamKey::C)?,
            rep_value: get(ParamKey::M)?,
            reservation: get(ParamKey::U)?,
            price: get(ParamKey::P)?,
            ad_cost: get(ParamKey::CA)?,
            horizon: n as usize,
            capacity: values[ParamKey::S as usize],
        })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Renders the scenario in the file format accepted by [`ScenarioParams::parse`].
    pub fn to_scenario_string(&self) -> String {
        let mut out = String::new();
        for key in ParamKey::ALL {
            if let Some(v) = key.get(self) {
                let v = if key == ParamKey::N {
                    format!("{}", self.horizon)
                } else {
                    format!("{v}")
                };
                out.push_str(&format!("{} = {}\n", key.as_str(), v));
            }
        }
        out
    }
}

impl fmt::Display for ScenarioParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for key in ParamKey::ALL {
            if let Some(v) = key.get(self) {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{}={}", key.as_str(), format_sig(v, 6))?;
            }
        }
        Ok(())
    }
}

/// Advertisement level chosen in a period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdLevel {
    Low,
    High,
}

impl AdLevel {
    /// Both levels, low first; iteration in this order implements the
    /// "ties go to L" convention.
    pub const BOTH: [AdLevel; 2] = [AdLevel::Low, AdLevel::High];

    pub fn intensity(self, params: &ScenarioParams) -> f64 {
        match self {
            AdLevel::Low => params.l_level,
            AdLevel::High => params.h_level,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            AdLevel::Low => 'L',
            AdLevel::High => 'H',
        }
    }
}

impl fmt::Display for AdLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A validated scenario with the advertisement powers `L^alpha` and `H^alpha`
/// cached for the solvers' inner loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    params: ScenarioParams,
    low_pow: f64,
    high_pow: f64,
}

impl Scenario {
    pub fn new(params: ScenarioParams) -> Result<Self> {
        params.validate()?;
        Ok(Scenario {
            params,
            low_pow: params.l_level.powf(params.alpha),
            high_pow: params.h_level.powf(params.alpha),
        })
    }

    pub fn params(&self) -> &ScenarioParams {
        &self.params
    }

    pub fn into_params(self) -> ScenarioParams {
        self.params
    }

    /// `A^alpha` for the given level.
    pub fn ad_power(&self, level: AdLevel) -> f64 {
        match level {
            AdLevel::Low => self.low_pow,
            AdLevel::High => self.high_pow,
        }
    }

    /// Fixed capacity, or an error naming the mismatch.
    pub fn require_capacity(&self) -> Result<f64> {
        self.params.capacity.ok_or(Error::CapacityMode(
            "constant-capacity problem requires a capacity `s`",
        ))
    }

    pub fn require_variable(&self) -> Result<()> {
        match self.params.capacity {
            None => Ok(()),
            Some(_) => Err(Error::CapacityMode(
                "variable-capacity problem must not fix a capacity `s`",
            )),
        }
    }

    /// Same scenario with a different starting reputation.
    pub fn with_r1(&self, r1: f64) -> Result<Self> {
        Scenario::new(ScenarioParams { r1, ..self.params })
    }

    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        Scenario::new(ScenarioParams {
            horizon,
            ..self.params
        })
    }
}

impl Deref for Scenario {
    type Target = ScenarioParams;

    fn deref(&self) -> &ScenarioParams {
        &self.params
    }
}

impl TryFrom<ScenarioParams> for Scenario {
    type Error = Error;

    fn try_from(params: ScenarioParams) -> Result<Self> {
        Scenario::new(params)
    }
}

/// Keys of the scenario file, also used to name swept parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKey {
    R1,
    L,
    H,
    Alpha,
    W,
    Lambda,
    C,
    M,
    U,
    P,
    CA,
    N,
    S,
}

impl ParamKey {
    pub const ALL: [ParamKey; 13] = [
        ParamKey::R1,
        ParamKey::L,
        ParamKey::H,
        ParamKey::Alpha,
        ParamKey::W,
        ParamKey::Lambda,
        ParamKey::C,
        ParamKey::M,
        ParamKey::U,
        ParamKey::P,
        ParamKey::CA,
        ParamKey::N,
        ParamKey::S,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamKey::R1 => "r1",
            ParamKey::L => "l",
            ParamKey::H => "h",
            ParamKey::Alpha => "alpha",
            ParamKey::W => "w",
            ParamKey::Lambda => "lambda",
            ParamKey::C => "c",
            ParamKey::M => "m",
            ParamKey::U => "u",
            ParamKey::P => "p",
            ParamKey::CA => "c_a",
            ParamKey::N => "n",
            ParamKey::S => "s",
        }
    }

    /// Current value; `None` only for an absent capacity.
    pub fn get(self, p: &ScenarioParams) -> Option<f64> {
        Some(match self {
            ParamKey::R1 => p.r1,
            ParamKey::L => p.l_level,
            ParamKey::H => p.h_level,
            ParamKey::Alpha => p.alpha,
            ParamKey::W => p.w,
            ParamKey::Lambda => p.market_size,
            ParamKey::C => p.cap_cost,
            ParamKey::M => p.rep_value,
            ParamKey::U => p.reservation,
            ParamKey::P => p.price,
            ParamKey::CA => p.ad_cost,
            ParamKey::N => p.horizon as f64,
            ParamKey::S => return p.capacity,
        })
    }

    /// Sets the value; horizons are rounded to the nearest integer.
    pub fn set(self, p: &mut ScenarioParams, value: f64) {
        match self {
            ParamKey::R1 => p.r1 = value,
            ParamKey::L => p.l_level = value,
            ParamKey::H => p.h_level = value,
            ParamKey::Alpha => p.alpha = value,
            ParamKey::W => p.w = value,
            ParamKey::Lambda => p.market_size = value,
            ParamKey::C => p.cap_cost = value,
            ParamKey::M => p.rep_value = value,
            ParamKey::U => p.reservation = value,
            ParamKey::P => p.price = value,
            ParamKey::CA => p.ad_cost = value,
            ParamKey::N => p.horizon = value.round().max(0.0) as usize,
            ParamKey::S => p.capacity = Some(value),
        }
    }
}

impl FromStr for ParamKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ParamKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown parameter `{s}`")))
    }
}

impl fmt::Display for ParamKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
