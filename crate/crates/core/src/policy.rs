use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::AdLevel;

/// A length-N sequence of advertisement levels, one per period.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AdPolicy(Vec<AdLevel>);

impl AdPolicy {
    pub fn new(levels: Vec<AdLevel>) -> Self {
        AdPolicy(levels)
    }

    pub fn constant(level: AdLevel, horizon: usize) -> Self {
        AdPolicy(vec![level; horizon])
    }

    /// `H^k L^(n-k)`: high advertisement in the first `high_periods` periods.
    pub fn single_switch(high_periods: usize, horizon: usize) -> Self {
        assert!(high_periods <= horizon);
        let mut levels = vec![AdLevel::High; high_periods];
        levels.resize(horizon, AdLevel::Low);
        AdPolicy(levels)
    }

    pub fn levels(&self) -> &[AdLevel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn h_count(&self) -> usize {
        self.0.iter().filter(|&&a| a == AdLevel::High).count()
    }

    /// 1-based periods `j > 1` where `A_j` differs from `A_{j-1}`.
    pub fn switching_points(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] != w[1])
            .map(|(i, _)| i + 2)
            .collect()
    }

    /// True for sequences of the form `H^k L^(n-k)`.
    pub fn is_single_switch(&self) -> bool {
        self.0
            .windows(2)
            .all(|w| !(w[0] == AdLevel::Low && w[1] == AdLevel::High))
    }

    /// Run-length form such as `2H-L-H-10L`.
    pub fn to_compact(&self) -> String {
        let mut runs: Vec<String> = Vec::new();
        let mut iter = self.0.iter().peekable();
        while let Some(&level) = iter.next() {
            let mut count = 1;
            while iter.peek() == Some(&&level) {
                iter.next();
                count += 1;
            }
            runs.push(if count == 1 {
                level.to_string()
            } else {
                format!("{count}{level}")
            });
        }
        runs.join("-")
    }
}

impl fmt::Display for AdPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for AdPolicy {
    type Err = Error;

    /// Accepts both the plain `HHLL` form and the run-length `2H-2L` form.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("invalid policy `{s}`"));
        let mut levels = Vec::new();
        for run in s.trim().split('-') {
            let run = run.trim();
            let digits = run.chars().take_while(|c| c.is_ascii_digit()).count();
            let (count, rest) = run.split_at(digits);
            let count: usize = if count.is_empty() {
                1
            } else {
                count.parse().map_err(|_| bad())?
            };
            if rest.is_empty() {
                return Err(bad());
            }
            if count != 1 && rest.len() != 1 {
                return Err(bad());
            }
            for ch in rest.chars() {
                let level = match ch {
                    'H' | 'h' => AdLevel::High,
                    'L' | 'l' => AdLevel::Low,
                    _ => return Err(bad()),
                };
                levels.extend(std::iter::repeat_n(level, count));
            }
        }
        Ok(AdPolicy(levels))
    }
}

impl FromIterator<AdLevel> for AdPolicy {
    fn from_iter<I: IntoIterator<Item = AdLevel>>(iter: I) -> Self {
        AdPolicy(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn switching_points_are_one_based_changes() {
        let p: AdPolicy = "HLLLLLL".parse().unwrap();
        assert_eq!(p.switching_points(), vec![2]);
        let p: AdPolicy = "4L-H-23L".parse().unwrap();
        assert_eq!(p.len(), 28);
        assert_eq!(p.switching_points(), vec![5, 6]);
        assert!(!p.is_single_switch());
        assert!(AdPolicy::single_switch(3, 8).is_single_switch());
        assert!(AdPolicy::constant(AdLevel::Low, 4)
            .switching_points()
            .is_empty());
    }

    #[test]
    fn compact_form_matches_table_notation() {
        assert_eq!(AdPolicy::single_switch(1, 11).to_compact(), "H-10L");
        let p: AdPolicy = "2H-L-H-L-H-10L".parse().unwrap();
        assert_eq!(p.to_string(), "HHLHLHLLLLLLLLLL");
        assert_eq!(p.h_count(), 4);
        assert!("3X".parse::<AdPolicy>().is_err());
        assert!("2HL".parse::<AdPolicy>().is_err());
    }

    proptest! {
        #[test]
        fn compact_and_plain_forms_parse_back(bits in proptest::collection::vec(any::<bool>(), 1..40)) {
            let p: AdPolicy = bits.iter().map(|&b| if b { AdLevel::High } else { AdLevel::Low }).collect();
            prop_assert_eq!(&p.to_compact().parse::<AdPolicy>().unwrap(), &p);
            prop_assert_eq!(&p.to_string().parse::<AdPolicy>().unwrap(), &p);
        }
    }
}
