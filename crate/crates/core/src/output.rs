//! CSV files for trajectories and sweeps, plus their readers.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::experiments::SweepRow;
use crate::format::fmt9;
use crate::model::{PeriodRecord, Trajectory};
use crate::params::{AdLevel, ParamKey};
use crate::policy::AdPolicy;
use crate::states::OmegaSet;
use crate::variable::SolveMethod;

pub const TRAJECTORY_HEADER: [&str; 8] = [
    "period",
    "reputation",
    "post_ad",
    "ad",
    "demand",
    "capacity",
    "fill_rate",
    "profit",
];

pub const SWEEP_HEADER: [&str; 10] = [
    "param",
    "value",
    "profit_aware",
    "profit_naive",
    "voi_pct",
    "policy_aware",
    "policy_naive",
    "omega",
    "method",
    "skipped",
];

pub fn write_trajectory<W: Write>(out: W, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER)?;
    for r in &traj.records {
        w.write_record([
            r.period.to_string(),
            fmt9(r.reputation_in),
            fmt9(r.post_ad),
            r.ad.to_string(),
            fmt9(r.demand),
            fmt9(r.capacity_used),
            fmt9(r.fill_rate),
            fmt9(r.profit),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(bad(1, format!("expected header `{}`", expected.join(","))));
    }
    Ok(())
}

fn num(field: &str, line: usize) -> Result<f64> {
    if field.is_empty() {
        return Ok(0.0);
    }
    field
        .parse()
        .map_err(|_| bad(line, format!("`{field}` is not a number")))
}

/// Reads a trajectory CSV. Values come back rounded to nine significant digits.
pub fn read_trajectory<R: Read>(input: R) -> Result<Trajectory> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(&mut rdr, &TRAJECTORY_HEADER)?;
    let mut records = Vec::new();
    for (idx, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = idx + 2;
        let ad = match &rec[3] {
            "H" => AdLevel::High,
            "L" => AdLevel::Low,
            other => return Err(bad(line, format!("ad level `{other}`"))),
        };
        records.push(PeriodRecord {
            period: rec[0].parse().map_err(|_| bad(line, "period"))?,
            reputation_in: num(&rec[1], line)?,
            post_ad: num(&rec[2], line)?,
            ad,
            demand: num(&rec[4], line)?,
            capacity_used: num(&rec[5], line)?,
            fill_rate: num(&rec[6], line)?,
            profit: num(&rec[7], line)?,
        });
    }
    let total_profit = records.iter().map(|r| r.profit).sum();
    // The file does not store R_{N+1}; the last recorded reputation stands in.
    let final_reputation = records.last().map_or(0.0, |r| r.reputation_in);
    Ok(Trajectory {
        records,
        total_profit,
        final_reputation,
    })
}

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let reals = |x: f64| {
            if r.skipped.is_some() {
                String::new()
            } else {
                fmt9(x)
            }
        };
        w.write_record([
            r.param.to_string(),
            fmt9(r.value),
            reals(r.profit_aware),
            reals(r.profit_naive),
            reals(r.voi_pct),
            r.policy_aware.to_string(),
            r.policy_naive.to_string(),
            r.omega.map(|o| o.tag()).unwrap_or_default(),
            r.method.map(|m| m.to_string()).unwrap_or_default(),
            r.skipped.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn method_from_str(s: &str, line: usize) -> Result<Option<SolveMethod>> {
    use SolveMethod::*;
    if s.is_empty() {
        return Ok(None);
    }
    [SwitchingSearch, Myopic, Exhaustive, BranchAndBound, GridDp]
        .into_iter()
        .find(|m| m.as_str() == s)
        .map(Some)
        .ok_or_else(|| bad(line, format!("unknown method `{s}`")))
}

// Skipped rows carry an empty policy.
fn policy(s: &str) -> Result<AdPolicy> {
    if s.is_empty() {
        Ok(AdPolicy::default())
    } else {
        s.parse()
    }
}

pub fn read_sweep<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(&mut rdr, &SWEEP_HEADER)?;
    let mut rows = Vec::new();
    for (idx, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = idx + 2;
        let param: ParamKey = rec[0]
            .parse()
            .map_err(|_| bad(line, format!("parameter `{}`", &rec[0])))?;
        let omega = if rec[7].is_empty() {
            None
        } else {
            Some(
                OmegaSet::from_tag(&rec[7])
                    .ok_or_else(|| bad(line, format!("state set `{}`", &rec[7])))?,
            )
        };
        rows.push(SweepRow {
            param,
            value: num(&rec[1], line)?,
            profit_aware: num(&rec[2], line)?,
            profit_naive: num(&rec[3], line)?,
            voi_pct: num(&rec[4], line)?,
            policy_aware: policy(&rec[5])?,
            policy_naive: policy(&rec[6])?,
            omega,
            method: method_from_str(&rec[8], line)?,
            skipped: (!rec[9].is_empty()).then(|| rec[9].to_string()),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_sweep, Mode, SweepSpec};
    use crate::model::{simulate_default, Trajectory};
    use crate::params::fixtures::*;
    use crate::params::Scenario;
    use crate::policy::AdPolicy;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 5e-9 * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn trajectory_round_trip() {
        let sc = Scenario::new(cycling()).unwrap();
        let traj =
            simulate_default(&sc, &"HLHLHLHLHLHLHLHLHL".parse::<AdPolicy>().unwrap()).unwrap();
        let mut buf = Vec::new();
        write_trajectory(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("period,reputation,post_ad,ad,demand,capacity,fill_rate,profit\n"));
        let back: Trajectory = read_trajectory(buf.as_slice()).unwrap();
        assert_eq!(back.records.len(), traj.records.len());
        for (a, b) in traj.records.iter().zip(&back.records) {
            assert_eq!(a.ad, b.ad);
            assert!(close(a.reputation_in, b.reputation_in) && close(a.profit, b.profit));
        }
    }

    #[test]
    fn sweep_round_trip_keeps_skipped_rows() {
        let spec = SweepSpec {
            base: cycling(),
            param: ParamKey::S,
            samples: 4,
            seed: 3,
            mode: Mode::Constant,
        };
        let mut rows = run_sweep(&spec, false).unwrap();
        rows[0].skipped = Some("scenario invariant violated: x, y".into());
        rows[0].profit_aware = 0.0;
        rows[0].profit_naive = 0.0;
        rows[0].voi_pct = 0.0;
        let mut buf = Vec::new();
        write_sweep(&mut buf, &rows).unwrap();
        let back = read_sweep(buf.as_slice()).unwrap();
        assert_eq!(back.len(), rows.len());
        for (a, b) in rows.iter().zip(&back) {
            assert_eq!(a.policy_aware, b.policy_aware);
            assert_eq!(a.omega, b.omega);
            assert_eq!(a.method, b.method);
            assert_eq!(a.skipped, b.skipped);
            assert!(close(a.value, b.value) && close(a.voi_pct, b.voi_pct));
        }
    }

    #[test]
    fn header_mismatch_is_rejected() {
        assert!(read_sweep("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_trajectory("period,reputation\n".as_bytes()).is_err());
    }
}
