//! Parameter sweeps producing the list-bound and entropy-rate tables.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmm::{HmmParams, RateBounds};
use crate::info::{binary_entropy_inv, Probability};
use crate::listdecode::{exponent_bound_mc, mgl_chain_bound, rao_sprumont_bound, trivial_bound};
use crate::report::Table;

/// Inclusive arithmetic range written `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if ![start, stop, step].iter().all(|v| v.is_finite()) {
            return Err(Error::Range("bounds and step must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::Range(format!("step must be positive, got {step}")));
        }
        if stop < start {
            return Err(Error::Range(format!("empty range {start}:{stop}")));
        }
        Ok(Self { start, stop, step })
    }

    /// `start + i step` for every `i` keeping the value at most `stop`
    /// (with a relative slack of `1e-9` steps against rounding).
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for SweepRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(Error::Range(format!("`{s}` is not start:stop:step")));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| Error::Range(format!("`{t}`: {e}")));
        Self::new(num(a)?, num(b)?, num(c)?)
    }
}

/// What the list-bound sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "axis")]
pub enum ListboundAxis {
    /// `x = q` with `p = h^-1(q)`: the equal-capacity curve.
    EqualCapacity,
    /// `x = p` at fixed `q`.
    Crossover { q: f64 },
    /// `x = h(p)` at fixed `q`.
    CrossoverEntropy { q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ListboundConfig {
    #[serde(flatten)]
    pub axis: ListboundAxis,
    pub range: SweepRange,
    /// Code rate; `None` means `1 - q` (capacity of `BEC_q`).
    pub rate: Option<f64>,
}

pub const LISTBOUND_COLUMNS: [&str; 8] = ["x", "p", "q", "rate", "eta_bound", "rs_bound", "mgl_bound", "trivial_bound"];

pub fn sweep_listbound(config: &ListboundConfig) -> Result<Table> {
    let rows = config
        .range
        .values()
        .into_par_iter()
        .map(|x| listbound_row(config, x))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(LISTBOUND_COLUMNS.to_vec());
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn listbound_row(config: &ListboundConfig, x: f64) -> Result<Vec<Option<f64>>> {
    let (p, q) = match config.axis {
        ListboundAxis::EqualCapacity => (binary_entropy_inv(x)?, x),
        ListboundAxis::Crossover { q } => (x, q),
        ListboundAxis::CrossoverEntropy { q } => (binary_entropy_inv(x)?, q),
    };
    let (pp, qq) = (Probability::new(p)?, Probability::new(q)?);
    let rate = config.rate.unwrap_or(1.0 - q);
    Ok(vec![
        Some(x),
        Some(p),
        Some(q),
        Some(rate),
        Some(exponent_bound_mc(pp, qq)?),
        Some(rao_sprumont_bound(pp, rate)?),
        mgl_chain_bound(pp, qq, rate)?,
        Some(trivial_bound(pp, rate)?),
    ])
}

/// What the entropy-rate sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "axis")]
pub enum HmmAxis {
    /// `x = q` at fixed `alpha`.
    FlipRate { alpha: f64 },
    /// `x = alpha` at fixed `q`.
    NoiseLevel { q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HmmSweepConfig {
    #[serde(flatten)]
    pub axis: HmmAxis,
    pub range: SweepRange,
    /// Observation length of the exact bracket.
    pub n: usize,
}

pub const HMM_COLUMNS: [&str; 9] = [
    "x",
    "q",
    "alpha",
    "ordentlich",
    "advantage",
    "argmax_gamma",
    "natural_gamma",
    "true_lower",
    "true_upper",
];

pub fn sweep_hmm(config: &HmmSweepConfig) -> Result<Table> {
    let rows = config
        .range
        .values()
        .into_par_iter()
        .map(|x| {
            let params = match config.axis {
                HmmAxis::FlipRate { alpha } => HmmParams::new(x, alpha)?,
                HmmAxis::NoiseLevel { q } => HmmParams::new(q, x)?,
            };
            let b = RateBounds::compute(params, config.n)?;
            Ok(vec![
                Some(x),
                Some(b.q),
                Some(b.alpha),
                Some(b.ordentlich),
                Some(b.advantage),
                Some(b.advantage_argmax_gamma),
                Some(params.natural_gamma()),
                Some(b.true_lower),
                Some(b.true_upper),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(HMM_COLUMNS.to_vec());
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}
