//! Scalar information-theoretic primitives: binary entropy and its inverse,
//! binary convolution, discrete channels and mutual information.
//!
//! Everything is in bits and 64-bit floating point. The convention
//! `0 · log 0 = 0` is applied by an explicit branch so that distributions on
//! the boundary of the simplex never produce NaN.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain {
                name: "probability",
                value,
                domain: "[0, 1]",
            });
        }
        Ok(Self(value))
    }

    pub const HALF: Probability = Probability(0.5);
    pub const ZERO: Probability = Probability(0.0);

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }

    /// Binary entropy of a Bernoulli variable with this bias.
    pub fn entropy(self) -> f64 {
        binary_entropy(self.0)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
fn plog2p(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)` in bits.
///
/// Arguments outside `[0, 1]` are clamped, which only matters for values a
/// rounding error away from the boundary.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -(plog2p(p) + plog2p(1.0 - p))
}

/// The unique `p` in `[0, 1/2]` with `h(p) = t`.
pub fn binary_entropy_inv(t: f64) -> Result<f64> {
    if t.is_nan() || !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain {
            name: "entropy",
            value: t,
            domain: "[0, 1]",
        });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Binary convolution `a * b = a(1-b) + (1-a)b`: the crossover probability of
/// two cascaded binary symmetric channels.
#[inline]
pub fn convolve(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + (1.0 - a) * b
}

/// The `k`-fold convolution `q * q * ... * q = (1 - (1-2q)^k) / 2`.
pub fn kfold_convolve(q: f64, k: u64) -> f64 {
    assert!(k >= 1, "k-fold convolution needs k >= 1");
    let base = 1.0 - 2.0 * q;
    let pow = if k <= i32::MAX as u64 {
        base.powi(k as i32)
    } else {
        base.powf(k as f64)
    };
    0.5 * (1.0 - pow)
}

/// Shannon entropy of a probability vector, in bits.
pub fn entropy(dist: &[f64]) -> f64 {
    -dist.iter().map(|&p| plog2p(p)).sum::<f64>()
}

/// Checks that `dist` is a probability vector within `tol`.
pub fn check_distribution(dist: &[f64], tol: f64) -> Result<()> {
    if let Some(&bad) = dist.iter().find(|&&p| p.is_nan() || p < 0.0 || p > 1.0 + tol) {
        return Err(Error::Domain {
            name: "probability",
            value: bad,
            domain: "[0, 1]",
        });
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::NotNormalized(sum));
    }
    Ok(())
}

/// A discrete memoryless channel given by its row-stochastic transition
/// matrix, one row per input symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: Vec<Vec<f64>>,
    outputs: usize,
}

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let outputs = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || outputs == 0 {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != outputs {
                return Err(Error::Dimension {
                    expected: outputs,
                    got: row.len(),
                });
            }
            let sum: f64 = row.iter().sum();
            if row.iter().any(|&x| !(0.0..=1.0).contains(&x)) || (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidChannel { row: i, sum });
            }
        }
        Ok(Self { rows, outputs })
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: Probability) -> Self {
        let p = p.get();
        Self {
            rows: vec![vec![1.0 - p, p], vec![p, 1.0 - p]],
            outputs: 2,
        }
    }

    /// Binary erasure channel with erasure probability `q`. Output symbols
    /// are ordered `0, ?, 1`.
    pub fn bec(q: Probability) -> Self {
        let q = q.get();
        Self {
            rows: vec![vec![1.0 - q, q, 0.0], vec![0.0, q, 1.0 - q]],
            outputs: 3,
        }
    }

    /// The noiseless channel on `size` symbols.
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|i| (0..size).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { rows, outputs: size }
    }

    /// The product channel acting independently on the two coordinates of a
    /// pair input. Input `(x1, x2)` has index `x1 * |X2| + x2`, and outputs
    /// are laid out the same way.
    pub fn product(&self, other: &Channel) -> Channel {
        let mut rows = Vec::with_capacity(self.inputs() * other.inputs());
        for r1 in &self.rows {
            for r2 in &other.rows {
                let row = r1
                    .iter()
                    .flat_map(|&a| r2.iter().map(move |&b| a * b))
                    .collect();
                rows.push(row);
            }
        }
        Channel {
            rows,
            outputs: self.outputs * other.outputs,
        }
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn transition(&self, input: usize, output: usize) -> f64 {
        self.rows[input][output]
    }

    /// Output distribution for the given input distribution.
    pub fn output_distribution(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.outputs];
        for (px, row) in input.iter().zip(&self.rows) {
            for (o, w) in out.iter_mut().zip(row) {
                *o += px * w;
            }
        }
        out
    }
}

/// `I(X;Y)` in bits for `X ~ input` and `P_{Y|X} = channel`.
pub fn mutual_information(input: &[f64], channel: &Channel) -> Result<f64> {
    if input.len() != channel.inputs() {
        return Err(Error::Dimension {
            expected: channel.inputs(),
            got: input.len(),
        });
    }
    check_distribution(input, 1e-9)?;
    Ok(mutual_information_unchecked(input, channel))
}

pub(crate) fn mutual_information_unchecked(input: &[f64], channel: &Channel) -> f64 {
    let output = channel.output_distribution(input);
    let conditional: f64 = input
        .iter()
        .zip(channel.rows())
        .map(|(&px, row)| if px > 0.0 { px * entropy(row) } else { 0.0 })
        .sum();
    (entropy(&output) - conditional).max(0.0)
}
