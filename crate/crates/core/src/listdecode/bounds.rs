//! Upper bounds on the list-size exponent `gamma` (list size `2^(gamma n)`)
//! of a code that achieves capacity on `BEC_q`, when used on `BSC_p`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{binary_entropy, binary_entropy_inv, convolve, Probability};
use crate::numeric::grid_then_golden_max;
use crate::ordering::eta_mc_bsc_over_bec;

fn check_rate(rate: f64) -> Result<()> {
    if rate > 0.0 && rate <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "rate",
            value: rate,
            domain: "]0, 1]",
        })
    }
}

fn check_crossover(p: Probability) -> Result<f64> {
    let p = p.get();
    if p > 0.0 && p < 0.5 {
        Ok(p)
    } else {
        Err(Error::Domain {
            name: "p",
            value: p,
            domain: "]0, 1/2[",
        })
    }
}

/// `gamma <= eta_mc(BSC_p, BEC_q)`.
pub fn exponent_bound_mc(p: Probability, q: Probability) -> Result<f64> {
    eta_mc_bsc_over_bec(p, q)
}

/// `gamma <= max(p log2(2/R), 4p)`, valid for every transitive linear code.
pub fn rao_sprumont_bound(p: Probability, rate: f64) -> Result<f64> {
    check_rate(rate)?;
    let p = p.get();
    Ok((p * (2.0 / rate).log2()).max(4.0 * p))
}

/// `gamma <= min(R, h(p))`.
pub fn trivial_bound(p: Probability, rate: f64) -> Result<f64> {
    check_rate(rate)?;
    Ok(rate.min(p.entropy()))
}

/// `p0(q) = 1/2 - sqrt(2^(q-1) (1 - 2^(q-1)))`: below this crossover, codes
/// with fast-vanishing error on `BEC_q` also decode `BSC_p` uniquely.
pub fn unique_decoding_threshold(q: Probability) -> f64 {
    let t = (q.get() - 1.0).exp2();
    0.5 - (t * (1.0 - t)).sqrt()
}

/// Chains unique decodability on `BSC_p'` for `p' < p0(q)` with Mrs Gerber's
/// lemma: `H(Y_p)/n >= h(p'' * h^-1(min(1, R + h(p'))))` where
/// `p' * p'' = p`, so `gamma <= R + h(p) - sup_p' (that bound)`, capped at
/// the trivial bound.
///
/// Returns `Some(0)` when `p < p0(q)` and `None` when `p0(q) = 0`, where no
/// intermediate crossover exists.
pub fn mgl_chain_bound(p: Probability, q: Probability, rate: f64) -> Result<Option<f64>> {
    check_rate(rate)?;
    let pv = check_crossover(p)?;
    let p0 = unique_decoding_threshold(q);
    if p0 <= 0.0 {
        return Ok(None);
    }
    if pv < p0 {
        return Ok(Some(0.0));
    }
    let entropy_floor = |pp: f64| -> f64 {
        let h_low = (rate + binary_entropy(pp)).min(1.0);
        let inner = binary_entropy_inv(h_low).expect("clamped to [0, 1]");
        let pdd = (pv - pp) / (1.0 - 2.0 * pp);
        binary_entropy(convolve(pdd, inner))
    };
    let hi = p0.min(pv);
    let grid: Vec<f64> = (0..=1000).map(|i| hi * i as f64 / 1000.0).collect();
    let (_, best) = grid_then_golden_max(entropy_floor, &grid, 1e-10);
    let bound = (rate + binary_entropy(pv) - best).max(0.0);
    Ok(Some(bound.min(rate.min(binary_entropy(pv)))))
}

/// Error probability bound `(1 - h(p) + eta) / (1 - h(p) + eta + delta)` for
/// a list decoder of list size `2^((eta + delta) n)`.
pub fn pe_bound(p: Probability, eta: f64, delta: f64) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            domain: "]0, inf[",
        });
    }
    if eta.is_nan() || eta < 0.0 {
        return Err(Error::Domain {
            name: "eta",
            value: eta,
            domain: "[0, inf[",
        });
    }
    let num = 1.0 - p.entropy() + eta;
    Ok(num / (num + delta))
}

/// All exponent bounds at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentReport {
    pub p: f64,
    pub q: f64,
    pub rate: f64,
    pub eta_bound: f64,
    /// The Rao–Sprumont expression, which exceeds 1 for large `p`.
    pub rs_bound: f64,
    pub mgl_chain_bound: Option<f64>,
    pub trivial_bound: f64,
    pub pe: f64,
}

impl ExponentReport {
    pub fn compute(p: Probability, q: Probability, rate: f64, delta: f64) -> Result<Self> {
        let eta_bound = exponent_bound_mc(p, q)?;
        Ok(Self {
            p: p.get(),
            q: q.get(),
            rate,
            eta_bound,
            rs_bound: rao_sprumont_bound(p, rate)?,
            mgl_chain_bound: mgl_chain_bound(p, q, rate)?,
            trivial_bound: trivial_bound(p, rate)?,
            pe: pe_bound(p, eta_bound, delta)?,
        })
    }
}
