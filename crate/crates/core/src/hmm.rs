//! Entropy-rate bounds for the binary symmetric hidden Markov process
//! `X_{k+1} = X_k + W_{k+1}`, `Y_k = X_k + Z_k` with `W ~ Ber(q)`,
//! `Z ~ Ber(alpha)` and `X_1` uniform.
//!
//! Two lower bounds are compared: `h(alpha * h^-1(E h(q^{*G})))` with
//! `G ~ Geom(1 - gamma)` at `gamma = 4 alpha (1 - alpha)`, and
//! `sup_gamma (1 - gamma) E h(q^{*G}) + h(alpha) - eta_mc(BSC_alpha, BEC_gamma)`.
//! An exact finite-`n` bracket of the true rate from conditional entropies
//! serves as the reference.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{binary_entropy, binary_entropy_inv, convolve, Probability};
use crate::numeric::grid_then_golden_max;
use crate::ordering::eta_mc_bsc_over_bec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HmmParams {
    q: f64,
    alpha: f64,
}

impl HmmParams {
    /// Requires `0 < q < 1/2` and `0 < alpha < 1/2`.
    pub fn new(q: f64, alpha: f64) -> Result<Self> {
        for (name, value) in [("q", q), ("alpha", alpha)] {
            if !(value > 0.0 && value < 0.5) {
                return Err(Error::Domain {
                    name,
                    value,
                    domain: "]0, 1/2[",
                });
            }
        }
        Ok(Self { q, alpha })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `4 alpha (1 - alpha)`.
    pub fn natural_gamma(&self) -> f64 {
        4.0 * self.alpha * (1.0 - self.alpha)
    }
}

/// A truncated series with a bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    pub error_bound: f64,
    pub terms: u64,
}

/// Truncation threshold on the complement tail mass.
const SERIES_TAIL: f64 = 1e-13;

/// `E h(q^{*G})` for `Pr[G = g] = gamma^(g-1) (1 - gamma)`, `g >= 1`.
pub fn geometric_expected_entropy(q: Probability, gamma: f64) -> Result<f64> {
    Ok(geometric_expected_entropy_with_error(q, gamma)?.value)
}

/// As [`geometric_expected_entropy`], with the truncation error bound.
///
/// The series is summed as `1 - sum_g Pr[G = g] (1 - h(q^{*g}))`. The terms
/// `1 - h(q^{*g})` are nonincreasing in `g`, so after `K` terms the omitted
/// part lies in `[0, gamma^K (1 - h(q^{*(K+1)}))]`; summation stops once that
/// width drops below `1e-13` and the midpoint is added. Unlike the direct
/// sum, the number of terms stays bounded as `gamma -> 1` whenever
/// `0 < q < 1`.
pub fn geometric_expected_entropy_with_error(q: Probability, gamma: f64) -> Result<SeriesSum> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            domain: "[0, 1[",
        });
    }
    let ratio = 1.0 - 2.0 * q.get();
    let mut power = ratio; // (1 - 2q)^g
    let mut weight = 1.0 - gamma; // Pr[G = g]
    let mut mass = 1.0; // Pr[G >= g] = gamma^(g-1)
    let mut deficit = 0.0;
    let mut terms = 0u64;
    loop {
        let gap = 1.0 - binary_entropy((1.0 - power) / 2.0);
        deficit += weight * gap;
        terms += 1;
        mass *= gamma;
        weight *= gamma;
        power *= ratio;
        let next_gap = 1.0 - binary_entropy((1.0 - power) / 2.0);
        let width = mass * next_gap;
        if width < SERIES_TAIL {
            return Ok(SeriesSum {
                value: 1.0 - deficit - width / 2.0,
                error_bound: width / 2.0,
                terms,
            });
        }
    }
}

/// `h(alpha * h^-1(E h(q^{*G})))` at `gamma = 4 alpha (1 - alpha)`.
pub fn ordentlich_bound(params: HmmParams) -> Result<f64> {
    let e = geometric_expected_entropy(Probability::new(params.q)?, params.natural_gamma())?;
    Ok(binary_entropy(convolve(params.alpha, binary_entropy_inv(e.min(1.0))?)))
}

/// Largest `gamma` at which the advantage objective is evaluated.
pub const GAMMA_MAX: f64 = 1.0 - 1e-6;

/// `(1 - gamma) E h(q^{*G}) + h(alpha) - eta_mc(BSC_alpha, BEC_gamma)`.
pub fn advantage_objective(params: HmmParams, gamma: f64) -> Result<f64> {
    let e = geometric_expected_entropy(Probability::new(params.q)?, gamma)?;
    let eta = eta_mc_bsc_over_bec(Probability::new(params.alpha)?, Probability::new(gamma)?)?;
    Ok((1.0 - gamma) * e + binary_entropy(params.alpha) - eta)
}

/// Supremum of [`advantage_objective`] over `gamma` in
/// `[0, GAMMA_MAX]`: a `1e-3` grid refined by golden-section search to `1e-6`.
/// Returns `(value, argmax)`.
pub fn advantage_bound(params: HmmParams) -> Result<(f64, f64)> {
    let mut grid: Vec<f64> = (0..1000).map(|i| i as f64 * 1e-3).collect();
    grid.push(GAMMA_MAX);
    // The objective has a kink at the natural gamma, often where the sup sits.
    grid.push(params.natural_gamma().min(GAMMA_MAX));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    // Objective errors are impossible for gamma in range; NaN keeps them out
    // of the maximum should one occur.
    let objective = |g: f64| advantage_objective(params, g).unwrap_or(f64::NAN);
    if let Some(g) = grid.iter().find(|&&g| objective(g).is_nan()) {
        return Err(Error::Domain {
            name: "gamma",
            value: *g,
            domain: "[0, 1[",
        });
    }
    let (gamma, value) = grid_then_golden_max(objective, &grid, 1e-6);
    Ok((value, gamma))
}

/// `[H(Y_n | Y^{n-1}, X_1), H(Y_n | Y^{n-1})]`, computed exactly by
/// enumerating all observation prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateBracket {
    pub lower: f64,
    pub upper: f64,
}

/// Prefix length enumerated sequentially before splitting into parallel
/// subtrees.
const SPLIT_DEPTH: usize = 6;

pub fn true_rate_bracket(params: HmmParams, n: usize) -> Result<RateBracket> {
    if !(2..=22).contains(&n) {
        return Err(Error::ObservationLength(n));
    }
    let chain = Chain {
        q: params.q,
        alpha: params.alpha,
    };
    Ok(RateBracket {
        upper: chain.predictive_entropy([0.5, 0.5], n),
        lower: chain.predictive_entropy([1.0, 0.0], n),
    })
}

struct Chain {
    q: f64,
    alpha: f64,
}

impl Chain {
    /// Emission-weighted forward step: from `a[x] = P(y^k, X_k = x)` to
    /// `P(y^{k+1}, X_{k+1} = x)` for the next observation `y`.
    fn step(&self, a: [f64; 2], y: usize) -> [f64; 2] {
        let pred = [
            a[0] * (1.0 - self.q) + a[1] * self.q,
            a[0] * self.q + a[1] * (1.0 - self.q),
        ];
        self.emit(pred, y)
    }

    fn emit(&self, pred: [f64; 2], y: usize) -> [f64; 2] {
        let like = |x: usize| if x == y { 1.0 - self.alpha } else { self.alpha };
        [pred[0] * like(0), pred[1] * like(1)]
    }

    /// `H(Y_n | Y^{n-1})` when `X_1` has law `init`. By symmetry,
    /// `init = [1, 0]` gives the entropy conditioned on `X_1` as well.
    fn predictive_entropy(&self, init: [f64; 2], n: usize) -> f64 {
        // Forward messages after the first min(SPLIT_DEPTH, n-1) observations.
        let depth = SPLIT_DEPTH.min(n - 1);
        let mut frontier = vec![self.emit(init, 0), self.emit(init, 1)];
        for _ in 1..depth {
            frontier = frontier
                .into_iter()
                .flat_map(|a| [self.step(a, 0), self.step(a, 1)])
                .collect();
        }
        let remaining = n - 1 - depth;
        let parts: Vec<f64> = frontier
            .into_par_iter()
            .map(|a| self.subtree(a, remaining))
            .collect();
        parts.iter().sum()
    }

    /// Sum over continuations of length `remaining` of
    /// `P(y^{n-1}) h(P(Y_n = 1 | y^{n-1}))`.
    fn subtree(&self, a: [f64; 2], remaining: usize) -> f64 {
        if remaining == 0 {
            let total = a[0] + a[1];
            if total == 0.0 {
                return 0.0;
            }
            let next = self.step(a, 1);
            return total * binary_entropy((next[0] + next[1]) / total);
        }
        self.subtree(self.step(a, 0), remaining - 1) + self.subtree(self.step(a, 1), remaining - 1)
    }
}

/// All rate bounds at one `(alpha, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateBounds {
    pub q: f64,
    pub alpha: f64,
    pub ordentlich: f64,
    pub advantage: f64,
    pub advantage_argmax_gamma: f64,
    pub true_lower: f64,
    pub true_upper: f64,
}

impl RateBounds {
    pub fn compute(params: HmmParams, n: usize) -> Result<Self> {
        let (advantage, gamma) = advantage_bound(params)?;
        let bracket = true_rate_bracket(params, n)?;
        Ok(Self {
            q: params.q,
            alpha: params.alpha,
            ordentlich: ordentlich_bound(params)?,
            advantage,
            advantage_argmax_gamma: gamma,
            true_lower: bracket.lower,
            true_upper: bracket.upper,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::kfold_convolve;

    fn params(q: f64, alpha: f64) -> HmmParams {
        HmmParams::new(q, alpha).unwrap()
    }

    fn pr(x: f64) -> Probability {
        Probability::new(x).unwrap()
    }

    fn brute_series(q: f64, gamma: f64, terms: u64) -> f64 {
        let mut w = 1.0 - gamma;
        let mut sum = 0.0;
        for g in 1..=terms {
            sum += w * binary_entropy(kfold_convolve(q, g));
            w *= gamma;
        }
        sum
    }

    #[test]
    fn series_examples() {
        assert!((geometric_expected_entropy(pr(0.11), 0.0).unwrap() - binary_entropy(0.11)).abs() < 1e-14);
        assert!((geometric_expected_entropy(pr(0.5), 0.7).unwrap() - 1.0).abs() < 1e-15);
        let v = geometric_expected_entropy(pr(0.11), 0.3916).unwrap();
        assert!(v > binary_entropy(0.11) && v < 1.0);
        assert!((v - brute_series(0.11, 0.3916, 1_000_000)).abs() < 1e-10);
        // 40-digit reference.
        assert!((v - 0.606_852_594_628_959_7).abs() < 1e-12);
        assert!(geometric_expected_entropy(pr(0.11), 1.0).is_err());
    }

    #[test]
    fn series_error_bound_covers_brute_sum() {
        for (q, g) in [(0.02, 0.9), (0.11, 0.99), (0.3, 0.5), (0.05, 0.999)] {
            let s = geometric_expected_entropy_with_error(pr(q), g).unwrap();
            let brute = brute_series(q, g, 200_000);
            assert!((s.value - brute).abs() <= s.error_bound + 1e-11, "q={q} g={g}");
        }
        let near_one = geometric_expected_entropy_with_error(pr(0.11), GAMMA_MAX).unwrap();
        assert!(near_one.terms < 200);
    }

    #[test]
    fn series_nondecreasing_in_gamma() {
        for q in [0.02, 0.11, 0.3] {
            let mut prev = 0.0;
            for i in 0..=100 {
                let v = geometric_expected_entropy(pr(q), (i as f64 / 100.0).min(GAMMA_MAX)).unwrap();
                assert!(v >= prev - 1e-13);
                prev = v;
            }
        }
    }

    #[test]
    fn ordentlich_examples() {
        let v = ordentlich_bound(params(0.11, 0.11)).unwrap();
        assert!((v - 0.771_099_525_558_433_2).abs() < 1e-10);
        let tiny_alpha = ordentlich_bound(params(0.11, 1e-9)).unwrap();
        assert!((tiny_alpha - binary_entropy(0.11)).abs() < 1e-6);
        let near_half = ordentlich_bound(params(0.5 - 1e-9, 0.2)).unwrap();
        assert!((near_half - 1.0).abs() < 1e-9);
    }

    #[test]
    fn advantage_examples() {
        let p = params(0.11, 0.11);
        let (value, gamma) = advantage_bound(p).unwrap();
        let ord = ordentlich_bound(p).unwrap();
        assert!(value >= ord - 1e-9);
        assert!(value >= advantage_objective(p, p.natural_gamma()).unwrap() - 1e-12);
        assert!(gamma >= p.natural_gamma());
        assert!((value - 0.786_36).abs() < 1e-4);
        assert!((advantage_objective(p, 0.0).unwrap() - binary_entropy(0.11)).abs() < 1e-14);
    }

    #[test]
    fn bounds_lie_between_noise_entropy_and_one() {
        for (q, a) in [(0.02, 0.11), (0.11, 0.3), (0.4, 0.05)] {
            let p = params(q, a);
            for v in [ordentlich_bound(p).unwrap(), advantage_bound(p).unwrap().0] {
                assert!(v >= binary_entropy(a) - 1e-12 && v <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let b = true_rate_bracket(params(0.11, 0.11), 18).unwrap();
        assert!(b.lower <= b.upper);
        assert!(b.upper - b.lower < 5e-4);
        assert!((b.upper - 0.799_770_560_057_511_3).abs() < 1e-10);
        assert!((b.lower - 0.799_770_560_056_994_9).abs() < 1e-10);
        assert!(b.lower > advantage_bound(params(0.11, 0.11)).unwrap().0);

        let clean = true_rate_bracket(params(0.11, 1e-12), 4).unwrap();
        assert!((clean.upper - binary_entropy(0.11)).abs() < 1e-9);
        assert!((clean.lower - binary_entropy(0.11)).abs() < 1e-9);
        let iid = true_rate_bracket(params(0.5 - 1e-12, 0.2), 5).unwrap();
        assert!((iid.upper - 1.0).abs() < 1e-9 && (iid.lower - 1.0).abs() < 1e-9);

        assert!(true_rate_bracket(params(0.1, 0.1), 1).is_err());
        assert!(true_rate_bracket(params(0.1, 0.1), 23).is_err());
    }

    #[test]
    fn bracket_tightens_with_n() {
        for (q, a) in [(0.11, 0.11), (0.05, 0.3), (0.3, 0.02)] {
            let p = params(q, a);
            let mut prev = true_rate_bracket(p, 2).unwrap();
            for n in 3..=12 {
                let b = true_rate_bracket(p, n).unwrap();
                assert!(b.upper <= prev.upper + 1e-14);
                assert!(b.lower >= prev.lower - 1e-14);
                prev = b;
            }
        }
    }

    #[test]
    fn bracket_matches_joint_entropy_difference() {
        // Reference: H(Y^n) - H(Y^{n-1}) by summing over all strings.
        let p = params(0.2, 0.15);
        let chain = Chain { q: 0.2, alpha: 0.15 };
        let joint_entropy = |n: usize| -> f64 {
            (0..1usize << n)
                .map(|bits| {
                    let mut a = chain.emit([0.5, 0.5], bits & 1);
                    for k in 1..n {
                        a = chain.step(a, bits >> k & 1);
                    }
                    let pr = a[0] + a[1];
                    -pr * pr.log2()
                })
                .sum()
        };
        let b = true_rate_bracket(p, 8).unwrap();
        assert!((b.upper - (joint_entropy(8) - joint_entropy(7))).abs() < 1e-12);
    }
}
