//! Advantage values for the more-capable and less-noisy orderings between
//! `BSC_p` and `BEC_q`, a generic simplex search for the more-capable
//! advantage of arbitrary small channels, and numerical checks that the
//! more-capable advantage tensorizes over two-letter product channels.
//!
//! With `f(P) = I(P; W) - I(P; W~)`, the more-capable advantage of `W` over
//! `W~` is `-inf_P f(P)` and the less-noisy advantage is
//! `sup_P f^cave(P) - f(P)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{binary_entropy, entropy, mutual_information_unchecked, Channel, Probability};
use crate::midiff::{MiDiff, Regime};
use crate::numeric::grid_then_golden_max;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    BscOverBec,
    BecOverBsc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "mc")]
    MoreCapable,
    #[serde(rename = "ln")]
    LessNoisy,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bsc-over-bec" => Ok(Self::BscOverBec),
            "bec-over-bsc" => Ok(Self::BecOverBsc),
            other => Err(format!("unknown direction `{other}` (bsc-over-bec | bec-over-bsc)")),
        }
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mc" | "more-capable" => Ok(Self::MoreCapable),
            "ln" | "less-noisy" => Ok(Self::LessNoisy),
            other => Err(format!("unknown relation `{other}` (mc | ln)")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BscOverBec => "bsc-over-bec",
            Self::BecOverBsc => "bec-over-bsc",
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MoreCapable => "mc",
            Self::LessNoisy => "ln",
        })
    }
}

/// The smallest advantage making the stated relation hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdvantagePair {
    pub direction: Direction,
    pub relation: Relation,
    pub p: f64,
    pub q: f64,
    pub eta: f64,
}

impl AdvantagePair {
    pub fn compute(relation: Relation, direction: Direction, p: Probability, q: Probability) -> Result<Self> {
        let eta = match (relation, direction) {
            (Relation::MoreCapable, Direction::BscOverBec) => eta_mc_bsc_over_bec(p, q)?,
            (Relation::MoreCapable, Direction::BecOverBsc) => eta_mc_bec_over_bsc(p, q),
            (Relation::LessNoisy, Direction::BscOverBec) => eta_ln_bsc_over_bec(p, q)?,
            (Relation::LessNoisy, Direction::BecOverBsc) => eta_ln_bec_over_bsc(p, q)?,
        };
        Ok(Self {
            direction,
            relation,
            p: p.get(),
            q: q.get(),
            eta,
        })
    }
}

/// Parameters where `f` degenerates and the shape analysis does not apply.
enum Degenerate {
    /// `p = 0`: `f(r) = q h(r)`, concave and nonnegative.
    NoiselessBsc,
    /// `q = 0`: `f(r) = h(r * p) - h(p) - h(r)`, convex.
    NoiselessBec,
    /// `q = 1`: `f(r) = h(r * p) - h(p)`, concave and nonnegative.
    UselessBec,
}

fn classify(p: Probability, q: Probability) -> Result<std::result::Result<MiDiff, Degenerate>> {
    let pe = p.get().min(1.0 - p.get());
    if pe == 0.0 {
        return Ok(Err(Degenerate::NoiselessBsc));
    }
    match q.get() {
        0.0 => Ok(Err(Degenerate::NoiselessBec)),
        1.0 => Ok(Err(Degenerate::UselessBec)),
        _ => MiDiff::new(Probability::new(pe)?, q).map(Ok),
    }
}

/// Erasure probabilities this close above `4p(1-p)` evaluate both formula
/// branches and require them to agree.
const BOUNDARY_WINDOW: f64 = 1e-9;

/// `eta_mc(BSC_p, BEC_q)`: `h(p) - q` when `q <= 4p(1-p)`, otherwise
/// `-f(r0)`.
pub fn eta_mc_bsc_over_bec(p: Probability, q: Probability) -> Result<f64> {
    let f = match classify(p, q)? {
        Err(Degenerate::NoiselessBsc) | Err(Degenerate::UselessBec) => return Ok(0.0),
        Err(Degenerate::NoiselessBec) => return Ok(p.entropy()),
        Ok(f) => f,
    };
    let closed_form = binary_entropy(f.p()) - f.q();
    if f.regime() == Regime::ConvexDecreasing {
        return Ok(closed_form.max(0.0));
    }
    let (_, min) = f.minimum()?;
    let eta = (-min).max(0.0);
    if f.q() - f.convexity_threshold() < BOUNDARY_WINDOW {
        debug_assert!(
            (eta - closed_form).abs() < 1e-8,
            "branch mismatch at the convexity boundary: {eta} vs {closed_form}"
        );
    }
    Ok(eta)
}

/// `eta_mc(BEC_q, BSC_p) = max(0, q - h(p))`.
pub fn eta_mc_bec_over_bsc(p: Probability, q: Probability) -> f64 {
    (q.get() - p.entropy()).max(0.0)
}

/// `eta_ln(BEC_q, BSC_p)`: zero when `q <= 4p(1-p)`, otherwise
/// `q - h(p) - f(r0)`.
pub fn eta_ln_bec_over_bsc(p: Probability, q: Probability) -> Result<f64> {
    let f = match classify(p, q)? {
        Err(Degenerate::NoiselessBec) => return Ok(0.0),
        // f concave with f(0) = 0: the gap to the zero chord peaks at 1/2.
        Err(Degenerate::NoiselessBsc) | Err(Degenerate::UselessBec) => {
            return Ok(q.get() - p.entropy());
        }
        Ok(f) => f,
    };
    if f.regime() == Regime::ConvexDecreasing {
        return Ok(0.0);
    }
    let (_, min) = f.minimum()?;
    Ok((f.eval(0.5) - min).max(0.0))
}

/// `eta_ln(BSC_p, BEC_q)`: `h(p) - q` when `q <= 4p(1-p)`, `-f(r0)` when
/// `q <= h(p)`, and otherwise the supremum of `f^cave - f`, found
/// numerically on the chord part of the concave envelope.
pub fn eta_ln_bsc_over_bec(p: Probability, q: Probability) -> Result<f64> {
    let f = match classify(p, q)? {
        Err(Degenerate::NoiselessBsc) | Err(Degenerate::UselessBec) => return Ok(0.0),
        Err(Degenerate::NoiselessBec) => return Ok(p.entropy()),
        Ok(f) => f,
    };
    match f.regime() {
        Regime::ConvexDecreasing | Regime::InteriorMinMaxAtZero => eta_mc_bsc_over_bec(p, q),
        Regime::InteriorMinMaxAtHalf => Ok(concave_gap_sup(&f)?.1),
    }
}

/// `(argmax, max)` of `f^cave - f` over `[0, 1/2]`.
pub fn concave_gap_sup(f: &MiDiff) -> Result<(f64, f64)> {
    let cave = f.concave_envelope()?;
    let gap = |r: f64| cave.eval(r) - f.eval(r);
    let end = f.critical_points()?.r1.unwrap_or(0.5);
    let n = 10_000;
    let grid: Vec<f64> = (0..=n).map(|i| end * i as f64 / n as f64).collect();
    let (arg, max) = grid_then_golden_max(gap, &grid, 1e-8);
    Ok((arg, max.max(0.0)))
}

/// Configuration of the simplex search in [`eta_mc_generic`].
#[derive(Debug, Clone, Copy)]
pub struct SimplexSearch {
    /// Grid points per unit along each coordinate.
    pub resolution: usize,
    /// Coordinate-descent steps after the grid search.
    pub refinement_steps: usize,
}

impl Default for SimplexSearch {
    fn default() -> Self {
        Self {
            resolution: 200,
            refinement_steps: 50,
        }
    }
}

/// `-min_P I(P; w) - I(P; wt)` over the input simplex (alphabets up to 4),
/// by a uniform simplex grid followed by pairwise coordinate descent.
/// Clamped below at zero.
pub fn eta_mc_generic(w: &Channel, wt: &Channel, search: SimplexSearch) -> Result<f64> {
    let k = w.inputs();
    if wt.inputs() != k {
        return Err(Error::Dimension {
            expected: k,
            got: wt.inputs(),
        });
    }
    if k > 4 {
        return Err(Error::AlphabetTooLarge(k));
    }
    let f = |input: &[f64]| mutual_information_unchecked(input, w) - mutual_information_unchecked(input, wt);
    let n = search.resolution.max(1);

    let mut best = vec![0.0; k];
    let mut best_val = f64::INFINITY;
    let mut counts = vec![0usize; k];
    let mut point = vec![0.0; k];
    visit_compositions(n, k, &mut counts, 0, &mut |c| {
        for (x, &ci) in point.iter_mut().zip(c) {
            *x = ci as f64 / n as f64;
        }
        let v = f(&point);
        if v < best_val {
            best_val = v;
            best.copy_from_slice(&point);
        }
    });

    let mut step = 1.0 / n as f64;
    let mut candidate = vec![0.0; k];
    for _ in 0..search.refinement_steps {
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || best[j] <= 0.0 {
                    continue;
                }
                let delta = step.min(best[j]);
                candidate.copy_from_slice(&best);
                candidate[i] += delta;
                candidate[j] -= delta;
                let v = f(&candidate);
                if v < best_val {
                    best_val = v;
                    best.copy_from_slice(&candidate);
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((-best_val).max(0.0))
}

fn visit_compositions<F: FnMut(&[usize])>(remaining: usize, k: usize, counts: &mut Vec<usize>, idx: usize, visit: &mut F) {
    if idx + 1 == k {
        counts[idx] = remaining;
        visit(counts);
        return;
    }
    for c in 0..=remaining {
        counts[idx] = c;
        visit_compositions(remaining - c, k, counts, idx + 1, visit);
    }
}

/// A discrete joint distribution over a product of finite alphabets.
#[derive(Debug, Clone)]
struct Joint {
    dims: Vec<usize>,
    probs: Vec<f64>,
}

impl Joint {
    fn entropy_of(&self, vars: &[usize]) -> f64 {
        if vars.is_empty() {
            return 0.0;
        }
        let size: usize = vars.iter().map(|&v| self.dims[v]).product();
        let mut marginal = vec![0.0; size];
        let mut idx = vec![0usize; self.dims.len()];
        for &p in &self.probs {
            if p > 0.0 {
                let key = vars.iter().fold(0, |acc, &v| acc * self.dims[v] + idx[v]);
                marginal[key] += p;
            }
            for d in (0..idx.len()).rev() {
                idx[d] += 1;
                if idx[d] < self.dims[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        entropy(&marginal)
    }

    /// `I(A; B | C)`.
    fn cmi(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let with = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().chain(y).copied().collect() };
        let ac = with(a, c);
        let bc = with(b, c);
        let abc = with(&ac, b);
        self.entropy_of(&ac) + self.entropy_of(&bc) - self.entropy_of(&abc) - self.entropy_of(c)
    }
}

const X1: usize = 0;
const X2: usize = 1;
const Y1: usize = 2;
const Y2: usize = 3;
const Z1: usize = 4;
const Z2: usize = 5;

/// Both sides of the two-letter chain-rule decomposition
/// `I(X^2;Y^2) - I(X^2;Z^2) = [I(X2;Y2|Y1) - I(X2;Z2|Y1)] + [I(X1;Y1|Z2) - I(X1;Z1|Z2)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoLetterDecomposition {
    pub mi_y: f64,
    pub mi_z: f64,
    pub second_letter: f64,
    pub first_letter: f64,
    pub residual: f64,
}

/// Evaluates the two-letter decomposition exactly for the input law `joint`
/// on `X1 x X2` (index `x1 * |X2| + x2`), with `Y_i` the output of `w_i` and
/// `Z_i` the output of `wt_i`.
pub fn tensorization_identity_check(
    w1: &Channel,
    wt1: &Channel,
    w2: &Channel,
    wt2: &Channel,
    joint_input: &[f64],
) -> Result<TwoLetterDecomposition> {
    let (n1, n2) = (w1.inputs(), w2.inputs());
    if wt1.inputs() != n1 || wt2.inputs() != n2 {
        return Err(Error::Dimension {
            expected: n1,
            got: wt1.inputs(),
        });
    }
    if joint_input.len() != n1 * n2 {
        return Err(Error::Dimension {
            expected: n1 * n2,
            got: joint_input.len(),
        });
    }
    crate::info::check_distribution(joint_input, 1e-9)?;

    let dims = vec![n1, n2, w1.outputs(), w2.outputs(), wt1.outputs(), wt2.outputs()];
    let mut probs = Vec::with_capacity(dims.iter().product());
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            let px = joint_input[x1 * n2 + x2];
            for y1 in 0..dims[Y1] {
                for y2 in 0..dims[Y2] {
                    let py = px * w1.transition(x1, y1) * w2.transition(x2, y2);
                    for z1 in 0..dims[Z1] {
                        for z2 in 0..dims[Z2] {
                            probs.push(py * wt1.transition(x1, z1) * wt2.transition(x2, z2));
                        }
                    }
                }
            }
        }
    }
    let joint = Joint { dims, probs };

    let mi_y = joint.cmi(&[X1, X2], &[Y1, Y2], &[]);
    let mi_z = joint.cmi(&[X1, X2], &[Z1, Z2], &[]);
    let second_letter = joint.cmi(&[X2], &[Y2], &[Y1]) - joint.cmi(&[X2], &[Z2], &[Y1]);
    let first_letter = joint.cmi(&[X1], &[Y1], &[Z2]) - joint.cmi(&[X1], &[Z1], &[Z2]);
    Ok(TwoLetterDecomposition {
        mi_y,
        mi_z,
        second_letter,
        first_letter,
        residual: ((mi_y - mi_z) - (second_letter + first_letter)).abs(),
    })
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A flat-Dirichlet draw on `len` atoms.
fn random_distribution<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Largest residual of the two-letter decomposition over `trials` random
/// joint inputs and random BSC/BEC parameters.
pub fn max_identity_residual(trials: usize, seed: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let mut prob = || Probability::new(rng.random::<f64>()).expect("unit interval");
        let (w1, wt1) = (Channel::bsc(prob()), Channel::bec(prob()));
        let (w2, wt2) = (Channel::bsc(prob()), Channel::bec(prob()));
        let joint = random_distribution(&mut rng, 4);
        let d = tensorization_identity_check(&w1, &wt1, &w2, &wt2, &joint)?;
        worst = worst.max(d.residual);
    }
    Ok(worst)
}

/// Outcome of [`tensorization_bound_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorizationSlack {
    pub eta: f64,
    pub min_slack: f64,
    pub worst_input: Vec<f64>,
}

/// Checks `I(X^2; Y^2) + 2 eta >= I(X^2; Z^2)` for `Y` through `BSC_p` and `Z`
/// through `BEC_q` with `eta = eta_mc(BSC_p, BEC_q)`.
pub fn tensorization_bound_check(p: Probability, q: Probability, trials: usize, seed: u64) -> Result<TensorizationSlack> {
    let eta = eta_mc_bsc_over_bec(p, q)?;
    tensorization_slack(p, q, eta, trials, seed)
}

/// Smallest slack of `I(X^2; Y^2) + 2 eta - I(X^2; Z^2)` over `trials` inputs.
///
/// Trial 0 is the uniform input and trial 1 the product of two copies of the
/// single-letter minimiser of `f`; later trials alternate between flat
/// Dirichlet joints and products of independent random Bernoulli marginals.
pub fn tensorization_slack(p: Probability, q: Probability, eta: f64, trials: usize, seed: u64) -> Result<TensorizationSlack> {
    let w = Channel::bsc(p).product(&Channel::bsc(p));
    let wt = Channel::bec(q).product(&Channel::bec(q));
    let minimiser = match classify(p, q)? {
        Ok(f) => f.minimum()?.0,
        Err(_) => 0.5,
    };
    let product = |a: f64, b: f64| vec![(1.0 - a) * (1.0 - b), (1.0 - a) * b, a * (1.0 - b), a * b];

    let mut result = TensorizationSlack {
        eta,
        min_slack: f64::INFINITY,
        worst_input: Vec::new(),
    };
    for t in 0..trials.max(1) {
        let input = match t {
            0 => vec![0.25; 4],
            1 => product(minimiser, minimiser),
            _ => {
                let mut rng = trial_rng(seed, t as u64);
                if t % 2 == 0 {
                    random_distribution(&mut rng, 4)
                } else {
                    product(rng.random(), rng.random())
                }
            }
        };
        let slack = mutual_information_unchecked(&input, &w) + 2.0 * eta - mutual_information_unchecked(&input, &wt);
        if slack < result.min_slack {
            result.min_slack = slack;
            result.worst_input = input;
        }
    }
    Ok(result)
}

/// Largest change of `p -> eta_mc(BSC_p, BEC_q)` between adjacent points of
/// `p_grid`, which must be strictly increasing inside `]0, 1/2]`.
pub fn continuity_scan(q: Probability, p_grid: &[f64]) -> Result<f64> {
    if let Some(&bad) = p_grid.iter().find(|&&p| !(p > 0.0 && p <= 0.5)) {
        return Err(Error::Domain {
            name: "p",
            value: bad,
            domain: "]0, 1/2]",
        });
    }
    if p_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Range("p grid must be strictly increasing".into()));
    }
    let etas = p_grid
        .iter()
        .map(|&p| eta_mc_bsc_over_bec(Probability::new(p)?, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(etas.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max))
}
