//! The randomized MAP list decoder, its derandomized threshold variant
//! `D_alpha`, exhaustive checks of their structural properties on small
//! codes, exact and Monte Carlo success probabilities over `BSC_p`, and the
//! list-decoding exponent bounds.
//!
//! For a received word `y` and list size `L`, `d*` is the smallest radius
//! whose ball around `y` holds at least `L` codewords, `S1` the codewords
//! strictly inside that radius, `S2` those on its boundary and
//! `W = L - |S1|`. The randomized decoder returns `S1` plus `W` uniformly
//! chosen members of `S2`; `D_alpha` returns `S1 ∪ S2` when
//! `W / |S2| >= alpha` and `S1` otherwise.

mod bounds;
mod code;

pub use bounds::*;
pub use code::*;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exhaustive checks enumerate all `2^n` received words up to this length.
pub const EXHAUSTIVE_MAX_N: usize = 16;

/// Full decoder state for one received word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListDecoderState {
    pub d_star: u32,
    pub s1: Vec<Word>,
    pub s2: Vec<Word>,
    pub w: usize,
    /// `profile[d]` is the number of codewords at distance `d`.
    pub profile: Vec<usize>,
}

impl ListDecoderState {
    /// Probability that the randomized decoder lists `x`.
    pub fn inclusion_probability(&self, x: Word) -> f64 {
        if self.s1.contains(&x) {
            1.0
        } else if self.s2.contains(&x) {
            self.w as f64 / self.s2.len() as f64
        } else {
            0.0
        }
    }
}

fn check_list_size(code: &BlockCode, list: usize) -> Result<()> {
    if list == 0 || list > code.len() {
        Err(Error::ListSize {
            list,
            codewords: code.len(),
        })
    } else {
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "alpha",
            value: alpha,
            domain: "]0, 1]",
        })
    }
}

/// Computes `d*`, `S1`, `S2`, `W` and the distance profile by enumerating
/// the code.
pub fn map_list_state(code: &BlockCode, y: Word, list: usize) -> Result<ListDecoderState> {
    check_list_size(code, list)?;
    let shells = Shells::of(code, y, list);
    let mut profile = vec![0; code.n() + 1];
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    for &c in code.codewords() {
        let d = distance(c, y);
        profile[d as usize] += 1;
        if d < shells.d_star {
            s1.push(c);
        } else if d == shells.d_star {
            s2.push(c);
        }
    }
    Ok(ListDecoderState {
        d_star: shells.d_star,
        w: list - s1.len(),
        s1,
        s2,
        profile,
    })
}

/// `S1(y)` together with `W(y)` uniformly chosen members of `S2(y)`, drawn
/// by a partial Fisher–Yates shuffle from a generator seeded with `seed`.
pub fn map_decode_randomized(code: &BlockCode, y: Word, list: usize, seed: u64) -> Result<Vec<Word>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(randomized_output(map_list_state(code, y, list)?, &mut rng))
}

fn randomized_output<R: Rng>(state: ListDecoderState, rng: &mut R) -> Vec<Word> {
    let ListDecoderState { mut s1, mut s2, w, .. } = state;
    let (chosen, _) = s2.partial_shuffle(rng, w);
    s1.extend_from_slice(chosen);
    s1
}

/// The deterministic decoder `D_alpha`.
pub fn d_alpha_decode(code: &BlockCode, y: Word, list: usize, alpha: f64) -> Result<Vec<Word>> {
    check_alpha(alpha)?;
    let state = map_list_state(code, y, list)?;
    let mut out = state.s1;
    if state.w as f64 / state.s2.len() as f64 >= alpha {
        out.extend(state.s2);
    }
    Ok(out)
}

/// Shell sizes around one received word; enough to answer every membership
/// question because membership depends only on the distance to `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shells {
    d_star: u32,
    s1: u32,
    s2: u32,
    list: u32,
}

impl Shells {
    fn of(code: &BlockCode, y: Word, list: usize) -> Self {
        let mut hist = [0u32; 65];
        for &c in code.codewords() {
            hist[distance(c, y) as usize] += 1;
        }
        let mut below = 0;
        for (d, &count) in hist.iter().enumerate() {
            if below + count as usize >= list {
                return Self {
                    d_star: d as u32,
                    s1: below as u32,
                    s2: count,
                    list: list as u32,
                };
            }
            below += count as usize;
        }
        unreachable!("list size is at most the code size")
    }

    fn w(self) -> u32 {
        self.list - self.s1
    }

    /// Probability that the randomized decoder lists a word at distance `d`.
    fn map_inclusion(self, d: u32) -> f64 {
        if d < self.d_star {
            1.0
        } else if d == self.d_star {
            self.w() as f64 / self.s2 as f64
        } else {
            0.0
        }
    }

    fn takes_boundary(self, alpha: f64) -> bool {
        self.w() as f64 / self.s2 as f64 >= alpha
    }

    fn d_alpha_inclusion(self, d: u32, alpha: f64) -> bool {
        d < self.d_star || (d == self.d_star && self.takes_boundary(alpha))
    }

    fn d_alpha_size(self, alpha: f64) -> u32 {
        if self.takes_boundary(alpha) {
            self.s1 + self.s2
        } else {
            self.s1
        }
    }
}

/// Shell sizes for every received word of a short code.
#[derive(Debug, Clone)]
pub struct DecoderTable {
    n: usize,
    list: usize,
    shells: Vec<Shells>,
}

impl DecoderTable {
    pub fn build(code: &BlockCode, list: usize) -> Result<Self> {
        check_list_size(code, list)?;
        if code.n() > EXHAUSTIVE_MAX_N {
            return Err(Error::Enumeration {
                n: code.n(),
                max: EXHAUSTIVE_MAX_N,
            });
        }
        let shells = (0..1u64 << code.n())
            .into_par_iter()
            .map(|y| Shells::of(code, y, list))
            .collect();
        Ok(Self {
            n: code.n(),
            list,
            shells,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn list(&self) -> usize {
        self.list
    }

    /// `P(y)`: probability that the randomized decoder lists the zero word.
    pub fn map_success(&self, y: Word) -> f64 {
        self.shells[y as usize].map_inclusion(y.count_ones())
    }

    /// Whether `D_alpha(y)` lists the zero word.
    pub fn d_alpha_success(&self, y: Word, alpha: f64) -> bool {
        self.shells[y as usize].d_alpha_inclusion(y.count_ones(), alpha)
    }

    /// Sum over received words of each weight of the zero-word success
    /// probability, so that success over `BSC_p` is
    /// `sum_w profile[w] p^w (1-p)^(n-w)`.
    pub fn weight_profile(&self, decoder: Decoder) -> Vec<f64> {
        let mut profile = vec![0.0; self.n + 1];
        for y in 0..self.shells.len() as Word {
            let s = match decoder {
                Decoder::Map => self.map_success(y),
                Decoder::DAlpha(alpha) => f64::from(u8::from(self.d_alpha_success(y, alpha))),
            };
            profile[y.count_ones() as usize] += s;
        }
        profile
    }
}

/// Which list decoder a success probability refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Decoder {
    /// The randomized MAP decoder.
    Map,
    /// The threshold decoder `D_alpha`.
    DAlpha(f64),
}

/// Exact probability that the zero codeword is listed when `y` is drawn from
/// `BSC_p^n` applied to it.
pub fn success_from_profile(profile: &[f64], p: f64) -> f64 {
    let n = profile.len() - 1;
    profile
        .iter()
        .enumerate()
        .map(|(w, &s)| s * p.powi(w as i32) * (1.0 - p).powi((n - w) as i32))
        .sum()
}

/// Outcome of one exhaustive property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl PropertyCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Results of [`success_indicator_properties`], in a fixed order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub list: usize,
    pub alpha: f64,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(PropertyCheck::holds)
    }

    pub fn first_failure(&self) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| !c.holds())
    }
}

struct Checker {
    name: &'static str,
    cases: u64,
    counterexample: Option<String>,
}

impl Checker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    /// Records one case; keeps only the first failure.
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> PropertyCheck {
        PropertyCheck {
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

/// Exhaustively checks, over all `2^n` received words:
///
/// * `structure`: `|S1| < L <= |S1| + |S2|`, and the randomized decoder
///   outputs exactly `L` codewords;
/// * `list-size`: `|D_alpha(y)| <= L / alpha`;
/// * `map-monotone`: `P(y + e_i) <= P(y)` whenever `y_i = 0`;
/// * `d-alpha-monotone`: the same for the indicator `0 ∈ D_alpha(y)`;
/// * `shift-invariance`: for every codeword `x` and word `z`, `x` is listed
///   at `x + z` exactly as `0` is listed at `z` (both decoders);
/// * `symmetry`: for each supplied group generator `pi`, success at `pi(y)`
///   equals success at `y` (both decoders).
pub fn success_indicator_properties(code: &BlockCode, list: usize, alpha: f64) -> Result<PropertyReport> {
    check_alpha(alpha)?;
    let table = DecoderTable::build(code, list)?;
    let n = code.n();
    let words = 0..1u64 << n;
    let show = |y: Word| word_to_string(y, n);

    let mut structure = Checker::new("structure");
    let mut size = Checker::new("list-size");
    for y in words.clone() {
        let s = table.shells[y as usize];
        structure.case(s.s1 < s.list && s.list <= s.s1 + s.s2, || {
            format!("y={}: |S1|={} |S2|={} L={list}", show(y), s.s1, s.s2)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(y);
        let state = map_list_state(code, y, list)?;
        let out = randomized_output(state, &mut rng).len();
        structure.case(out == list, || format!("y={}: randomized output has {out} codewords", show(y)));
        let d_size = s.d_alpha_size(alpha);
        size.case(f64::from(d_size) <= list as f64 / alpha + 1e-12, || {
            format!("y={}: |D_alpha(y)|={d_size} > L/alpha={}", show(y), list as f64 / alpha)
        });
    }

    let mut map_mono = Checker::new("map-monotone");
    let mut dalpha_mono = Checker::new("d-alpha-monotone");
    for y in words.clone() {
        for i in (0..n).filter(|&i| y >> i & 1 == 0) {
            let up = y | 1 << i;
            let (a, b) = (table.map_success(y), table.map_success(up));
            map_mono.case(b <= a, || format!("y={} i={i}: P(y)={a} < P(y+e_i)={b}", show(y)));
            let (a, b) = (table.d_alpha_success(y, alpha), table.d_alpha_success(up, alpha));
            dalpha_mono.case(!b || a, || format!("y={} i={i}: 0 listed at y+e_i but not at y", show(y)));
        }
    }

    let mut shift = Checker::new("shift-invariance");
    if !code.contains(0) {
        shift.case(false, || "the zero word is not a codeword".into());
    }
    for &x in code.codewords() {
        for z in words.clone() {
            let (s0, sx) = (table.shells[z as usize], table.shells[(x ^ z) as usize]);
            let d = z.count_ones();
            let ok = s0.map_inclusion(d) == sx.map_inclusion(d)
                && s0.d_alpha_inclusion(d, alpha) == sx.d_alpha_inclusion(d, alpha);
            shift.case(ok, || {
                format!(
                    "x={} z={}: Pr[0 in D(z)]={} but Pr[x in D(x+z)]={}",
                    show(x),
                    show(z),
                    s0.map_inclusion(d),
                    sx.map_inclusion(d)
                )
            });
        }
    }

    let mut symmetry = Checker::new("symmetry");
    for (k, pi) in code.group_generators().iter().enumerate() {
        for y in words.clone() {
            let py = pi.apply(y);
            let ok = table.map_success(y) == table.map_success(py)
                && table.d_alpha_success(y, alpha) == table.d_alpha_success(py, alpha);
            symmetry.case(ok, || format!("generator {k}: y={} pi(y)={}", show(y), show(py)));
        }
    }

    Ok(PropertyReport {
        n,
        list,
        alpha,
        checks: [structure, size, map_mono, dalpha_mono, shift, symmetry]
            .into_iter()
            .map(Checker::finish)
            .collect(),
    })
}

/// Exact comparison `Pr[0 ∈ D_{eps/2}(Z_p)] >= Pr[0 ∈ D_MAP(Z_p)] - eps/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdLoss {
    pub eps: f64,
    pub p: f64,
    pub d_alpha_success: f64,
    pub map_success: f64,
}

impl ThresholdLoss {
    pub fn slack(&self) -> f64 {
        self.d_alpha_success - (self.map_success - self.eps / 2.0)
    }

    pub fn holds(&self) -> bool {
        self.slack() >= -1e-12
    }
}

/// Evaluates [`ThresholdLoss`] exactly by enumeration for each `p` in `ps`.
pub fn threshold_loss(code: &BlockCode, list: usize, eps: f64, ps: &[f64]) -> Result<Vec<ThresholdLoss>> {
    check_alpha(eps / 2.0)?;
    let table = DecoderTable::build(code, list)?;
    let map = table.weight_profile(Decoder::Map);
    let thr = table.weight_profile(Decoder::DAlpha(eps / 2.0));
    Ok(ps
        .iter()
        .map(|&p| ThresholdLoss {
            eps,
            p,
            d_alpha_success: success_from_profile(&thr, p),
            map_success: success_from_profile(&map, p),
        })
        .collect())
}

/// Where the exact success probability of `decoder` crosses `1 - eps` and
/// `eps` as the crossover `p` ranges over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transition {
    pub eps: f64,
    pub p_high_success: f64,
    pub p_low_success: f64,
}

impl Transition {
    pub fn width(&self) -> f64 {
        self.p_low_success - self.p_high_success
    }
}

/// Success is nonincreasing in `p` because the success set is a down-set.
pub fn transition_width(code: &BlockCode, list: usize, decoder: Decoder, eps: f64) -> Result<Transition> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain {
            name: "eps",
            value: eps,
            domain: "]0, 1/2[",
        });
    }
    let table = DecoderTable::build(code, list)?;
    let profile = table.weight_profile(decoder);
    let level = |target: f64| {
        crate::numeric::bisect(|p| success_from_profile(&profile, p) - target, 0.0, 1.0, 1e-13, 200)
    };
    Ok(Transition {
        eps,
        p_high_success: level(1.0 - eps)?,
        p_low_success: level(eps)?,
    })
}

/// Monte Carlo estimate of the probability that the zero codeword is not
/// listed, with a 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FailureEstimate {
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub lower: f64,
    pub upper: f64,
}

fn wilson(failures: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let phat = failures as f64 / n;
    let denom = 1.0 + Z * Z / n;
    let centre = (phat + Z * Z / (2.0 * n)) / denom;
    let half = Z * (phat * (1.0 - phat) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Sends the zero codeword through `BSC_p` `trials` times and decodes. Trial
/// `t` draws from its own stream of a generator seeded with `seed`, so the
/// estimate does not depend on thread scheduling.
pub fn monte_carlo_error(
    code: &BlockCode,
    list: usize,
    decoder: Decoder,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<FailureEstimate> {
    check_list_size(code, list)?;
    if let Decoder::DAlpha(alpha) = decoder {
        check_alpha(alpha)?;
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            name: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    if trials == 0 {
        return Err(Error::Range("at least one trial is required".into()));
    }
    let n = code.n();
    let failures = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let z = (0..n).fold(0, |acc, i| if rng.random_bool(p) { acc | 1 << i } else { acc });
            let s = Shells::of(code, z, list);
            let d = z.count_ones();
            let listed = match decoder {
                Decoder::DAlpha(alpha) => s.d_alpha_inclusion(d, alpha),
                Decoder::Map if d == s.d_star => rng.random_range(0..s.s2) < s.w(),
                Decoder::Map => d < s.d_star,
            };
            u64::from(!listed)
        })
        .sum();
    let (lower, upper) = wilson(failures, trials);
    Ok(FailureEstimate {
        trials,
        failures,
        rate: failures as f64 / trials as f64,
        lower,
        upper,
    })
}

/// Probability that `Y = X + Z` is `delta`-likely, for `X` uniform on the
/// code and `Z ~ Ber(p)^n`: more than `2^((eta + delta) n)` codewords lie
/// within distance `pn + n^(3/4)` (strictly) of `Y`.
pub fn delta_likely_fraction(code: &BlockCode, p: f64, eta: f64, delta: f64) -> Result<f64> {
    let n = code.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::Enumeration {
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let nf = n as f64;
    let radius = p * nf + nf.powf(0.75);
    let threshold = ((eta + delta) * nf).exp2();
    let weight_prob: Vec<f64> = (0..=n)
        .map(|d| p.powi(d as i32) * (1.0 - p).powi((n - d) as i32))
        .collect();
    let per_word = code.len() as f64;
    // Collected before summing so the float reduction order is fixed.
    let per_y: Vec<f64> = (0..1u64 << n)
        .into_par_iter()
        .map(|y| {
            let (mut close, mut prob) = (0usize, 0.0);
            for &c in code.codewords() {
                let d = distance(c, y);
                close += usize::from((d as f64) < radius);
                prob += weight_prob[d as usize];
            }
            if close as f64 > threshold {
                prob / per_word
            } else {
                0.0
            }
        })
        .collect();
    Ok(per_y.iter().sum::<f64>().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(n: usize) -> BlockCode {
        BlockCode::repetition(n).unwrap()
    }

    #[test]
    fn repetition_states() {
        let code = rep(3);
        let s = map_list_state(&code, 0b000, 1).unwrap();
        assert_eq!((s.d_star, s.s1.clone(), s.s2.clone(), s.w), (0, vec![], vec![0], 1));
        let s = map_list_state(&code, 0b000, 2).unwrap();
        assert_eq!((s.d_star, s.s1.clone(), s.s2.clone(), s.w), (3, vec![0], vec![0b111], 1));
        assert_eq!(s.profile, vec![1, 0, 0, 1]);
        assert!(map_list_state(&code, 0, 3).is_err());
        assert!(map_list_state(&code, 0, 0).is_err());
    }

    #[test]
    fn full_list_returns_whole_code() {
        let code = BlockCode::hamming74();
        for y in [0u64, 0b1010101, 0b1111111] {
            let s = map_list_state(&code, y, code.len()).unwrap();
            let mut all: Vec<Word> = s.s1.iter().chain(&s.s2).copied().collect();
            all.sort_unstable();
            assert_eq!(all, code.codewords());
            let mut out = map_decode_randomized(&code, y, code.len(), 3).unwrap();
            out.sort_unstable();
            assert_eq!(out, code.codewords());
        }
    }

    #[test]
    fn randomized_decoder_examples() {
        let code = rep(3);
        assert_eq!(map_decode_randomized(&code, 0b100, 1, 0).unwrap(), vec![0]);
        let code = BlockCode::hamming74();
        for seed in 0..20 {
            let out = map_decode_randomized(&code, 0b0000001, 3, seed).unwrap();
            assert_eq!(out.len(), 3);
            assert!(out.contains(&0));
        }
    }

    #[test]
    fn randomized_success_matches_ratio() {
        // y at distance 1 from 0: S1 = {}, S2 = {0, c1, c2, ...} shells.
        let code = BlockCode::reed_muller1(3).unwrap();
        let y = 0b0000_0111;
        let state = map_list_state(&code, y, 2).unwrap();
        assert!(state.s2.contains(&0));
        let ratio = state.inclusion_probability(0);
        assert!(ratio > 0.0 && ratio < 1.0);
        let trials = 10_000u64;
        let hits = (0..trials)
            .filter(|&s| map_decode_randomized(&code, y, 2, s).unwrap().contains(&0))
            .count() as f64;
        let sigma = (ratio * (1.0 - ratio) / trials as f64).sqrt();
        assert!((hits / trials as f64 - ratio).abs() <= 3.0 * sigma);
    }

    #[test]
    fn d_alpha_examples() {
        let code = BlockCode::hamming74();
        let mut max = 0;
        for y in 0..128 {
            let out = d_alpha_decode(&code, y, 2, 0.5).unwrap();
            max = max.max(out.len());
            assert!(d_alpha_decode(&code, y, 2, 1.0).unwrap().len() <= 2);
            let s = map_list_state(&code, y, 2).unwrap();
            if (s.w as f64) / (s.s2.len() as f64) < 0.5 {
                assert_eq!(out, s.s1);
            }
        }
        assert!(max <= 4);
        assert!(d_alpha_decode(&code, 0, 2, 0.0).is_err());
        assert!(d_alpha_decode(&code, 0, 2, 1.5).is_err());
    }

    #[test]
    fn property_suite_on_fixtures() {
        for (code, list, alpha) in [(rep(5), 1, 0.5), (BlockCode::hamming74(), 3, 0.25)] {
            let report = success_indicator_properties(&code, list, alpha).unwrap();
            assert_eq!(report.checks.len(), 6);
            assert!(report.all_hold(), "{:?}", report.first_failure());
        }
    }

    #[test]
    fn nonlinear_set_breaks_shift_invariance() {
        let code = BlockCode::parse_fixture("4 0\nword 0000\nword 1100\nword 0111\n").unwrap();
        let report = success_indicator_properties(&code, 1, 0.5).unwrap();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "shift-invariance");
        assert!(fail.counterexample.as_ref().unwrap().starts_with("x="));
    }

    #[test]
    fn threshold_loss_examples() {
        let code = BlockCode::hamming74();
        for eps in [0.1, 0.2, 0.4] {
            for t in threshold_loss(&code, 2, eps, &[0.05, 0.2, 0.4]).unwrap() {
                assert!(t.holds(), "{t:?}");
            }
        }
    }

    #[test]
    fn success_profile_endpoints() {
        let code = BlockCode::reed_muller1(3).unwrap();
        let table = DecoderTable::build(&code, 2).unwrap();
        let prof = table.weight_profile(Decoder::DAlpha(0.5));
        assert_eq!(success_from_profile(&prof, 0.0), 1.0);
        assert_eq!(success_from_profile(&prof, 1.0), 0.0);
        let t = transition_width(&code, 2, Decoder::DAlpha(0.5), 0.1).unwrap();
        assert!(t.width() > 0.0);
    }

    #[test]
    fn monte_carlo_examples() {
        let code = BlockCode::reed_muller1(4).unwrap();
        let clean = monte_carlo_error(&code, 2, Decoder::DAlpha(0.5), 0.0, 500, 1).unwrap();
        assert_eq!(clean.failures, 0);

        let noise = monte_carlo_error(&code, 1, Decoder::Map, 0.5, 20_000, 9).unwrap();
        let expected = 1.0 - 1.0 / code.len() as f64;
        assert!(noise.lower <= expected && expected <= noise.upper, "{noise:?}");

        let low = monte_carlo_error(&code, 2, Decoder::DAlpha(0.5), 0.05, 10_000, 4).unwrap();
        let high = monte_carlo_error(&code, 2, Decoder::DAlpha(0.5), 0.25, 10_000, 4).unwrap();
        assert!(low.upper < high.lower);

        let again = monte_carlo_error(&code, 2, Decoder::DAlpha(0.5), 0.25, 10_000, 4).unwrap();
        assert_eq!(high, again);
    }

    #[test]
    fn monte_carlo_agrees_with_exact_curve() {
        let code = BlockCode::hamming74();
        let table = DecoderTable::build(&code, 2).unwrap();
        let exact = 1.0 - success_from_profile(&table.weight_profile(Decoder::Map), 0.2);
        let est = monte_carlo_error(&code, 2, Decoder::Map, 0.2, 40_000, 11).unwrap();
        assert!(est.lower <= exact && exact <= est.upper, "{exact} {est:?}");
    }

    #[test]
    fn delta_likely_diagnostic() {
        let code = BlockCode::reed_muller1(3).unwrap();
        // With a negative exponent every received word is likely.
        let all = delta_likely_fraction(&code, 0.1, -1.0, 0.0).unwrap();
        assert!((all - 1.0).abs() < 1e-12);
        let none = delta_likely_fraction(&code, 0.1, 1.0, 0.0).unwrap();
        assert_eq!(none, 0.0);
        let mid = delta_likely_fraction(&code, 0.1, 0.05, 0.1).unwrap();
        assert!((0.0..=1.0).contains(&mid));
    }
}
