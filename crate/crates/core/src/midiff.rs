//! The mutual-information difference between a binary symmetric and a binary
//! erasure channel under a Bernoulli input,
//!
//! ```text
//! f(r) = I(Ber(r); BSC_p) - I(Ber(r); BEC_q) = h(r * p) - h(p) - (1 - q) h(r),
//! ```
//!
//! together with its derivatives, critical points, shape classification and
//! its upper concave / lower convex envelopes on `[0, 1]`.
//!
//! `f` is symmetric about `1/2` and vanishes at both endpoints. Its second
//! derivative has the sign of the quadratic
//! `N(r) = (1-2p)^2 q r^2 - (1-2p)^2 q r + p(1-p)(1-q)`, whose discriminant
//! `q (1-2p)^2 (q - 4p(1-p))` decides whether `f` is convex on all of
//! `[0, 1/2]` or switches to concave at a single inflection point.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{binary_entropy, convolve, Probability};
use crate::numeric::bisect;

/// Raw evaluation of `h(r * p) - h(p) - (1 - q) h(r)` for any arguments in
/// `[0, 1]`.
pub fn mi_difference(p: f64, q: f64, r: f64) -> f64 {
    binary_entropy(convolve(r, p)) - binary_entropy(p) - (1.0 - q) * binary_entropy(r)
}

/// Shape of `f` on `[0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `q <= 4p(1-p)`: convex and decreasing, minimum at `1/2`.
    ConvexDecreasing,
    /// `4p(1-p) < q <= h(p)`: interior minimum, maximum at `0`.
    InteriorMinMaxAtZero,
    /// `h(p) < q`: interior minimum, maximum at `1/2`.
    InteriorMinMaxAtHalf,
}

impl Regime {
    pub fn has_interior_minimum(self) -> bool {
        !matches!(self, Regime::ConvexDecreasing)
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::ConvexDecreasing => "convex-decreasing",
            Regime::InteriorMinMaxAtZero => "interior-min-max-at-zero",
            Regime::InteriorMinMaxAtHalf => "interior-min-max-at-half",
        })
    }
}

/// Distinguished points of `f` on `]0, 1/2[`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CriticalPoints {
    /// Interior minimiser, `f'(r0) = 0`.
    pub r0: Option<f64>,
    /// Inflection point, `f''(r') = 0`.
    pub r_prime: Option<f64>,
    /// Point where the tangent through the origin touches `f`,
    /// `f(r1) = r1 f'(r1)`.
    pub r1: Option<f64>,
}

/// `f` for a fixed `(BSC_p, BEC_q)` pair with `0 < p < 1` and `0 < q < 1`.
///
/// Since `BSC_p` and `BSC_{1-p}` only differ by relabelling the output, a
/// crossover above `1/2` is reflected to `1 - p` on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiDiff {
    p: f64,
    q: f64,
}

impl MiDiff {
    pub fn new(p: Probability, q: Probability) -> Result<Self> {
        let (p, q) = (p.get(), q.get());
        if p <= 0.0 || p >= 1.0 {
            return Err(Error::Domain {
                name: "p",
                value: p,
                domain: "]0, 1[",
            });
        }
        if q <= 0.0 || q >= 1.0 {
            return Err(Error::Domain {
                name: "q",
                value: q,
                domain: "]0, 1[",
            });
        }
        Ok(Self { p: p.min(1.0 - p), q })
    }

    /// Convenience constructor from raw floats.
    pub fn from_f64(p: f64, q: f64) -> Result<Self> {
        Self::new(Probability::new(p)?, Probability::new(q)?)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn eval(&self, r: f64) -> f64 {
        mi_difference(self.p, self.q, r)
    }

    /// `f'(r) = (1-2p) log2((1 - r*p)/(r*p)) - (1-q) log2((1-r)/r)`.
    pub fn deriv1(&self, r: f64) -> Result<f64> {
        check_open_unit(r)?;
        Ok(self.deriv1_unchecked(r))
    }

    fn deriv1_unchecked(&self, r: f64) -> f64 {
        let s = convolve(r, self.p);
        (1.0 - 2.0 * self.p) * ((1.0 - s) / s).log2() - (1.0 - self.q) * ((1.0 - r) / r).log2()
    }

    /// `f''(r) = [(1-q)/(r(1-r)) - (1-2p)^2/(s(1-s))] / ln 2` with `s = r * p`.
    pub fn deriv2(&self, r: f64) -> Result<f64> {
        check_open_unit(r)?;
        let s = convolve(r, self.p);
        let a = 1.0 - 2.0 * self.p;
        Ok(((1.0 - self.q) / (r * (1.0 - r)) - a * a / (s * (1.0 - s))) / LN_2)
    }

    /// `4p(1-p)`: the erasure probability below which `f` is convex.
    pub fn convexity_threshold(&self) -> f64 {
        4.0 * self.p * (1.0 - self.p)
    }

    /// Discriminant of the numerator quadratic of `f''`.
    pub fn discriminant(&self) -> f64 {
        let a = 1.0 - 2.0 * self.p;
        self.q * a * a * (self.q - self.convexity_threshold())
    }

    pub fn regime(&self) -> Regime {
        if self.q <= self.convexity_threshold() {
            Regime::ConvexDecreasing
        } else if self.q <= binary_entropy(self.p) {
            Regime::InteriorMinMaxAtZero
        } else {
            Regime::InteriorMinMaxAtHalf
        }
    }

    /// Root of the numerator quadratic `N(r)` in `]0, 1/2[`, present exactly
    /// when the discriminant is positive.
    pub fn inflection_point(&self) -> Option<f64> {
        if self.regime() == Regime::ConvexDecreasing {
            return None;
        }
        let a = 1.0 - 2.0 * self.p;
        let lead = a * a * self.q;
        let constant = self.p * (1.0 - self.p) * (1.0 - self.q);
        let disc = 0.25 - constant / lead;
        if disc <= 0.0 {
            return None;
        }
        // The larger root is well conditioned; get the smaller one from the
        // product of the roots.
        let big = 0.5 + disc.sqrt();
        Some(constant / (lead * big))
    }

    pub fn critical_points(&self) -> Result<CriticalPoints> {
        let regime = self.regime();
        let Some(r_prime) = self.inflection_point() else {
            return Ok(CriticalPoints::default());
        };

        // f' diverges to -inf at 0 and is strictly positive at r'.
        let mut lo = 1e-12;
        while self.deriv1_unchecked(lo) >= 0.0 && lo > 1e-280 {
            lo *= 1e-20;
        }
        // For q near 1 the root can lie below the smallest normal double;
        // there f(r0) is zero to working precision and lo stands in for r0.
        let r0 = if self.deriv1_unchecked(lo) >= 0.0 {
            lo
        } else {
            bisect(|r| self.deriv1_unchecked(r), lo, r_prime, 1e-16, 200)?
        };

        let r1 = if regime == Regime::InteriorMinMaxAtHalf {
            // g(r0) = f(r0) < 0 exactly; near r = 0 the computed value is
            // dominated by cancellation, so the sign there is imposed.
            let g = |r: f64| {
                if r <= r0 {
                    -1.0
                } else if r >= 0.5 {
                    self.eval(0.5)
                } else {
                    self.eval(r) - r * self.deriv1_unchecked(r)
                }
            };
            Some(bisect(g, r0, 0.5, 1e-16, 200)?)
        } else {
            None
        };

        Ok(CriticalPoints {
            r0: Some(r0),
            r_prime: Some(r_prime),
            r1,
        })
    }

    /// Minimum of `f` over `[0, 1]` together with a minimiser in `[0, 1/2]`.
    pub fn minimum(&self) -> Result<(f64, f64)> {
        match self.critical_points()?.r0 {
            Some(r0) => Ok((r0, self.eval(r0))),
            None => Ok((0.5, self.eval(0.5))),
        }
    }

    /// Least concave majorant of `f` on `[0, 1]`.
    pub fn concave_envelope(&self) -> Result<PiecewiseEnvelope> {
        let half = match self.regime() {
            Regime::ConvexDecreasing | Regime::InteriorMinMaxAtZero => {
                vec![Segment::chord(0.0, 0.5, 0.0, 0.0)]
            }
            Regime::InteriorMinMaxAtHalf => {
                let r1 = self.critical_points()?.r1.ok_or(Error::Bracket { lo: 0.0, hi: 0.5 })?;
                let slope = self.eval(r1) / r1;
                vec![
                    Segment::chord(0.0, r1, slope, 0.0),
                    Segment::follows(r1, 0.5),
                ]
            }
        };
        Ok(PiecewiseEnvelope::mirrored(*self, half))
    }

    /// Greatest convex minorant of `f` on `[0, 1]`.
    pub fn convex_envelope(&self) -> Result<PiecewiseEnvelope> {
        let half = match self.critical_points()?.r0 {
            None => vec![Segment::follows(0.0, 0.5)],
            Some(r0) => vec![
                Segment::follows(0.0, r0),
                Segment::chord(r0, 0.5, 0.0, self.eval(r0)),
            ],
        };
        Ok(PiecewiseEnvelope::mirrored(*self, half))
    }

    /// Samples `f` on `grid_size + 1` equispaced points of `[0, 1]` and
    /// returns the hull-based envelopes of the samples.
    pub fn discrete_hull_oracle(&self, grid_size: usize) -> Result<SampledEnvelope> {
        SampledEnvelope::of(|r| self.eval(r), grid_size)
    }
}

fn check_open_unit(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "r",
            value: r,
            domain: "]0, 1[ (derivative diverges at the endpoints)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SegmentKind {
    /// The affine function `slope * r + intercept`.
    LinearChord { slope: f64, intercept: f64 },
    /// Coincides with `f`.
    FollowsF,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub kind: SegmentKind,
}

impl Segment {
    fn chord(start: f64, end: f64, slope: f64, intercept: f64) -> Self {
        Self {
            start,
            end,
            kind: SegmentKind::LinearChord { slope, intercept },
        }
    }

    fn follows(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            kind: SegmentKind::FollowsF,
        }
    }

    /// The reflection of this segment under `r -> 1 - r`.
    fn mirror(&self) -> Self {
        let kind = match self.kind {
            SegmentKind::LinearChord { slope, intercept } => SegmentKind::LinearChord {
                slope: -slope,
                intercept: intercept + slope,
            },
            SegmentKind::FollowsF => SegmentKind::FollowsF,
        };
        Self {
            start: 1.0 - self.end,
            end: 1.0 - self.start,
            kind,
        }
    }
}

/// A piecewise description of an envelope of `f`, symmetric about `1/2`.
///
/// The segments tile `[0, 1]`; evaluation always goes through the left half
/// so that both halves agree bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseEnvelope {
    func: MiDiff,
    half: Vec<Segment>,
    segments: Vec<Segment>,
}

impl PiecewiseEnvelope {
    fn mirrored(func: MiDiff, half: Vec<Segment>) -> Self {
        let mut segments = half.clone();
        segments.extend(half.iter().rev().map(Segment::mirror));
        // Merge the two middle pieces when they are the same chord or both
        // follow f.
        let mut merged: Vec<Segment> = Vec::with_capacity(segments.len());
        for seg in segments {
            match merged.last_mut() {
                Some(last) if same_piece(last, &seg) => last.end = seg.end,
                _ => merged.push(seg),
            }
        }
        Self {
            func,
            half,
            segments: merged,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn eval(&self, r: f64) -> f64 {
        let x = r.min(1.0 - r).max(0.0);
        let seg = self
            .half
            .iter()
            .find(|s| x <= s.end)
            .unwrap_or_else(|| self.half.last().expect("envelope has segments"));
        match seg.kind {
            SegmentKind::LinearChord { slope, intercept } => slope * x + intercept,
            SegmentKind::FollowsF => self.func.eval(x),
        }
    }
}

fn same_piece(a: &Segment, b: &Segment) -> bool {
    match (a.kind, b.kind) {
        (SegmentKind::FollowsF, SegmentKind::FollowsF) => true,
        (
            SegmentKind::LinearChord { slope: s1, intercept: i1 },
            SegmentKind::LinearChord { slope: s2, intercept: i2 },
        ) => s1 == s2 && i1 == i2,
        _ => false,
    }
}

/// Envelopes of a function sampled on a uniform grid of `[0, 1]`, computed by
/// monotone-chain hulls of the sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledEnvelope {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// Upper concave majorant of the samples, at each grid point.
    pub concave: Vec<f64>,
    /// Lower convex minorant of the samples, at each grid point.
    pub convex: Vec<f64>,
}

impl SampledEnvelope {
    pub fn of<F: Fn(f64) -> f64>(f: F, grid_size: usize) -> Result<Self> {
        if grid_size < 100 {
            return Err(Error::Domain {
                name: "grid_size",
                value: grid_size as f64,
                domain: ">= 100",
            });
        }
        let xs: Vec<f64> = (0..=grid_size).map(|i| i as f64 / grid_size as f64).collect();
        let values: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let concave = hull_on_grid(&xs, &values, true);
        let convex = hull_on_grid(&xs, &values, false);
        Ok(Self {
            xs,
            values,
            concave,
            convex,
        })
    }

    /// Largest deviation of the sampled concave hull from `envelope` over the
    /// grid points.
    pub fn concave_gap(&self, envelope: &PiecewiseEnvelope) -> f64 {
        sup_gap(&self.xs, &self.concave, envelope)
    }

    pub fn convex_gap(&self, envelope: &PiecewiseEnvelope) -> f64 {
        sup_gap(&self.xs, &self.convex, envelope)
    }
}

fn sup_gap(xs: &[f64], sampled: &[f64], envelope: &PiecewiseEnvelope) -> f64 {
    xs.iter()
        .zip(sampled)
        .map(|(&x, &v)| (envelope.eval(x) - v).abs())
        .fold(0.0, f64::max)
}

/// Upper (`upper = true`) or lower hull of the points `(xs[i], ys[i])`,
/// evaluated at every `xs[i]`. `xs` must be strictly increasing.
fn hull_on_grid(xs: &[f64], ys: &[f64], upper: bool) -> Vec<f64> {
    let sign = if upper { 1.0 } else { -1.0 };
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..xs.len() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
            // For the upper hull, drop b unless a -> b -> i turns clockwise.
            if sign * cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = Vec::with_capacity(xs.len());
    let mut k = 0;
    for (i, &x) in xs.iter().enumerate() {
        while k + 1 < hull.len() && hull[k + 1] < i {
            k += 1;
        }
        let a = hull[k];
        if a == i || k + 1 == hull.len() {
            out.push(ys[i]);
            continue;
        }
        let b = hull[k + 1];
        let t = (x - xs[a]) / (xs[b] - xs[a]);
        out.push(ys[a] + t * (ys[b] - ys[a]));
    }
    out
}
