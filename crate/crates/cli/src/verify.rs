//! Property suites behind `chanadv verify`. Every check prints one line;
//! failures carry the first counterexample found.

use std::io::{self, Write};

use chanadv::info::{binary_entropy, Probability};
use chanadv::listdecode::{
    monte_carlo_error, success_indicator_properties, threshold_loss, BlockCode, Decoder, EXHAUSTIVE_MAX_N,
};
use chanadv::midiff::MiDiff;
use chanadv::ordering::{
    continuity_scan, eta_mc_bsc_over_bec, max_identity_residual, tensorization_bound_check, tensorization_slack,
};
use chanadv::report::format_g12;

use crate::Suite;

struct Reporter<'a, W: Write> {
    out: &'a mut W,
    failures: usize,
}

impl<W: Write> Reporter<'_, W> {
    fn record(&mut self, name: &str, ok: bool, detail: &str) -> io::Result<()> {
        if !ok {
            self.failures += 1;
        }
        writeln!(self.out, "{}  {name}  {detail}", if ok { "PASS" } else { "FAIL" })
    }
}

type SuiteResult = Result<(), String>;

/// Runs the selected suites and returns whether every property held.
pub fn run<W: Write>(suite: Suite, seed: u64, fixture: Option<(String, BlockCode)>, out: &mut W) -> Result<bool, String> {
    let mut rep = Reporter { out, failures: 0 };
    if matches!(suite, Suite::Envelopes | Suite::All) {
        envelopes(&mut rep)?;
    }
    if matches!(suite, Suite::Tensorization | Suite::All) {
        tensorization(&mut rep, seed)?;
    }
    if matches!(suite, Suite::Decoder | Suite::All) {
        decoder(&mut rep, seed, fixture)?;
    }
    let summary = if rep.failures == 0 {
        "all properties hold".to_string()
    } else {
        format!("{} properties failed", rep.failures)
    };
    writeln!(rep.out, "{summary}").map_err(|e| e.to_string())?;
    Ok(rep.failures == 0)
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn pr(x: f64) -> Probability {
    Probability::new(x).expect("grid point in [0, 1]")
}

fn envelopes<W: Write>(rep: &mut Reporter<W>) -> SuiteResult {
    let mut sandwich: Option<String> = None;
    let mut symmetric: Option<String> = None;
    let mut worst_gap: (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..10 {
        for j in 0..10 {
            let (p, q) = (0.02 + 0.05 * i as f64, 0.05 + 0.1 * j as f64);
            let f = MiDiff::from_f64(p, q).map_err(err)?;
            let cave = f.concave_envelope().map_err(err)?;
            let conv = f.convex_envelope().map_err(err)?;
            for k in 0..=1000 {
                let r = k as f64 / 1000.0;
                let v = f.eval(r);
                if sandwich.is_none() && !(cave.eval(r) >= v - 1e-12 && conv.eval(r) <= v + 1e-12) {
                    sandwich = Some(format!("p={p} q={q} r={r}"));
                }
                let asym = (cave.eval(r) - cave.eval(1.0 - r)).abs().max((conv.eval(r) - conv.eval(1.0 - r)).abs());
                if symmetric.is_none() && asym > 1e-12 {
                    symmetric = Some(format!("p={p} q={q} r={r}: asymmetry {asym:e}"));
                }
            }
            let hull = f.discrete_hull_oracle(10_000).map_err(err)?;
            let gap = hull.concave_gap(&cave).max(hull.convex_gap(&conv));
            if gap > worst_gap.0 {
                worst_gap = (gap, p, q);
            }
        }
    }
    let ok_or = |c: &Option<String>| c.clone().unwrap_or_else(|| "100 (p, q) pairs".into());
    rep.record("envelopes/sandwich", sandwich.is_none(), &ok_or(&sandwich)).map_err(err)?;
    rep.record("envelopes/symmetry", symmetric.is_none(), &ok_or(&symmetric)).map_err(err)?;
    let (gap, p, q) = worst_gap;
    rep.record(
        "envelopes/hull-agreement",
        gap <= 1e-3,
        &format!("max sup-gap {} at p={p} q={q}", format_g12(gap)),
    )
    .map_err(err)?;

    let grid: Vec<f64> = (1..=500).map(|i| i as f64 * 1e-3).collect();
    let jump = continuity_scan(pr(0.5), &grid).map_err(err)?;
    rep.record("envelopes/continuity", jump <= 5e-3, &format!("max jump {} at q=0.5", format_g12(jump)))
        .map_err(err)
}

fn tensorization<W: Write>(rep: &mut Reporter<W>, seed: u64) -> SuiteResult {
    let residual = max_identity_residual(1000, seed).map_err(err)?;
    rep.record(
        "tensorization/chain-rule-identity",
        residual <= 1e-9,
        &format!("max residual {} over 1000 joints", format_g12(residual)),
    )
    .map_err(err)?;

    let p = 0.11;
    for q in [0.5, binary_entropy(p)] {
        let s = tensorization_bound_check(pr(p), pr(q), 1000, seed).map_err(err)?;
        let detail = format!("p={p} q={}: min slack {}", format_g12(q), format_g12(s.min_slack));
        rep.record("tensorization/advantage-bound", s.min_slack >= -1e-9, &detail).map_err(err)?;
    }

    // The advantage is the smallest that works: shrinking it must fail.
    let q = binary_entropy(p);
    let eta = eta_mc_bsc_over_bec(pr(p), pr(q)).map_err(err)?;
    let weak = tensorization_slack(pr(p), pr(q), eta - 0.02, 100, seed).map_err(err)?;
    let detail = format!("eta - 0.02: min slack {} at {:?}", format_g12(weak.min_slack), weak.worst_input);
    rep.record("tensorization/weakened-advantage-violated", weak.min_slack < 0.0, &detail)
        .map_err(err)
}

fn builtin_codes() -> Result<Vec<(String, BlockCode)>, String> {
    let mut codes = Vec::new();
    for n in [3, 5, 7] {
        codes.push((format!("rep{n}"), BlockCode::repetition(n).map_err(err)?));
    }
    codes.push(("hamming74".into(), BlockCode::hamming74()));
    for m in [3, 4] {
        codes.push((format!("rm1{m}"), BlockCode::reed_muller1(m).map_err(err)?));
    }
    Ok(codes)
}

fn decoder<W: Write>(rep: &mut Reporter<W>, seed: u64, fixture: Option<(String, BlockCode)>) -> SuiteResult {
    let builtin = fixture.is_none();
    let codes = match fixture {
        Some(f) => vec![f],
        None => builtin_codes()?,
    };
    for (name, code) in &codes {
        if code.n() > EXHAUSTIVE_MAX_N {
            return Err(format!("{name}: block length {} exceeds {EXHAUSTIVE_MAX_N}", code.n()));
        }
        let mut first_failure: Vec<Option<String>> = vec![None; 6];
        let mut names = Vec::new();
        let mut cases = [0u64; 6];
        for list in [1, 2, 3].into_iter().filter(|&l| l <= code.len()) {
            for alpha in [0.25, 0.5, 1.0] {
                let report = success_indicator_properties(code, list, alpha).map_err(err)?;
                names = report.checks.iter().map(|c| c.name).collect();
                for (k, c) in report.checks.iter().enumerate() {
                    cases[k] += c.cases;
                    if first_failure[k].is_none() {
                        first_failure[k] = c.counterexample.as_ref().map(|x| format!("L={list} alpha={alpha}: {x}"));
                    }
                }
            }
        }
        for (k, prop) in names.iter().enumerate() {
            let detail = first_failure[k].clone().unwrap_or_else(|| format!("{} cases", cases[k]));
            rep.record(&format!("decoder/{name}/{prop}"), first_failure[k].is_none(), &detail)
                .map_err(err)?;
        }
        if code.n() <= 10 && code.contains(0) {
            let ps: Vec<f64> = (1..=50).map(|i| i as f64 * 0.01).collect();
            let mut worst = f64::INFINITY;
            for list in [1, 2, 3].into_iter().filter(|&l| l <= code.len()) {
                for eps in [0.1, 0.2, 0.4] {
                    for t in threshold_loss(code, list, eps, &ps).map_err(err)? {
                        worst = worst.min(t.slack());
                    }
                }
            }
            rep.record(
                &format!("decoder/{name}/threshold-loss"),
                worst >= -1e-12,
                &format!("min slack {}", format_g12(worst)),
            )
            .map_err(err)?;
        }
    }
    if builtin {
        let code = BlockCode::reed_muller1(4).map_err(err)?;
        let low = monte_carlo_error(&code, 2, Decoder::DAlpha(0.5), 0.05, 10_000, seed).map_err(err)?;
        let high = monte_carlo_error(&code, 2, Decoder::DAlpha(0.5), 0.25, 10_000, seed).map_err(err)?;
        let detail = format!(
            "failure {} at p=0.05 vs {} at p=0.25",
            format_g12(low.rate),
            format_g12(high.rate)
        );
        rep.record("decoder/rm14/monte-carlo-monotone", low.upper < high.lower, &detail)
            .map_err(err)?;
    }
    Ok(())
}
