//! Verification suites over parameter grids.

use anyhow::{bail, Context};
use clap::ValueEnum;
use qcarlitz::carlitz::{bernoulli_classical_table, beta_number, beta_number_recurrence, beta_poly};
use qcarlitz::identity::{lemma2_series_oracle, CheckParams, Checker, Fault, IdentityParams, IdentityReport};
use qcarlitz::padic::{
    discrepancy_profile, log_spot_check, integral_check, verify_eq3, witt_check, IntegrandSpec, PadicCheck,
    PadicSetup, VolkenbornJob,
};
use qcarlitz::qcore::{binomial, q_int};
use qcarlitz::field::rational::to_fraction_string;
use qcarlitz::{Exec, QArg, RatFunc, Rational};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{sort_results, CaseResult, Labeled, Params, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Qlaws,
    CarlitzCross,
    Lemma2,
    Thm1,
    Thm3,
    Thm4,
    Cross34,
    Padic,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Qlaws,
        Suite::CarlitzCross,
        Suite::Lemma2,
        Suite::Thm1,
        Suite::Thm3,
        Suite::Thm4,
        Suite::Cross34,
        Suite::Padic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qlaws => "qlaws",
            Suite::CarlitzCross => "carlitz-cross",
            Suite::Lemma2 => "lemma2",
            Suite::Thm1 => "thm1",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::Cross34 => "cross34",
            Suite::Padic => "padic",
            Suite::All => "all",
        }
    }

    /// Default `(n_max, w_max, y_max)` when not given.
    fn default_bounds(self) -> (u32, u32, u64) {
        match self {
            Suite::CarlitzCross => (8, 0, 0),
            Suite::Lemma2 => (6, 3, 0),
            Suite::Thm1 => (3, 2, 1),
            Suite::Thm3 | Suite::Thm4 | Suite::Cross34 => (2, 2, 1),
            _ => (0, 0, 0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PadicConfig {
    pub p: u64,
    pub q0: Rational,
    pub level: u32,
    pub precision: u32,
}

impl Default for PadicConfig {
    fn default() -> Self {
        PadicConfig { p: 3, q0: Rational::from_integer(4.into()), level: 4, precision: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n_max: Option<u32>,
    pub w_max: Option<u32>,
    pub y_max: Option<u64>,
    /// Upper bound on grid points; larger grids are sampled.
    pub samples: Option<usize>,
    pub seed: u64,
    pub padic: PadicConfig,
    pub exec: Exec,
    pub fault: Option<Fault>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            n_max: None,
            w_max: None,
            y_max: None,
            samples: None,
            seed: 0,
            padic: PadicConfig::default(),
            exec: Exec::default(),
            fault: None,
        }
    }

    fn bounds(&self, suite: Suite) -> (u32, u32, u64) {
        let (n, w, y) = suite.default_bounds();
        (self.n_max.unwrap_or(n), self.w_max.unwrap_or(w), self.y_max.unwrap_or(y))
    }

    fn checker(&self) -> Checker {
        let c = Checker::new(self.exec);
        match self.fault {
            Some(f) => c.with_fault(f),
            None => c,
        }
    }

    fn grid_for(&self, suite: Suite) -> Value {
        let (n, w, y) = self.bounds(suite);
        match suite {
            Suite::Qlaws => json!({}),
            Suite::CarlitzCross => json!({ "n_max": n, "d": [1, 2, 3] }),
            Suite::Lemma2 => json!({ "n_max": n, "d": [1, 2, 6], "w3_max": w }),
            Suite::Padic => {
                let p = &self.padic;
                json!({ "p": p.p, "q0": to_fraction_string(&p.q0), "N": p.level, "K": p.precision })
            }
            _ => {
                let mut g = json!({ "n_max": n, "w_max": w, "y_max": y, "seed": self.seed });
                if let Some(s) = self.samples {
                    g["samples"] = json!(s);
                }
                g
            }
        }
    }
}

fn params(v: Value) -> Params {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        _ => unreachable!("params are objects"),
    }
}

fn labeled(label: impl Into<String>, r: &RatFunc) -> Labeled {
    Labeled { label: label.into(), value: r.into() }
}

/// Every value equals the first one.
fn all_equal(check: &str, p: Params, values: Vec<Labeled>) -> CaseResult {
    let witness = values
        .iter()
        .skip(1)
        .find(|e| e.value != values[0].value)
        .map(|e| [values[0].label.clone(), e.label.clone()]);
    CaseResult { verdict: witness.is_none(), witness, per_sigma: values, ..CaseResult::new(check, p, true) }
}

fn check_params(p: &CheckParams) -> Params {
    match *p {
        CheckParams::Triple(t) => params(json!({ "n": t.n, "w": t.w, "y": t.y })),
        CheckParams::Lemma2 { n, d, w3 } => params(json!({ "n": n, "d": d, "w3": w3 })),
    }
}

impl From<IdentityReport> for CaseResult {
    fn from(r: IdentityReport) -> Self {
        CaseResult {
            check: r.name.to_string(),
            params: check_params(&r.params),
            per_sigma: r.per_sigma.iter().map(|e| labeled(e.label.clone(), &e.value)).collect(),
            verdict: r.verdict,
            witness: r.witness.map(|(a, b)| [a, b]),
            detail: None,
        }
    }
}

pub fn qlaws() -> Vec<CaseResult> {
    let q = |e: u64| RatFunc::q_pow(e as usize);
    let mut out = Vec::new();
    for a in 0..=6u64 {
        for b in 0..=6u64 {
            let lhs = q_int(a + b, 1);
            let rhs = &q_int(a, 1) + &(&q(a) * &q_int(b, 1));
            let values = vec![labeled("lhs", &lhs), labeled("rhs", &rhs)];
            out.push(all_equal("qlaw-sum", params(json!({ "a": a, "b": b })), values));
        }
    }
    for a in 0..=4u64 {
        for b in 0..=4u64 {
            for c in 0..=4u64 {
                let lhs = q_int(a + b + c, 1);
                let rhs = &(&q_int(a, 1) + &(&q(a) * &q_int(b, 1))) + &(&q(a + b) * &q_int(c, 1));
                let values = vec![labeled("lhs", &lhs), labeled("rhs", &rhs)];
                out.push(all_equal("qlaw-sum3", params(json!({ "a": a, "b": b, "c": c })), values));
            }
        }
    }
    for a in 1..=6u64 {
        for b in 1..=6u64 {
            let lhs = q_int(a * b, 1);
            let rhs = &q_int(a, 1) * &q_int(b, a as u32);
            let values = vec![labeled("lhs", &lhs), labeled("rhs", &rhs)];
            out.push(all_equal("qlaw-product", params(json!({ "a": a, "b": b })), values));
        }
    }
    out
}

/// Closed form against the recurrence, the `q -> 1` limit, and the addition
/// theorem.
pub fn carlitz_cross(n_max: u32) -> anyhow::Result<Vec<CaseResult>> {
    let mut out = Vec::new();
    for d in 1..=3u32 {
        let table = beta_number_recurrence(n_max, d);
        for n in 0..=n_max {
            let closed = beta_number(n, d);
            let rec = table.get(n as usize).context("recurrence table too short")?;
            let values = vec![labeled("closed", &closed), labeled("recurrence", rec)];
            out.push(all_equal("carlitz-recurrence", params(json!({ "n": n, "d": d })), values));
        }
    }
    let classical = bernoulli_classical_table(n_max);
    for n in 0..=n_max {
        let at_one = beta_number(n, 1).eval(&Rational::from_integer(1.into()))?;
        let b = &classical[n as usize];
        let mut r = CaseResult::new("classical-limit", params(json!({ "n": n })), at_one == *b);
        r.detail = Some(json!({ "q_to_1": to_fraction_string(&at_one), "bernoulli": to_fraction_string(b) }));
        out.push(r);
    }
    for n in 0..=n_max.min(5) {
        for x in 0..=3u64 {
            for y in 0..=3u64 {
                let lhs = beta_poly(n, 1, QArg::integer(x + y, 1))?;
                let mut fwd = RatFunc::zero();
                for l in 0..=n {
                    let t = &(&RatFunc::q_pow((l as u64 * x) as usize) * &beta_poly(l, 1, QArg::integer(y, 1))?)
                        * &q_int(x, 1).pow(n - l);
                    fwd = fwd + t.scale_by(&Rational::from_integer(binomial(n, l)));
                }
                let values = vec![labeled("lhs", &lhs), labeled("expansion", &fwd)];
                out.push(all_equal("addition", params(json!({ "n": n, "x": x, "y": y })), values));
            }
        }
    }
    Ok(out)
}

pub fn lemma2(cfg: &SuiteConfig) -> anyhow::Result<Vec<CaseResult>> {
    let (n_max, w_max, _) = cfg.bounds(Suite::Lemma2);
    let checker = cfg.checker();
    let mut out = Vec::new();
    for d in [1u32, 2, 6] {
        for w3 in 1..=w_max {
            out.push(lemma2_series_oracle(3, d, w3)?.into());
            for n in 0..=n_max {
                out.push(checker.lemma2(n, d, w3)?.into());
            }
        }
    }
    Ok(out)
}

/// `n` in `n_min..=n_max`, `w ∈ [1, w_max]³`, `y ∈ [0, y_max]^{y_dims}`
/// (missing `y` components are 0), sampled down to `samples` points.
pub fn identity_grid(
    n_min: u32,
    n_max: u32,
    w_max: u32,
    y_max: u64,
    y_dims: usize,
    samples: Option<usize>,
    seed: u64,
) -> Vec<IdentityParams> {
    let mut grid = Vec::new();
    let ys = |i: usize| if i < y_dims { y_max } else { 0 };
    for n in n_min..=n_max {
        for w1 in 1..=w_max {
            for w2 in 1..=w_max {
                for w3 in 1..=w_max {
                    for y1 in 0..=ys(0) {
                        for y2 in 0..=ys(1) {
                            for y3 in 0..=ys(2) {
                                grid.push(IdentityParams::new(n, [w1, w2, w3], [y1, y2, y3]));
                            }
                        }
                    }
                }
            }
        }
    }
    match samples {
        Some(k) if k < grid.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<_> = grid.choose_multiple(&mut rng, k).copied().collect();
            picked.sort();
            picked
        }
        _ => grid,
    }
}

fn theorem(cfg: &SuiteConfig, suite: Suite) -> anyhow::Result<Vec<CaseResult>> {
    let (n_max, w_max, y_max) = cfg.bounds(suite);
    let (n_min, y_dims) = if suite == Suite::Thm1 { (0, 3) } else { (1, 2) };
    let grid = identity_grid(n_min, n_max, w_max, y_max, y_dims, cfg.samples, cfg.seed);
    let checker = cfg.checker();
    let reports = cfg.exec.map(&grid, |p| match suite {
        Suite::Thm1 => checker.thm1(p),
        Suite::Thm3 => checker.thm3(p),
        Suite::Thm4 => checker.thm4(p),
        _ => checker.cross34(p),
    });
    Ok(reports.into_iter().map(|r| r.map(CaseResult::from)).collect::<Result<_, _>>()?)
}

fn padic_case(check: &str, p: Value, c: PadicCheck) -> CaseResult {
    let mut r = CaseResult::new(check, params(p), c.sound());
    r.detail = Some(json!({
        "certified": c.certified,
        "level_agreement": c.level_agreement,
        "limit_agreement": c.limit_agreement,
        "limit_ok": c.limit_ok(),
    }));
    r
}

/// Finite-level integrals, the shift relations, the Witt sums and the
/// level-to-level discrepancy profile. A check passes when the computed
/// digits are all correct, i.e. agree with the exact level value to the
/// certified precision.
pub fn padic(cfg: &SuiteConfig) -> anyhow::Result<Vec<CaseResult>> {
    let pc = &cfg.padic;
    let setup = PadicSetup::new(pc.p, pc.q0.clone(), pc.level, pc.precision)?;
    let exec = cfg.exec;
    let job = |f| VolkenbornJob { setup: setup.clone(), f };
    let mut out = Vec::new();
    for m in 0..=3 {
        let c = integral_check(&job(IntegrandSpec::power(m)), exec)?;
        out.push(padic_case("padic-integral", json!({ "m": m }), c));
    }
    for m in 0..=2 {
        for shift in 1..=3u64 {
            let c = verify_eq3(&job(IntegrandSpec::power(m)), shift, exec)?;
            out.push(padic_case("padic-shift", json!({ "m": m, "shift": shift }), c));
        }
    }
    out.push(padic_case("padic-log", json!({}), log_spot_check(&setup, exec)?));
    // the double sum loses 2N digits, so it runs at a level that leaves some
    let double_level = pc.level.min((pc.precision.saturating_sub(1) / 2).max(1));
    for (n, h, k) in [(0, 1, 1), (1, 1, 1), (2, 2, 1), (0, 2, 2), (1, 2, 2), (2, 3, 2)] {
        let level = if k == 2 { double_level } else { pc.level };
        let s = PadicSetup::new(pc.p, pc.q0.clone(), level, pc.precision)?;
        let c = witt_check(n, h, k, 0, &s, exec)?;
        out.push(padic_case("padic-witt", json!({ "n": n, "h": h, "k": k, "x": 0, "N": level }), c));
    }
    if pc.level >= 2 {
        for m in 0..=3 {
            let profile = discrepancy_profile(&setup, IntegrandSpec::power(m), 1..=pc.level - 1);
            let key = |v: &Option<i64>| v.unwrap_or(i64::MAX);
            let monotone = profile.windows(2).all(|w| key(&w[0]) <= key(&w[1]));
            let mut r = CaseResult::new("padic-discrepancy", params(json!({ "m": m })), monotone);
            r.detail = Some(json!({ "valuations": profile }));
            out.push(r);
        }
    }
    Ok(out)
}

fn run_one(cfg: &SuiteConfig, suite: Suite) -> anyhow::Result<Vec<CaseResult>> {
    let mut results = match suite {
        Suite::Qlaws => qlaws(),
        Suite::CarlitzCross => carlitz_cross(cfg.bounds(suite).0)?,
        Suite::Lemma2 => lemma2(cfg)?,
        Suite::Thm1 | Suite::Thm3 | Suite::Thm4 | Suite::Cross34 => theorem(cfg, suite)?,
        Suite::Padic => padic(cfg)?,
        Suite::All => bail!("`all` is not a single suite"),
    };
    sort_results(&mut results);
    Ok(results)
}

pub fn run(cfg: &SuiteConfig) -> anyhow::Result<Report> {
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut grid = Params::new();
    let mut results = Vec::new();
    for s in suites {
        grid.insert(s.name().to_string(), cfg.grid_for(s));
        results.extend(run_one(cfg, s).with_context(|| format!("suite {}", s.name()))?);
    }
    Ok(Report::new(cfg.suite.name(), grid, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes_and_sampling() {
        assert_eq!(identity_grid(0, 1, 2, 1, 3, None, 0).len(), 2 * 8 * 8);
        assert_eq!(identity_grid(1, 2, 2, 1, 2, None, 0).len(), 2 * 8 * 4);
        assert!(identity_grid(1, 2, 2, 1, 2, None, 0).iter().all(|p| p.y[2] == 0));
        let a = identity_grid(0, 4, 3, 2, 3, Some(50), 7);
        assert_eq!(a, identity_grid(0, 4, 3, 2, 3, Some(50), 7));
        assert_ne!(a, identity_grid(0, 4, 3, 2, 3, Some(50), 8));
        assert_eq!(a.len(), 50);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(identity_grid(0, 0, 1, 0, 3, Some(50), 7).len(), 1);
    }

    #[test]
    fn fault_flips_verdicts() {
        let mut cfg = SuiteConfig::new(Suite::Thm1);
        cfg.n_max = Some(1);
        cfg.w_max = Some(1);
        cfg.y_max = Some(0);
        assert!(run(&cfg).unwrap().all_passed());
        cfg.fault = Some(Fault::BetaSign);
        let r = run(&cfg).unwrap();
        assert_eq!(r.summary.failed, 2);
        assert_eq!(r.first_failure().unwrap().witness.as_ref().unwrap()[0], "123");
    }

    #[test]
    fn all_runs_every_suite_in_order() {
        let mut cfg = SuiteConfig::new(Suite::All);
        cfg.n_max = Some(1);
        cfg.w_max = Some(1);
        cfg.y_max = Some(0);
        let r = run(&cfg).unwrap();
        assert!(r.all_passed());
        let names: Vec<&str> = r.grid.keys().map(String::as_str).collect();
        assert_eq!(names.len(), 8);
        assert_eq!(r.results[0].check, "qlaw-product");
    }
}
