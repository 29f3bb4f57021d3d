//! Report schema shared by every output format.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use qcarlitz::field::rational::{parse_rational, to_fraction_string};
use qcarlitz::{Poly, RatFunc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Lossless rational function: ascending coefficients as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl From<&RatFunc> for RatFuncJson {
    fn from(r: &RatFunc) -> Self {
        let coeffs = |p: Poly| p.coeffs().iter().map(to_fraction_string).collect();
        RatFuncJson { num: coeffs(r.num()), den: coeffs(r.den()) }
    }
}

impl RatFuncJson {
    pub fn to_ratfunc(&self) -> qcarlitz::Result<RatFunc> {
        let poly = |c: &[String]| -> qcarlitz::Result<Poly> {
            Ok(Poly::from_coeffs(c.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?))
        };
        RatFunc::new(&poly(&self.num)?, &poly(&self.den)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeled {
    pub label: String,
    pub value: RatFuncJson,
}

pub type Params = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub check: String,
    pub params: Params,
    pub per_sigma: Vec<Labeled>,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl CaseResult {
    pub fn new(check: impl Into<String>, params: Params, verdict: bool) -> Self {
        CaseResult { check: check.into(), params, per_sigma: Vec::new(), verdict, witness: None, detail: None }
    }

    /// `check n=1 w=[1,2,1]` style one-liner.
    pub fn describe(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if params.is_empty() {
            self.check.clone()
        } else {
            format!("{} {}", self.check, params.join(" "))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub grid: Params,
    pub results: Vec<CaseResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>, grid: Params, results: Vec<CaseResult>) -> Self {
        let passed = results.iter().filter(|r| r.verdict).count();
        let summary = Summary { total: results.len(), passed, failed: results.len() - passed };
        Report { suite: suite.into(), grid, results, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn first_failure(&self) -> Option<&CaseResult> {
        self.results.iter().find(|r| !r.verdict)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let mark = if r.verdict { "pass" } else { "FAIL" };
            out.push_str(&format!("{mark} {}", r.describe()));
            if let Some([a, b]) = &r.witness {
                out.push_str(&format!(" (differs: {a} vs {b})"));
            }
            if let Some(d) = &r.detail {
                out.push_str(&format!(" {d}"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!("{}: {} total, {} passed, {} failed\n", self.suite, s.total, s.passed, s.failed));
        out
    }

    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "params", "verdict", "witness", "values", "detail"])?;
        for r in &self.results {
            let params = serde_json::to_string(&r.params)?;
            let witness = r.witness.as_ref().map(|[a, b]| format!("{a}|{b}")).unwrap_or_default();
            let values = r.per_sigma.iter().map(|e| e.label.as_str()).collect::<Vec<_>>().join("|");
            let detail = r.detail.as_ref().map(Value::to_string).unwrap_or_default();
            w.write_record([r.check.as_str(), &params, if r.verdict { "true" } else { "false" }, &witness, &values, &detail])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

fn cmp_value(a: &Value, b: &Value) -> Ordering {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            x.as_i64().cmp(&y.as_i64()).then_with(|| x.as_u64().cmp(&y.as_u64()))
        }
        (Value::Array(x), Value::Array(y)) => {
            x.iter().zip(y).map(|(a, b)| cmp_value(a, b)).find(|o| o.is_ne()).unwrap_or(x.len().cmp(&y.len()))
        }
        _ => a.to_string().cmp(&b.to_string()),
    }
}

/// Deterministic order: by check name, then numerically by parameters.
pub fn sort_results(results: &mut [CaseResult]) {
    results.sort_by(|a, b| {
        a.check.cmp(&b.check).then_with(|| {
            a.params
                .iter()
                .zip(&b.params)
                .map(|((ka, va), (kb, vb))| ka.cmp(kb).then_with(|| cmp_value(va, vb)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    });
}
