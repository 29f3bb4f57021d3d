//! Value tables with a fixed column schema.

use clap::ValueEnum;
use qcarlitz::carlitz::{bernoulli_classical_table, beta_number};
use qcarlitz::field::rational::to_fraction_string;
use qcarlitz::qcore::power_sum_t;
use qcarlitz::{Poly, RatFunc, Rational};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableTarget {
    Beta,
    Bernoulli,
    #[value(name = "T")]
    T,
}

#[derive(Clone, Debug)]
pub struct TableSpec {
    pub target: TableTarget,
    /// Row index range: `n` for `beta`/`bernoulli`, `m` for `T`.
    pub n_min: u32,
    pub n_max: u32,
    pub d: u32,
    /// First index of `T_{n,m}`.
    pub t_n: u32,
    pub w_max: u64,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn coeffs(p: Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(to_fraction_string(c))).collect())
}

fn q_to_one(r: &RatFunc) -> Value {
    match r.eval(&Rational::from_integer(1.into())) {
        Ok(v) => Value::String(to_fraction_string(&v)),
        Err(_) => Value::String("pole".into()),
    }
}

fn ratfunc_cells(r: &RatFunc) -> [Value; 4] {
    [coeffs(r.num()), coeffs(r.den()), Value::String(r.to_string()), q_to_one(r)]
}

pub fn build(spec: &TableSpec) -> Table {
    let ns = spec.n_min..=spec.n_max;
    match spec.target {
        TableTarget::Beta => Table {
            header: vec!["n", "d", "num", "den", "display", "q_to_1"],
            rows: ns
                .map(|n| {
                    let mut row = vec![n.into(), spec.d.into()];
                    row.extend(ratfunc_cells(&beta_number(n, spec.d)));
                    row
                })
                .collect(),
        },
        TableTarget::Bernoulli => {
            let b = bernoulli_classical_table(spec.n_max);
            Table {
                header: vec!["n", "value"],
                rows: ns.map(|n| vec![n.into(), Value::String(to_fraction_string(&b[n as usize]))]).collect(),
            }
        }
        TableTarget::T => Table {
            header: vec!["n", "m", "w", "d", "num", "den", "display", "q_to_1"],
            rows: ns
                .flat_map(|m| (0..=spec.w_max).map(move |w| (m, w)))
                .map(|(m, w)| {
                    let mut row = vec![spec.t_n.into(), m.into(), w.into(), spec.d.into()];
                    row.extend(ratfunc_cells(&power_sum_t(spec.t_n, m, w, spec.d)));
                    row
                })
                .collect(),
        },
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

impl Table {
    /// Coefficient lists are space-separated within a cell.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.header.iter().map(|h| h.to_string()).zip(row.iter().cloned()).collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&serde_json::json!({ "columns": self.header, "rows": rows }))
            .expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(cell).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        out
    }
}
