//! Reports: a JSON document with sorted keys, or aligned text tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ddseq::module::Length;
use ddseq::problem::Problem;
use ddseq::sequences::{Fit, MultilinearPolynomial};
use serde_json::{Value, json};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "kz-report/1";

pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Table {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let ncols = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        // Numeric columns align right, text columns left.
        let numeric: Vec<bool> = (0..ncols)
            .map(|j| self.rows.iter().all(|r| r.get(j).is_none_or(|c| c.parse::<i64>().is_ok() || c == "-")))
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .zip(&numeric)
                .map(|((c, w), num)| if *num { format!("{c:>w$}") } else { format!("{c:<w$}") })
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        if !self.title.is_empty() {
            writeln!(out, "{}", self.title).unwrap();
        }
        writeln!(out, "{}", line(&self.headers)).unwrap();
        let rule: Vec<String> = widths.iter().take(ncols).map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", rule.join("  ")).unwrap();
        for r in &self.rows {
            writeln!(out, "{}", line(r)).unwrap();
        }
    }
}

pub enum Block {
    Line(String),
    Table(Table),
}

/// What a command produced, before it is wrapped in the report envelope.
pub struct Outcome {
    pub result: Value,
    pub text: Vec<Block>,
    /// A verification harness found a disagreement.
    pub failed: bool,
}

impl Outcome {
    pub fn new(result: Value) -> Outcome {
        Outcome { result, text: Vec::new(), failed: false }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(Block::Line(s.into()));
    }

    pub fn table(&mut self, t: Table) {
        self.text.push(Block::Table(t));
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn envelope(command: Value, path: &str, bytes: &[u8], p: &Problem, result: Value, millis: u128) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": { "path": path, "sha256": digest(bytes) },
        "problem": {
            "title": p.title,
            "vars": p.ring.names(),
            "field": p.ring.field().to_string(),
            "module": p.spec.kind(),
            "sequence": p.sequence.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "n_max": p.n_max,
        },
        "result": result,
        "timing_ms": millis,
    })
}

pub fn render_text(header: &str, blocks: &[Block]) -> String {
    let mut out = String::new();
    writeln!(out, "{header}").unwrap();
    let mut prev_line = false;
    for b in blocks {
        match b {
            Block::Line(s) => {
                if !prev_line {
                    out.push('\n');
                }
                writeln!(out, "{s}").unwrap();
                prev_line = true;
            }
            Block::Table(t) => {
                out.push('\n');
                t.render(&mut out);
                prev_line = false;
            }
        }
    }
    out
}

pub fn length_json(l: Length) -> Value {
    match l {
        Length::Finite(n) => json!(n),
        Length::Infinite => json!("inf"),
    }
}

/// Coefficients keyed by rendered monomial (`1`, `n1`, `n1*n2`), and the
/// whole polynomial as a string.
pub fn polynomial_json(p: &MultilinearPolynomial) -> Value {
    let coefficients: BTreeMap<String, i64> = p
        .terms
        .iter()
        .map(|(vars, c)| {
            let key = if vars.is_empty() {
                "1".to_string()
            } else {
                vars.iter().map(|v| format!("n{v}")).collect::<Vec<_>>().join("*")
            };
            (key, *c)
        })
        .collect();
    json!({ "coefficients": coefficients, "rendered": p.to_string(), "degree": p.degree() })
}

pub fn fit_json(f: &Fit) -> Value {
    json!({
        "polynomial": polynomial_json(&f.polynomial),
        "corner_base": f.base,
        "exact": f.is_exact(),
        "residuals": f.residuals.iter().map(|(n, r)| json!({ "n": n, "residual": r })).collect::<Vec<_>>(),
    })
}

pub fn tuple(n: &[u32]) -> String {
    format!("({})", n.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

/// Values on a grid: a matrix for two variables (rows `n2`, columns `n1`),
/// a list otherwise.
pub fn grid_table(title: &str, samples: &BTreeMap<Vec<u32>, i64>, d: usize) -> Table {
    if d == 2 {
        let n1: Vec<u32> = samples.keys().map(|n| n[0]).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let n2: Vec<u32> = samples.keys().map(|n| n[1]).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let mut headers = vec!["n2 \\ n1".to_string()];
        headers.extend(n1.iter().map(u32::to_string));
        let mut t = Table { title: title.to_string(), headers, rows: Vec::new() };
        for b in &n2 {
            let mut row = vec![b.to_string()];
            row.extend(n1.iter().map(|a| samples.get(&vec![*a, *b]).map_or("-".into(), i64::to_string)));
            t.row(row);
        }
        t
    } else {
        let mut t = Table::new(title, &["n", "value"]);
        for (n, v) in samples {
            t.row(vec![tuple(n), v.to_string()]);
        }
        t
    }
}

pub fn samples_json(samples: &BTreeMap<Vec<u32>, i64>) -> Value {
    Value::Array(samples.iter().map(|(n, v)| json!({ "n": n, "value": v })).collect())
}
