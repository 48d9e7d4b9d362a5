use std::collections::BTreeMap;

use ddseq::koszul::{KoszulComplex, powers};
use ddseq::localcoh::{lc_length_lemma51, theorem13_check};
use ddseq::module::FPModule;
use ddseq::problem::Problem;
use ddseq::seqcm::{
    DimensionFiltration, dimension_filtration, distinguished_sop, is_distinguished, is_sequentially_cm,
    theorem15_chi, verify_filtration,
};
use ddseq::sequences::{
    ColonWitness, DdVerdict, Level, chi_grid, estimate_pk, fit_multilinear, grid, is_d_sequence, is_dd_sequence,
    is_strong_d,
};
use ddseq::{Error, Polynomial, Result};
use rayon::prelude::*;
use serde_json::{Value, json};

use crate::args::{Common, LevelArg};
use crate::report::{Outcome, Table, fit_json, grid_table, length_json, polynomial_json, samples_json, tuple};

pub struct Ctx<'a> {
    pub p: &'a Problem,
    pub c: &'a Common,
}

impl Ctx<'_> {
    pub fn m(&self) -> &FPModule {
        &self.p.module
    }

    pub fn x(&self) -> Result<&[Polynomial]> {
        self.p.require_sequence()
    }

    pub fn d(&self) -> Result<usize> {
        Ok(self.x()?.len())
    }

    pub fn n_max(&self) -> u32 {
        self.c.nmax.unwrap_or(self.p.n_max)
    }

    pub fn grid_max(&self, default: u32) -> Result<u32> {
        let g = self.c.grid.unwrap_or(default);
        if g == 0 {
            return Err(Error::Precondition("--grid must be at least 1".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> Result<Vec<u32>> {
        let d = self.d()?;
        match &self.c.n {
            None => Ok(vec![1; d]),
            Some(n) if n.len() == d && n.iter().all(|&v| v > 0) => Ok(n.clone()),
            Some(n) => Err(Error::Precondition(format!("--n needs {d} positive exponents, got {n:?}"))),
        }
    }

    /// `--k`, or every `k` in `range` when omitted.
    pub fn ks(&self, range: std::ops::RangeInclusive<usize>) -> Result<Vec<usize>> {
        match self.c.k {
            Some(k) if range.contains(&k) => Ok(vec![k]),
            Some(k) => Err(Error::Precondition(format!("--k must lie in {}..={}, got {k}", range.start(), range.end()))),
            None => Ok(range.collect()),
        }
    }

    pub fn filtration(&self) -> Result<DimensionFiltration> {
        match self.p.filtration_chain() {
            Some(chain) => verify_filtration(self.m(), chain),
            None => dimension_filtration(self.m()),
        }
    }
}

fn seq_strings(x: &[Polynomial]) -> Vec<String> {
    x.iter().map(Polynomial::to_string).collect()
}

pub fn chi(cx: &Ctx) -> Result<Outcome> {
    let x = cx.x()?;
    let n = cx.n()?;
    let k = cx.c.k.unwrap_or(1);
    let kc = KoszulComplex::with_exponents(cx.m(), x, &n)?;
    let summary = kc.summary()?;
    let value = kc.chi(k)?;
    let mut o = Outcome::new(json!({
        "k": k,
        "n": n,
        "chi": value,
        "homology_lengths": summary.lengths.iter().map(|l| length_json(*l)).collect::<Vec<_>>(),
        "chi_all": summary.chi,
    }));
    o.line(format!("chi_{k}(x{}; M) = {value}", tuple(&n)));
    let mut t = Table::new("", &["i", "length H_i", "chi_i"]);
    for (i, (l, c)) in summary.lengths.iter().zip(&summary.chi).enumerate() {
        t.row(vec![i.to_string(), l.to_string(), c.map_or("-".into(), |v| v.to_string())]);
    }
    o.table(t);
    Ok(o)
}

pub fn chi_table(cx: &Ctx) -> Result<Outcome> {
    let x = cx.x()?;
    let k = cx.c.k.unwrap_or(1);
    let g = cx.grid_max(3)?;
    let samples = chi_grid(cx.m(), x, k, 1, g)?;
    let mut o = Outcome::new(json!({ "k": k, "grid": g, "values": samples_json(&samples) }));
    o.table(grid_table(&format!("chi_{k}(x(n); M) on {{1..{g}}}^{}", x.len()), &samples, x.len()));
    Ok(o)
}

pub fn homology(cx: &Ctx) -> Result<Outcome> {
    let x = cx.x()?;
    let n = cx.n()?;
    let kc = KoszulComplex::with_exponents(cx.m(), x, &n)?;
    let rows: Vec<Result<(usize, ddseq::module::Length, Option<usize>)>> = (0..=x.len())
        .into_par_iter()
        .map(|i| Ok((i, kc.homology_length(i)?, kc.homology(i)?.krull_dim()?)))
        .collect();
    let rows: Vec<_> = rows.into_iter().collect::<Result<_>>()?;
    let mut t = Table::new(format!("H_i(x{}; M)", tuple(&n)), &["i", "length", "dim"]);
    let mut js = Vec::new();
    for (i, l, dim) in &rows {
        t.row(vec![i.to_string(), l.to_string(), dim.map_or("-".into(), |d| d.to_string())]);
        js.push(json!({ "i": i, "length": length_json(*l), "dim": dim }));
    }
    let mut o = Outcome::new(json!({ "n": n, "homology": js }));
    o.table(t);
    Ok(o)
}

fn witness_json(w: &ColonWitness, x: &[Polynomial]) -> Result<Value> {
    Ok(json!({
        "prefix": w.prefix,
        "i": w.i,
        "j": w.j,
        "exponents": w.exponents,
        "statement": w.describe(x),
        "reverified": w.reverify()?,
    }))
}

fn verdict_json(v: &DdVerdict, x: &[Polynomial]) -> Result<Value> {
    let certificate = v.certificate.as_ref().map(|c| {
        json!({
            "coefficients": c.coefficients,
            "fitted": polynomial_json(&c.fitted),
            "grid_max": c.grid_max,
            "samples": c.samples,
        })
    });
    Ok(json!({
        "level": v.level,
        "n_max": v.n_max,
        "witness": v.witness.as_ref().map(|w| witness_json(w, x)).transpose()?,
        "certificate": certificate,
        "conditions_checked": v.record.len(),
        "record": v.record,
    }))
}

pub fn seq_check(cx: &Ctx, level: LevelArg) -> Result<Outcome> {
    let x = cx.x()?;
    let n_max = cx.n_max();
    let (asked, verdict) = match level {
        LevelArg::D => {
            let w = is_d_sequence(cx.m(), x)?;
            let level = if w.is_some() { Level::NotD } else { Level::D };
            (Level::D, DdVerdict { level, n_max, witness: w, certificate: None, record: Vec::new() })
        }
        LevelArg::StrongD => (Level::StrongD, is_strong_d(cx.m(), x, n_max)?),
        LevelArg::Dd => (Level::Dd, is_dd_sequence(cx.m(), x, n_max)?),
    };
    let holds = verdict.level >= asked;
    let mut body = verdict_json(&verdict, x)?;
    body["asked"] = json!(asked);
    body["holds"] = json!(holds);
    body["sequence"] = json!(seq_strings(x));
    let mut o = Outcome::new(body);
    let label = if holds { asked.to_string() } else { format!("NOT {asked}") };
    o.line(format!("verdict: {label} (strongest level reached: {}, n_max = {n_max})", verdict.level));
    if let Some(w) = &verdict.witness {
        o.line(format!("witness at exponents {}: {}", tuple(&w.exponents), w.describe(x)));
        o.line(format!("witness re-verified: {}", w.reverify()?));
    }
    if let Some(c) = &verdict.certificate {
        o.line(format!("certificate: chi_1 = {} on {{1..{}}}^{}, coefficients {:?}", c.fitted, c.grid_max, x.len(), c.coefficients));
    }
    o.line(format!("colon conditions checked: {}", verdict.record.len()));
    Ok(o)
}

pub fn fit(cx: &Ctx) -> Result<Outcome> {
    let x = cx.x()?;
    let k = cx.c.k.unwrap_or(1);
    let g = cx.grid_max(cx.n_max() + 1)?.max(2);
    let samples = chi_grid(cx.m(), x, k, 1, g)?;
    let f = fit_multilinear(&samples, x.len())?;
    let mut o = Outcome::new(json!({ "k": k, "grid": g, "values": samples_json(&samples), "fit": fit_json(&f) }));
    o.line(format!("chi_{k}(x(n); M) ~ {}", f.polynomial));
    o.line(format!("exact on {{1..{g}}}^{}: {}", x.len(), f.is_exact()));
    if !f.is_exact() {
        let mut t = Table::new("residuals", &["n", "observed - fitted"]);
        for (n, r) in &f.residuals {
            t.row(vec![tuple(n), r.to_string()]);
        }
        o.table(t);
    }
    Ok(o)
}

pub fn pk(cx: &Ctx) -> Result<Outcome> {
    let x = cx.x()?;
    let d = x.len();
    let ks = cx.ks(0..=d)?;
    let n_max = cx.n_max();
    let ests: Vec<Result<_>> = ks.par_iter().map(|&k| estimate_pk(cx.m(), x, k, n_max)).collect();
    let mut t = Table::new(format!("p_k(M) from {{1..{}}}^{d}", n_max + 1), &["k", "p_k", "exact fit", "chi_k"]);
    let mut js = Vec::new();
    for e in ests {
        let e = e?;
        t.row(vec![e.k.to_string(), e.value.to_string(), e.exact.to_string(), e.fit.polynomial.to_string()]);
        js.push(json!({ "k": e.k, "p_k": e.value, "exact": e.exact, "fit": fit_json(&e.fit) }));
    }
    let mut o = Outcome::new(json!({ "n_max": n_max, "estimates": js }));
    o.table(t);
    Ok(o)
}

pub fn h0(cx: &Ctx) -> Result<Outcome> {
    let m = cx.m();
    if cx.p.sequence.is_empty() {
        let (_, e) = m.h0()?;
        let l = m.h0_length()?;
        let mut o = Outcome::new(json!({ "h0": [{ "i": 0, "length": l, "saturation_exponent": e }] }));
        o.line(format!("length H^0_m(M) = {l}"));
        return Ok(o);
    }
    let x = cx.x()?;
    let n = cx.n()?;
    let xn = powers(x, &n)?;
    let rows: Vec<Result<(usize, u64, u32)>> = (0..=x.len())
        .into_par_iter()
        .map(|i| {
            let q = m.quotient_by(&xn[..i])?;
            let (_, e) = q.h0()?;
            Ok((i, q.h0_length()?, e))
        })
        .collect();
    let mut t = Table::new(format!("H^0_m(M / (x_1^n_1..x_i^n_i) M), n = {}", tuple(&n)), &["i", "length", "saturation exponent"]);
    let mut js = Vec::new();
    for r in rows {
        let (i, l, e) = r?;
        t.row(vec![i.to_string(), l.to_string(), e.to_string()]);
        js.push(json!({ "i": i, "length": l, "saturation_exponent": e }));
    }
    let mut o = Outcome::new(json!({ "n": n, "h0": js }));
    o.table(t);
    Ok(o)
}

pub fn lc(cx: &Ctx, i: Option<usize>) -> Result<Outcome> {
    let x = cx.x()?;
    let d = x.len();
    let n_max = cx.n_max();
    match cx.c.k {
        None => {
            let is: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..d).collect(),
            };
            let vals: Vec<Result<(usize, u64)>> =
                is.par_iter().map(|&i| Ok((i, lc_length_lemma51(cx.m(), x, i, n_max)?))).collect();
            let mut t = Table::new("length H^i_m(M) for a standard system of parameters", &["i", "length"]);
            let mut js = Vec::new();
            for v in vals {
                let (i, l) = v?;
                t.row(vec![i.to_string(), l.to_string()]);
                js.push(json!({ "i": i, "length": l }));
            }
            let mut o = Outcome::new(json!({ "n_max": n_max, "local_cohomology": js }));
            o.table(t);
            Ok(o)
        }
        Some(k) => {
            let is: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..d.saturating_sub(k)).collect(),
            };
            if is.is_empty() {
                return Err(Error::Precondition(format!("no degree i < d - k for d = {d}, k = {k}")));
            }
            let mut js = Vec::new();
            let mut o = Outcome::new(Value::Null);
            for i in is {
                let r = theorem13_check(cx.m(), x, k, i, n_max)?;
                let samples: BTreeMap<Vec<u32>, i64> = r.values.clone();
                o.table(grid_table(&format!("length H^{i}_m(M / (x_1^n_1..x_{k}^n_{k}) M)"), &samples, k));
                o.line(format!("fit: {} (exact: {})", r.fit.polynomial, r.fit.is_exact()));
                js.push(json!({ "i": i, "k": k, "values": samples_json(&samples), "fit": fit_json(&r.fit) }));
            }
            o.result = json!({ "n_max": n_max, "polynomial_lengths": js });
            Ok(o)
        }
    }
}

/// Generators of each layer; plain polynomials when the cover has rank one.
fn layers(m: &FPModule, f: &DimensionFiltration) -> Result<Vec<Vec<String>>> {
    let mut out = f.render(m)?;
    if m.space().rank() == 1 && m.embedding().is_none() {
        for g in out.iter_mut().flatten() {
            if let Some(inner) = g.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                *g = inner.to_string();
            }
        }
    }
    Ok(out)
}

fn filtration_json(m: &FPModule, f: &DimensionFiltration) -> Result<Value> {
    Ok(json!({
        "provenance": f.provenance,
        "dims": f.dims,
        "bottom_is_zero": f.bottom_is_zero,
        "layers": layers(m, f)?,
        "decomposition": f.decomposition,
    }))
}

fn filtration_table(m: &FPModule, f: &DimensionFiltration) -> Result<Table> {
    let mut t = Table::new("", &["i", "dim", "M_i"]);
    for (i, gens) in layers(m, f)?.iter().enumerate() {
        let dim = if i == 0 && f.bottom_is_zero { "-".to_string() } else { f.dims[i].to_string() };
        t.row(vec![i.to_string(), dim, format!("({})", gens.join(", "))]);
    }
    Ok(t)
}

pub fn filtration(cx: &Ctx) -> Result<Outcome> {
    let f = cx.filtration()?;
    let mut o = Outcome::new(filtration_json(cx.m(), &f)?);
    o.line(format!("provenance: {}", serde_json::to_value(f.provenance).unwrap().as_str().unwrap_or("")));
    if let Some(dec) = &f.decomposition {
        let comps: Vec<String> = dec.components.iter().map(|c| format!("({})", c.display.join(", "))).collect();
        o.line(format!("primary components: {}", comps.join(" ∩ ")));
    }
    o.table(filtration_table(cx.m(), &f)?);
    Ok(o)
}

pub fn seqcm(cx: &Ctx) -> Result<Outcome> {
    let r = is_sequentially_cm(cx.m(), Some(cx.filtration()?))?;
    let mut o = Outcome::new(json!({
        "sequentially_cm": r.sequentially_cm,
        "filtration": filtration_json(cx.m(), &r.filtration)?,
        "layers": r.layers,
    }));
    o.line(format!("sequentially Cohen-Macaulay: {}", r.sequentially_cm));
    let mut t = Table::new("layers M_i / M_{i-1}", &["i", "dim", "Cohen-Macaulay"]);
    for l in &r.layers {
        t.row(vec![l.index.to_string(), l.dim.to_string(), l.cohen_macaulay.to_string()]);
    }
    o.table(t);
    Ok(o)
}

pub fn distinguished(cx: &Ctx) -> Result<Outcome> {
    let m = cx.m();
    let f = cx.filtration()?;
    let found = distinguished_sop(m, &f)?;
    let mut body = json!({ "dims": f.dims, "found": seq_strings(&found) });
    let mut o = Outcome::new(Value::Null);
    o.line(format!("distinguished system of parameters: {}", seq_strings(&found).join(", ")));
    if !cx.p.sequence.is_empty() {
        let x = cx.x()?;
        let n_max = cx.n_max();
        let rep = is_distinguished(m, x, &f)?;
        let formula = grid(x.len(), 1, n_max)
            .par_iter()
            .map(|n| Ok(theorem15_chi(m, x, n, 1, &f)? == ddseq::koszul::chi_k(m, x, n, 1)?))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        let dd = is_dd_sequence(m, x, n_max)?.level == Level::Dd;
        body["sequence"] = json!(seq_strings(x));
        body["conditions"] = json!({
            "intersection_zero": rep.intersection_zero,
            "annihilated": rep.annihilated,
            "chi1_formula": formula,
            "dd_sequence": dd,
        });
        body["layers"] = json!(rep.layers);
        let mut t = Table::new(format!("conditions for ({})", seq_strings(x).join(", ")), &["condition", "holds"]);
        t.row(vec!["M_i ∩ (x_{d_i+1}..x_d)M = 0".into(), rep.intersection_zero.to_string()]);
        t.row(vec!["(x_{d_i+1}..x_d)M_i = 0".into(), rep.annihilated.to_string()]);
        t.row(vec![format!("chi_1 by layer multiplicities on {{1..{n_max}}}^d"), formula.to_string()]);
        t.row(vec![format!("dd-sequence (n_max = {n_max})"), dd.to_string()]);
        o.table(t);
    }
    o.result = body;
    Ok(o)
}
