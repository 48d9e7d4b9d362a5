//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any fails.

mod common;

use std::panic::{AssertUnwindSafe, catch_unwind};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{corpus, plane_and_line, polynomial_ring, seq, square_of_maximal_ideal, staircase, three_layers_distinguished, two_planes};
use ddseq::koszul::{
    KoszulComplex, chi_k, chi_via_lemma21, h0_from_homology, homology_length_lemma42, multiplicity, powers,
};
use ddseq::localcoh::{find_sop, lc_length_lemma51, theorem13_check};
use ddseq::module::{FPModule, colon};
use ddseq::seqcm::{dimension_filtration, is_distinguished, is_sequentially_cm, theorem15_chi, theorem15_coefficients};
use ddseq::sequences::{Level, PkValue, estimate_pk, grid, is_dd_sequence, is_strong_d};
use ddseq::{FreeModule, Polynomial, Submodule, Vector};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;

fn ok<T>(r: ddseq::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn product(n: &[u32]) -> u64 {
    n.iter().map(|&v| v as u64).product()
}

/// `sum_{i=0}^{top} n_1 ... n_i`.
fn prefix_sum(n: &[u32], top: usize) -> u64 {
    (0..=top).map(|i| product(&n[..i])).sum()
}

fn chi_display() -> Outcome {
    let (m, x) = square_of_maximal_ideal();
    for a in 1..=4u32 {
        for b in 1..=4u32 {
            let v = ok(chi_k(&m, &x, &[a, b], 1))?;
            let want = if a == 1 { 2 } else { 3 };
            ensure!(v == want, "chi_1 at ({a},{b}) is {v}, expected {want}");
        }
    }
    Ok("16 values, 2 on the first column and 3 elsewhere".into())
}

/// Reduced Gröbner basis of an ideal of `R`, rendered.
fn reduced_ideal(m: &FPModule, gens: &[&str]) -> Result<Vec<String>, String> {
    let r1 = FreeModule::standard(m.ring(), 1);
    let v: Vec<Vector> = seq(m, gens).iter().map(|f| Vector::from_poly(&r1, 0, f)).collect();
    let ideal = Submodule::new(&r1, v);
    Ok(ok(ideal.gb())?.elements().iter().map(|v| v.component(&r1, 0).to_string()).collect())
}

fn colons() -> Outcome {
    let (m, x) = square_of_maximal_ideal();
    let l = m.ideal_times(&x[1..]);
    let cases: [(u32, &[&str]); 3] = [(1, &["X*Y^2", "Y^3"]), (2, &["Y^2"]), (3, &["Y^2"])];
    for (e, want) in cases {
        let c = ok(colon(&l, &x[0].pow(e)))?;
        let got = ok(m.render_submodule(&c))?;
        let want = reduced_ideal(&m, want)?;
        ensure!(got == want, "Y^2 M : X^{e} = {got:?}, expected {want:?}");
    }
    Ok("(XY^2, Y^3), (Y^2), (Y^2)".into())
}

fn staircase_lengths() -> Outcome {
    let mut count = 0;
    for d in 2..=3 {
        let (m, x) = staircase(d);
        for n in grid(d, 1, 3) {
            let q = ok(ok(m.quotient_by(&ok(powers(&x, &n))?))?.length())?.finite().ok_or("infinite quotient")?;
            ensure!(q == prefix_sum(&n, d), "d = {d}, n = {n:?}: length {q}");
            let c = ok(chi_k(&m, &x, &n, 1))?;
            ensure!(c == prefix_sum(&n, d - 1), "d = {d}, n = {n:?}: chi_1 = {c}");
            count += 1;
        }
    }
    Ok(format!("{count} exponent tuples"))
}

fn verdicts() -> Outcome {
    let (m, x) = square_of_maximal_ideal();
    let sd = ok(is_strong_d(&m, &x, 3))?;
    ensure!(sd.level == Level::StrongD, "strong-d check gave {}", sd.level);
    let dd = ok(is_dd_sequence(&m, &x, 3))?;
    ensure!(dd.level < Level::Dd, "(X, Y^2) was accepted as dd");
    let w = dd.witness.ok_or("no witness")?;
    ensure!(ok(w.reverify())?, "the witness does not reverify");
    for d in 2..=3 {
        let (m, x) = staircase(d);
        let v = ok(is_dd_sequence(&m, &x, 2))?;
        ensure!(v.level == Level::Dd, "staircase d = {d} is {}", v.level);
        let cert = v.certificate.ok_or("no certificate")?;
        ensure!(cert.coefficients == vec![1; d], "coefficients {:?}", cert.coefficients);
        let pk = ok(estimate_pk(&m, &x, 1, 2))?;
        ensure!(pk.value == PkValue::Degree(d - 1), "d = {d}: fitted degree {}", pk.value);
    }
    Ok(format!("witness {}", w.describe(&x)))
}

fn colon_sums() -> Outcome {
    let mut count = 0;
    for (name, m, x) in corpus() {
        let d = x.len();
        for k in 1..=d {
            for n in grid(d, 1, 2) {
                let a = ok(chi_via_lemma21(&m, &x, &n, k))?;
                let b = ok(chi_k(&m, &x, &n, k))?;
                ensure!(a == b, "{name}: k = {k}, n = {n:?}: {a} vs {b}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} comparisons"))
}

fn homology_from_h0() -> Outcome {
    let mut count = 0;
    let mut modules = 0;
    for (name, m, x) in corpus() {
        if ok(is_strong_d(&m, &x, 2))?.level < Level::StrongD {
            continue;
        }
        modules += 1;
        let d = x.len();
        for j in 1..=d {
            for i in 1..=j {
                for n in grid(j, 1, 2) {
                    let full: Vec<u32> = n.iter().copied().chain(std::iter::repeat(1).take(d - j)).collect();
                    let formula = ok(homology_length_lemma42(&m, &x, &full, i, j))?;
                    let cx = ok(KoszulComplex::new(&m, &ok(powers(&x[..j], &n))?))?;
                    let direct = ok(ok(cx.homology_length(i))?.require("Koszul homology"))?;
                    ensure!(formula == direct, "{name}: i = {i}, j = {j}, n = {n:?}: {formula} vs {direct}");
                    count += 1;
                }
            }
        }
    }
    ensure!(modules >= 3, "only {modules} strong d-sequences in the corpus");
    Ok(format!("{count} comparisons on {modules} modules"))
}

fn h0_both_ways() -> Outcome {
    let mut count = 0;
    let mut modules = 0;
    for (name, m, x) in corpus() {
        if ok(is_dd_sequence(&m, &x, 2))?.level != Level::Dd {
            continue;
        }
        modules += 1;
        let d = x.len();
        for n in grid(d, 1, 2) {
            let xn = ok(powers(&x, &n))?;
            for i in 0..d {
                let from_homology = ok(h0_from_homology(&m, &x, &n, i))?;
                let saturated = ok(ok(m.quotient_by(&xn[..i]))?.h0_length())? as i64;
                ensure!(from_homology == saturated, "{name}: i = {i}, n = {n:?}: {from_homology} vs {saturated}");
                count += 1;
            }
            for i in 1..=d {
                let from_h0 = ok(homology_length_lemma42(&m, &x, &n, i, d))?;
                let direct = ok(ok(ok(KoszulComplex::new(&m, &xn))?.homology_length(i))?.require("Koszul homology"))?;
                ensure!(from_h0 == direct, "{name}: H_{i}, n = {n:?}: {from_h0} vs {direct}");
                count += 1;
            }
        }
    }
    ensure!(modules >= 3, "only {modules} dd-sequences in the corpus");
    Ok(format!("{count} comparisons on {modules} modules"))
}

fn local_cohomology_invariance() -> Outcome {
    let (m, x) = two_planes();
    let routes = [
        x.clone(),
        seq(&m, &["x1 - x3", "x2 + 2*x4"]),
        ok(powers(&x, &[2, 2]))?,
    ];
    let mut lengths = Vec::new();
    for i in 0..x.len() {
        let v: Vec<u64> = routes.iter().map(|y| ok(lc_length_lemma51(&m, y, i, 2))).collect::<Result<_, _>>()?;
        ensure!(v.iter().all(|l| *l == v[0]), "H^{i} lengths differ across systems: {v:?}");
        lengths.push(v[0]);
    }
    ensure!(lengths == vec![0, 1], "lengths {lengths:?}, expected [0, 1]");
    Ok("H^0 = 0, H^1 = 1 for three systems".into())
}

fn local_cohomology_polynomial() -> Outcome {
    let (m, x) = staircase(3);
    let fit = ok(theorem13_check(&m, &x, 2, 0, 2))?;
    ensure!(fit.fit.is_exact(), "residuals {:?}", fit.fit.residuals);
    for (n, v) in &fit.values {
        let q = ok(m.quotient_by(&ok(powers(&x[..2], n))?))?;
        let h0 = ok(q.h0_length())? as i64;
        ensure!(*v == h0, "n = {n:?}: {v} vs saturation {h0}");
    }
    Ok(format!("H^0 length = {}", fit.fit.polynomial))
}

fn seqcm_pairs() -> Result<Vec<(FPModule, Vec<Polynomial>)>, String> {
    let (c, _) = plane_and_line();
    let bad = seq(&c, &["x", "y + z"]);
    let (t, z) = three_layers_distinguished();
    let plain = ok(find_sop(&t))?;
    Ok(vec![plane_and_line(), (c, bad), staircase(2), staircase(3), (t.clone(), z), (t, plain), polynomial_ring()])
}

fn four_conditions() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for (m, x) in seqcm_pairs()? {
        let shown: Vec<String> = x.iter().map(|p| p.to_string()).collect();
        let f = ok(dimension_filtration(&m))?;
        ensure!(ok(is_sequentially_cm(&m, Some(f.clone())))?.sequentially_cm, "{shown:?}: not sequentially CM");
        let dist = ok(is_distinguished(&m, &x, &f))?;
        let d = x.len();
        let mut formula = true;
        for n in grid(d, 1, 2) {
            formula &= theorem15_chi(&m, &x, &n, 1, &f).ok() == Some(ok(chi_k(&m, &x, &n, 1))?);
        }
        let dd = ok(is_dd_sequence(&m, &x, 2))?.level == Level::Dd;
        let all = [dist.intersection_zero, dist.annihilated, formula, dd];
        ensure!(all.iter().all(|b| *b == all[0]), "{shown:?}: conditions disagree {all:?}");
        if !all[0] {
            no += 1;
            continue;
        }
        yes += 1;
        let ones = ok(theorem15_coefficients(&f.dims, 1))?;
        ensure!(ones.iter().all(|c| *c == 1), "{shown:?}: k = 1 coefficients {ones:?}");
        for k in 1..=2.min(d) {
            for n in grid(d, 1, 2) {
                let a = ok(theorem15_chi(&m, &x, &n, k, &f))?;
                let b = ok(chi_k(&m, &x, &n, k))?;
                ensure!(a == b, "{shown:?}: k = {k}, n = {n:?}: {a} vs {b}");
            }
        }
    }
    ensure!(no > 0, "no negative case");
    Ok(format!("{yes} distinguished, {no} not"))
}

fn pk_from_layers() -> Outcome {
    let (m, x) = three_layers_distinguished();
    let f = ok(dimension_filtration(&m))?;
    let d = x.len();
    let dims = &f.dims;
    let mut got = Vec::new();
    for k in 1..=d {
        // The layer i with d - d_{i+1} < k <= d - d_i.
        let want = (0..dims.len())
            .find(|&i| d - dims[i] >= k && dims.get(i + 1).is_none_or(|&nx| d - nx < k))
            .map(|i| dims[i])
            .ok_or(format!("no layer for k = {k}"))?;
        let est = ok(estimate_pk(&m, &x, k, 2))?;
        ensure!(est.value == PkValue::Degree(want), "p_{k} estimated {}, expected {want}", est.value);
        got.push(want);
    }
    Ok(format!("dims {dims:?}, p = {got:?}"))
}

/// A random cyclic monomial module of dimension 1..=3 with a system of
/// parameters found by search.
fn random_instance(runner: &mut TestRunner) -> Result<(String, FPModule, Vec<Polynomial>), String> {
    let names = ["x", "y", "z", "w"];
    let strategy = (2usize..=4, proptest::collection::vec(proptest::collection::vec(0u32..=2, 4), 1..=3));
    loop {
        let (nvars, exps) = strategy.new_tree(runner).map_err(|e| e.to_string())?.current();
        let gens: Vec<String> = exps
            .iter()
            .map(|e| {
                let parts: Vec<String> =
                    e[..nvars].iter().zip(names).filter(|(p, _)| **p > 0).map(|(p, v)| format!("{v}^{p}")).collect();
                parts.join("*")
            })
            .filter(|s| !s.is_empty())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let m = common::quotient(&names[..nvars], &refs);
        let dim = ok(m.krull_dim())?.unwrap_or(0);
        if dim == 0 || dim > 3 {
            continue;
        }
        let x = ok(find_sop(&m))?;
        return Ok((format!("k[{}]/({})", names[..nvars].join(","), refs.join(", ")), m, x));
    }
}

fn properties_of(m: &FPModule, x: &[Polynomial]) -> Result<bool, String> {
    let d = x.len();
    let e = ok(multiplicity(x, m))?;
    let ones = vec![1; d];
    let at_ones: Vec<u64> = (0..=d).map(|k| ok(chi_k(m, x, &ones, k))).collect::<Result<_, _>>()?;
    let rev_x: Vec<Polynomial> = x.iter().rev().cloned().collect();
    for n in grid(d, 1, 2) {
        let cx = ok(KoszulComplex::with_exponents(m, x, &n))?;
        let chi: Vec<u64> = (0..=d).map(|k| ok(chi_k(m, x, &n, k))).collect::<Result<_, _>>()?;
        ensure!(chi[0] == product(&n) * e, "n = {n:?}: chi_0 = {}, e = {e}", chi[0]);
        for k in 1..=d {
            let via = ok(chi_via_lemma21(m, x, &n, k))?;
            ensure!(via == chi[k], "n = {n:?}: chi_{k} = {} but the colon sum gives {via}", chi[k]);
        }
        let rev_n: Vec<u32> = n.iter().rev().copied().collect();
        for k in 0..=d {
            ensure!(chi[k] <= product(&n) * at_ones[k], "n = {n:?}: chi_{k} above the bound");
            for i in 0..d {
                let mut up = n.clone();
                up[i] += 1;
                ensure!(chi[k] <= ok(chi_k(m, x, &up, k))?, "n = {n:?}: chi_{k} drops along n{}", i + 1);
            }
            let h = ok(ok(cx.homology_length(k))?.require("Koszul homology"))?;
            let next = if k < d { chi[k + 1] } else { 0 };
            ensure!(h == chi[k] + next, "n = {n:?}: length H_{k} = {h} vs {} + {next}", chi[k]);
            ensure!(ok(chi_k(m, &rev_x, &rev_n, k))? == chi[k], "n = {n:?}: chi_{k} depends on the order");
        }
    }
    let dd = ok(is_dd_sequence(m, x, 2))?.level == Level::Dd;
    if dd && d >= 2 {
        for i in 0..d {
            let rest: Vec<Polynomial> = x.iter().enumerate().filter(|(q, _)| *q != i).map(|(_, p)| p.clone()).collect();
            ensure!(ok(is_dd_sequence(m, &rest, 2))?.level == Level::Dd, "dd lost when x{} is omitted", i + 1);
            let q = ok(m.quotient_by(&x[i..=i]))?;
            ensure!(ok(is_dd_sequence(&q, &rest, 2))?.level == Level::Dd, "dd lost modulo x{}", i + 1);
        }
    }
    Ok(dd)
}

fn random_properties() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let mut dd = 0;
    for case in 0..20 {
        let (name, m, x) = random_instance(&mut runner)?;
        dd += properties_of(&m, &x).map_err(|e| format!("case {case} {name}: {e}"))? as usize;
    }
    Ok(format!("20 modules, {dd} with dd parameters"))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "chi_1 of (X^m, Y^2n) on the square of the maximal ideal", budget: secs(10), run: chi_display },
        Criterion { name: "colons Y^2 M : X^m", budget: secs(5), run: colons },
        Criterion { name: "staircase quotient lengths and chi_1", budget: secs(60), run: staircase_lengths },
        Criterion { name: "strong-d but not dd; staircase dd certificate", budget: secs(120), run: verdicts },
        Criterion { name: "colon-sum chi_k equals the alternating sum", budget: None, run: colon_sums },
        Criterion { name: "Koszul homology lengths from H^0 lengths", budget: None, run: homology_from_h0 },
        Criterion { name: "H^0 lengths from top Koszul homology and back", budget: None, run: h0_both_ways },
        Criterion { name: "local cohomology independent of the parameters", budget: None, run: local_cohomology_invariance },
        Criterion { name: "H^0 of staircase quotients is polynomial", budget: None, run: local_cohomology_polynomial },
        Criterion { name: "distinguished, formula and dd agree", budget: None, run: four_conditions },
        Criterion { name: "p_k from the dimension filtration", budget: None, run: pk_from_layers },
        Criterion { name: "properties on random monomial modules", budget: secs(600), run: random_properties },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("over the {} s budget", b.as_secs())),
            (r, _) => r,
        };
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!("{tag} {:>2} {} ({:.1} s): {detail}", i + 1, c.name, took.as_secs_f64());
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 { ExitCode::FAILURE } else { ExitCode::SUCCESS }
}
