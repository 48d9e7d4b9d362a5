mod common;

use common::{corpus, embedded_point, seq, two_planes};
use ddseq::koszul::KoszulComplex;
use ddseq::localcoh::is_standard_sop;
use ddseq::module::colon;
use ddseq::sequences::{
    Level, MultilinearPolynomial, certify_dd_via_theorem12, is_d_sequence, is_dd_sequence, is_strong_d,
    chi1_coefficients,
};
use ddseq::Polynomial;

fn omit(x: &[Polynomial], i: usize) -> Vec<Polynomial> {
    x.iter().enumerate().filter(|(q, _)| *q != i).map(|(_, p)| p.clone()).collect()
}

#[test]
fn verdict_levels_are_monotone() {
    for (name, m, x) in corpus() {
        for rot in 0..x.len() {
            let mut y = x.clone();
            y.rotate_left(rot);
            let dd = is_dd_sequence(&m, &y, 2).unwrap();
            let sd = is_strong_d(&m, &y, 2).unwrap();
            assert_eq!(sd.level, dd.level.min(Level::StrongD), "{name} rot {rot}");
            assert_eq!(is_d_sequence(&m, &y).unwrap().is_none(), sd.level >= Level::D, "{name} rot {rot}");
            if let Some(w) = &dd.witness {
                assert!(w.reverify().unwrap());
            }
            assert!(dd.level < Level::Dd || dd.certificate.is_some() || !dd.record.is_empty());
        }
    }
}

#[test]
fn certificates_exist_exactly_for_dd_sequences() {
    for (name, m, x) in corpus() {
        let level = is_dd_sequence(&m, &x, 2).unwrap().level;
        let cert = certify_dd_via_theorem12(&m, &x, 2).unwrap();
        assert_eq!(cert.is_some(), level == Level::Dd, "{name}");
        if let Some(c) = cert {
            // The fitted coefficients sit on the prefix sets {1..i}.
            let a = chi1_coefficients(&m, &x).unwrap();
            assert_eq!(c.fitted, MultilinearPolynomial::prefix_form(x.len(), &a), "{name}");
            for (vars, _) in &c.fitted.terms {
                assert_eq!(*vars, (1..=vars.len()).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn dd_sequences_survive_omission() {
    for (name, m, x) in corpus() {
        if is_dd_sequence(&m, &x, 2).unwrap().level != Level::Dd || x.len() < 2 {
            continue;
        }
        for i in 0..x.len() {
            let rest = omit(&x, i);
            let q = m.quotient_by(&x[i..=i]).unwrap();
            assert_eq!(is_dd_sequence(&q, &rest, 2).unwrap().level, Level::Dd, "{name}: quotient by x{}", i + 1);
            assert_eq!(is_dd_sequence(&m, &rest, 2).unwrap().level, Level::Dd, "{name}: omit x{}", i + 1);
        }
    }
}

#[test]
fn koszul_homology_colons_agree_for_dd_sequences() {
    for (name, m, x) in corpus() {
        if is_dd_sequence(&m, &x, 2).unwrap().level != Level::Dd {
            continue;
        }
        let s = x.len();
        for i in 1..=s {
            for j in i..=s {
                let y: Vec<Polynomial> = x[..i - 1].iter().chain(&x[j..]).cloned().collect();
                let cx = KoszulComplex::new(&m, &y).unwrap();
                for k in 0..=y.len() {
                    let rel = cx.homology(k).unwrap();
                    let rel = rel.relations();
                    let a = colon(rel, &x[j - 1]).unwrap();
                    let b = colon(rel, &x[i - 1].mul(&x[j - 1])).unwrap();
                    assert!(a.equals(&b).unwrap(), "{name}: i={i} j={j} k={k}");
                }
            }
        }
    }
}

#[test]
fn standard_exactly_when_dd_on_generalized_cohen_macaulay_modules() {
    let (planes, x) = two_planes();
    let line = embedded_point();
    let cases = vec![
        (planes.clone(), x.clone()),
        (planes.clone(), seq(&planes, &["x1 - x3", "x2 + 2*x4"])),
        (planes, vec![x[1].clone(), x[0].clone()]),
        (line.clone(), seq(&line, &["y"])),
        (line.clone(), seq(&line, &["y^2"])),
        (line.clone(), seq(&line, &["x + y"])),
    ];
    let mut seen = [false; 2];
    for (m, y) in cases {
        let standard = is_standard_sop(&m, &y, 2).unwrap().standard;
        let dd = is_dd_sequence(&m, &y, 2).unwrap().level == Level::Dd;
        assert_eq!(standard, dd, "{:?}", y.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        seen[standard as usize] = true;
    }
    assert_eq!(seen, [true, true]);
}
