mod common;

use common::{square_of_maximal_ideal, staircase};
use ddseq::koszul::{
    KoszulComplex, chi_k, chi_via_lemma21, h0_from_homology, homology_length_lemma42, koszul_homology, multiplicity,
    powers,
};
use ddseq::module::{Length, colon, length_between};

#[test]
fn chi1_on_the_square_of_the_maximal_ideal() {
    let (m, x) = square_of_maximal_ideal();
    for a in 1..=3u32 {
        for b in 1..=2u32 {
            let expected = if a == 1 { 2 } else { 3 };
            assert_eq!(chi_k(&m, &x, &[a, b], 1).unwrap(), expected, "n = ({a}, {b})");
        }
    }
    let h0 = koszul_homology(&m, &x, &[1, 1], 0).unwrap();
    assert_eq!(h0.length().unwrap(), Length::Finite(4));
    assert_eq!(multiplicity(&x, &m).unwrap(), 2);
}

#[test]
fn chi1_on_the_staircase_modules() {
    let (m, x) = staircase(2);
    for n1 in 1..=3u32 {
        for n2 in 1..=3u32 {
            assert_eq!(chi_k(&m, &x, &[n1, n2], 1).unwrap(), 1 + n1 as u64);
        }
    }
    let (m3, x3) = staircase(3);
    for n in [[1, 1, 1], [2, 1, 1], [1, 2, 3], [2, 2, 1]] {
        let expect = 1 + n[0] as u64 + (n[0] * n[1]) as u64;
        assert_eq!(chi_k(&m3, &x3, &n, 1).unwrap(), expect, "n = {n:?}");
    }
}

#[test]
fn colon_sum_formula_agrees_with_alternating_sums() {
    let (m, x) = square_of_maximal_ideal();
    assert_eq!(chi_via_lemma21(&m, &x, &[1, 1], 1).unwrap(), 2);
    let (s, y) = staircase(2);
    for n in [[1, 1], [2, 1], [1, 3]] {
        for k in 1..=2 {
            assert_eq!(chi_via_lemma21(&s, &y, &n, k).unwrap(), chi_k(&s, &y, &n, k).unwrap(), "n={n:?} k={k}");
        }
    }
}

#[test]
fn top_homology_is_the_annihilator_of_the_sequence() {
    let (m, x) = staircase(2);
    let xn = powers(&x, &[1, 1]).unwrap();
    let cx = KoszulComplex::new(&m, &xn).unwrap();
    // H_2 = 0 :_M (x_1, x_2), computed as an intersection of colons.
    let rel = m.relations();
    let a = colon(rel, &xn[0]).unwrap();
    let b = colon(rel, &xn[1]).unwrap();
    let both = ddseq::module::intersect(&a, &b).unwrap();
    assert_eq!(cx.homology_length(2).unwrap(), length_between(&both, rel).unwrap());
}

#[test]
fn length_formulas_on_the_staircase() {
    let (m, x) = staircase(2);
    let cx = KoszulComplex::with_exponents(&m, &x, &[1, 1]).unwrap();
    let direct = cx.homology_length(1).unwrap().finite().unwrap();
    assert_eq!(homology_length_lemma42(&m, &x, &[1, 1], 1, 2).unwrap(), direct);
    let quotient_h0 = m.quotient_by(&x[..1]).unwrap().h0_length().unwrap();
    assert_eq!(h0_from_homology(&m, &x, &[1, 1], 1).unwrap(), quotient_h0 as i64);
    assert_eq!(h0_from_homology(&m, &x, &[1, 1], 0).unwrap(), m.h0_length().unwrap() as i64);
}
