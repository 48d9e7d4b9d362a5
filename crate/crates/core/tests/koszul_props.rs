mod common;

use common::corpus;
use ddseq::koszul::{KoszulComplex, chi_k, chi_via_lemma21, multiplicity, powers};
use ddseq::module::Length;
use proptest::prelude::*;

fn exponents(d: usize, hi: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1..=hi, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_squares_to_zero(which in 0usize..6, n in exponents(3, 2), seed in proptest::collection::vec(-2i64..3, 8)) {
        let (_, m, x) = &corpus()[which];
        let n = &n[..x.len()];
        let cx = KoszulComplex::with_exponents(m, x, n).unwrap();
        for k in 2..=cx.len() {
            let space = cx.space(k);
            let mut v = ddseq::Vector::zero();
            for (p, s) in seed.iter().enumerate().take(space.rank()) {
                v = v.add(space, &ddseq::Vector::unit(space, p).scale(&space.ring().field().from_i64(*s)));
            }
            prop_assert!(cx.apply(k - 1, &cx.apply(k, &v)).is_zero());
        }
    }

    #[test]
    fn homology_splits_into_adjacent_characteristics(which in 0usize..6, n in exponents(3, 2)) {
        let (_, m, x) = &corpus()[which];
        let n = &n[..x.len()];
        let cx = KoszulComplex::with_exponents(m, x, n).unwrap();
        for k in 0..=cx.len() {
            let h = cx.homology_length(k).unwrap().finite().unwrap();
            let next = if k < cx.len() { cx.chi(k + 1).unwrap() } else { 0 };
            prop_assert_eq!(h, cx.chi(k).unwrap() + next);
        }
        let q = m.quotient_by(&powers(x, n).unwrap()).unwrap().length().unwrap().finite().unwrap();
        prop_assert_eq!(cx.chi(1).unwrap(), q - cx.chi(0).unwrap());
    }

    #[test]
    fn multiplicity_scales_with_powers(which in 0usize..6, n in exponents(3, 3)) {
        let (_, m, x) = &corpus()[which];
        let n = &n[..x.len()];
        let e = multiplicity(x, m).unwrap();
        let prod: u64 = n.iter().map(|&v| v as u64).product();
        prop_assert_eq!(chi_k(m, x, n, 0).unwrap(), prod * e);
    }

    #[test]
    fn characteristics_are_bounded_and_increasing(which in 0usize..6, n in exponents(3, 2), bump in 0usize..3) {
        let (_, m, x) = &corpus()[which];
        let d = x.len();
        let n = &n[..d];
        let mut bigger = n.to_vec();
        bigger[bump % d] += 1;
        let prod: u64 = n.iter().map(|&v| v as u64).product();
        for k in 0..=d {
            let here = chi_k(m, x, n, k).unwrap();
            prop_assert!(here <= prod * chi_k(m, x, &vec![1; d], k).unwrap());
            prop_assert!(here <= chi_k(m, x, &bigger, k).unwrap());
        }
    }

    #[test]
    fn characteristics_ignore_the_order(which in 0usize..6, n in exponents(3, 2), rot in 1usize..3) {
        let (_, m, x) = &corpus()[which];
        let d = x.len();
        let n = &n[..d];
        let mut y = x.clone();
        let mut e = n.to_vec();
        y.rotate_left(rot % d);
        e.rotate_left(rot % d);
        for k in 0..=d {
            prop_assert_eq!(chi_k(m, x, n, k).unwrap(), chi_k(m, &y, &e, k).unwrap());
        }
    }

    #[test]
    fn colon_sum_formula_matches(which in 0usize..6, n in exponents(3, 2)) {
        let (_, m, x) = &corpus()[which];
        let n = &n[..x.len()];
        for k in 1..=x.len() {
            prop_assert_eq!(chi_via_lemma21(m, x, n, k).unwrap(), chi_k(m, x, n, k).unwrap());
        }
    }
}

#[test]
fn partial_sequences_have_infinite_homology() {
    let (_, m, x) = &corpus()[1];
    let cx = KoszulComplex::new(m, &x[..1]).unwrap();
    assert_eq!(cx.homology_length(0).unwrap(), Length::Infinite);
    assert!(cx.chi(0).is_err());
}
