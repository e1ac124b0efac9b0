use num_rational::Rational64;
use proptest::prelude::*;

use rigidmod::arith::{primes_up_to, rem_i128};
use rigidmod::counting::{
    congruence_check, count_points, l_polynomial, residue_degree, rm_consistency, Target, Verdict, DEFAULT_BOUND,
};
use rigidmod::curves::{family_from_kind, specialize, FamilyKind};
use rigidmod::cyclo::canonical_residue;
use rigidmod::gf::Gf;
use rigidmod::RingSpec;

fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

#[test]
fn rm_collapse_at_primes_of_k5() {
    let res = canonical_residue(&RingSpec::new(10), 5).unwrap();
    for kind in [FamilyKind::TtvEven(5), FamilyKind::TtvOdd(5)] {
        let fam = family_from_kind(kind).unwrap();
        for x0 in [2, 3, -1] {
            let c = specialize(&fam, q(x0)).unwrap();
            for p in primes_up_to(100).into_iter().filter(|&p| !c.is_bad(p)) {
                let l = l_polynomial(&c, p, DEFAULT_BOUND).unwrap().base_change(residue_degree(p, 5));
                assert!(rm_consistency(&l, &res).is_ok(), "{kind} at {x0}, p = {p}");
            }
        }
    }
}

#[test]
fn inert_primes_have_trace_zero() {
    // Frobenius swaps the two RM eigenspaces at p inert in Q(√5)
    let c = specialize(&family_from_kind(FamilyKind::TtvEven(5)).unwrap(), q(3)).unwrap();
    for p in primes_up_to(100).into_iter().filter(|&p| !c.is_bad(p) && residue_degree(p, 5) == 2) {
        let l = l_polynomial(&c, p, DEFAULT_BOUND).unwrap();
        assert_eq!(l.coeffs[1], 0, "p = {p}");
    }
}

#[test]
fn verdicts_are_stable_in_pmax() {
    let cases = [
        (FamilyKind::TtvEven(5), Target::Curve(FamilyKind::Legendre), 5),
        (FamilyKind::TtvEven(3), Target::Curve(FamilyKind::Legendre), 3),
        (FamilyKind::TtvOdd(5), Target::Eisenstein, 5),
    ];
    for (kind, target, ell) in cases {
        let fam = family_from_kind(kind).unwrap();
        for x0 in [2, 3] {
            let small = congruence_check(&fam, target, q(x0), ell, 50, DEFAULT_BOUND).unwrap();
            let large = congruence_check(&fam, target, q(x0), ell, 100, DEFAULT_BOUND).unwrap();
            assert_eq!(small.verdict, Verdict::Verified);
            assert_eq!(large.verdict, Verdict::Verified);
            assert_eq!(small.per_prime[..], large.per_prime[..small.per_prime.len()]);
        }
    }
}

#[test]
fn ttv_even_three_against_legendre_at_minus_one() {
    let fam = family_from_kind(FamilyKind::TtvEven(3)).unwrap();
    let r = congruence_check(&fam, Target::Curve(FamilyKind::Legendre), q(-1), 3, 50, DEFAULT_BOUND).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(r.per_prime.iter().all(|row| row.p != 2 && row.p != 3));
}

#[test]
fn legendre_and_j1728_fibres_differ_mod_5() {
    // the twist search is not vacuous: distinct fibres differ mod 5 up to sign
    let leg = specialize(&family_from_kind(FamilyKind::Legendre).unwrap(), q(2)).unwrap();
    let j = specialize(&family_from_kind(FamilyKind::J1728).unwrap(), q(2)).unwrap();
    let differ = primes_up_to(100)
        .into_iter()
        .filter(|&p| p > 5 && !leg.is_bad(p) && !j.is_bad(p))
        .any(|p| {
            let a = l_polynomial(&leg, p, DEFAULT_BOUND).unwrap().coeffs[1];
            let b = l_polynomial(&j, p, DEFAULT_BOUND).unwrap().coeffs[1];
            rem_i128(a - b, 5) != 0 && rem_i128(a + b, 5) != 0
        });
    assert!(differ);
}

fn kind() -> impl Strategy<Value = FamilyKind> {
    prop::sample::select(vec![
        FamilyKind::Legendre,
        FamilyKind::J1728,
        FamilyKind::TtvOdd(3),
        FamilyKind::TtvOdd(5),
        FamilyKind::TtvEven(3),
        FamilyKind::TtvEven(5),
        FamilyKind::TtvEven(7),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn l_polynomials_are_consistent(
        k in kind(),
        num in -12i64..=12,
        den in 1i64..=5,
        p in prop::sample::select(primes_up_to(60)),
    ) {
        let x0 = Rational64::new(num, den);
        prop_assume!(x0 != q(0) && x0 != q(1));
        let c = match specialize(&family_from_kind(k).unwrap(), x0) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        prop_assume!(!c.is_bad(p));
        let l = l_polynomial(&c, p, DEFAULT_BOUND).unwrap();
        prop_assert!(l.functional_equation_holds());
        prop_assert!(l.weil_bound_holds(1e-6));
        prop_assert_eq!(l.count(1), count_points(&c.poly, &Gf::new(p, 1)) as i128);
        if c.genus == 1 {
            prop_assert_eq!(l.count(2), count_points(&c.poly, &Gf::new(p, 2)) as i128);
        }
        let l2 = l.base_change(2);
        prop_assert!(l2.functional_equation_holds());
        prop_assert_eq!(l2.count(1), l.count(2));
    }
}
