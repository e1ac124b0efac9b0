use std::f64::consts::PI;

use proptest::prelude::*;

use rigidmod::arith::{gcd, is_prime};
use rigidmod::cyclo::{canonical_residue, residue_reduction};
use rigidmod::zpoly::{bareiss_det, ZPoly};
use rigidmod::{RingElement, RingSpec};

#[test]
fn min_poly_matches_rounded_product_up_to_100() {
    for n in 1..=100u64 {
        let mut prod = vec![1.0f64];
        for k in (0..=n / 2).filter(|&k| gcd(k, n) == 1) {
            let root = 2.0 * (2.0 * PI * k as f64 / n as f64).cos();
            let mut next = vec![0.0; prod.len() + 1];
            for (i, &c) in prod.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= root * c;
            }
            prod = next;
        }
        let rounded: Vec<i128> = prod.iter().map(|c| c.round() as i128).collect();
        assert_eq!(rounded, RingSpec::new(n).min_poly(), "n = {n}");
    }
}

/// `det(X·I − M_a)` for multiplication by `a` on the power basis.
fn charpoly(a: &RingElement) -> ZPoly {
    let spec = a.spec();
    let d = spec.degree();
    let columns: Vec<Vec<i128>> = (0..d)
        .map(|i| {
            let mut e = vec![0i128; d];
            e[i] = 1;
            let mut c = (&RingElement::new(spec, &e) * a).coeffs().to_vec();
            c.resize(d, 0);
            c
        })
        .collect();
    let m: Vec<Vec<ZPoly>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let entry = ZPoly::from_i128(&[-columns[c][r]]);
                    if r == c {
                        entry.add(&ZPoly::x())
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    bareiss_det(m)
}

#[test]
fn theta_charpoly_is_min_poly() {
    for n in 1..=12u64 {
        let spec = RingSpec::new(n);
        for c in RingElement::theta(&spec).conjugates() {
            assert_eq!(charpoly(&c), ZPoly::from_i128(spec.min_poly()), "n = {n}, conjugate {c}");
        }
    }
}

#[test]
fn residue_degrees_sum_to_degree() {
    for n in 1..=60u64 {
        let spec = RingSpec::new(n);
        for ell in (3..=31).filter(|&l| is_prime(l)) {
            let res = residue_reduction(&spec, ell).unwrap();
            let total: usize = res.iter().map(|r| r.ramification_e() as usize * r.inertia_k()).sum();
            assert_eq!(total, spec.degree(), "n = {n}, ell = {ell}");
        }
    }
}

#[test]
fn ramified_prime_is_totally_ramified_at_prime_level() {
    // ℓ is totally ramified in Q(ζ_ℓ)⁺
    for ell in [3u64, 5, 7, 11, 13] {
        let spec = RingSpec::new(ell);
        let r = canonical_residue(&spec, ell).unwrap();
        assert_eq!(r.ramification_e() as usize, spec.degree());
        assert_eq!(r.field_size(), ell);
    }
}

fn element() -> impl Strategy<Value = RingElement> {
    (1u64..=30).prop_flat_map(|n| {
        let d = RingSpec::new(n).degree();
        prop::collection::vec(-20i128..=20, d).prop_map(move |c| RingElement::new(&RingSpec::new(n), &c))
    })
}

fn pair() -> impl Strategy<Value = (RingElement, RingElement)> {
    (1u64..=30).prop_flat_map(|n| {
        let d = RingSpec::new(n).degree();
        (
            prop::collection::vec(-20i128..=20, d),
            prop::collection::vec(-20i128..=20, d),
        )
            .prop_map(move |(a, b)| {
                let s = RingSpec::new(n);
                (RingElement::new(&s, &a), RingElement::new(&s, &b))
            })
    })
}

proptest! {
    #[test]
    fn text_round_trip(a in element()) {
        let back: RingElement = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn embedding_is_a_ring_map((a, b) in pair(), k in 2u64..=4) {
        let big = RingSpec::new(a.n() * k);
        let e = |x: &RingElement| x.embed_into_multiple(&big);
        prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
        prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
        prop_assert_eq!(e(&a).embed(a.spec()), Some(a.clone()));
    }

    #[test]
    fn numeric_embeddings_are_multiplicative((a, b) in pair()) {
        let ab = (&a * &b).embeddings_f64();
        for ((x, y), z) in a.embeddings_f64().iter().zip(b.embeddings_f64()).zip(ab) {
            prop_assert!((x * y - z).abs() < 1e-6 * (1.0 + z.abs()));
        }
    }

    #[test]
    fn reduction_respects_products((a, b) in pair(), ell in prop::sample::select(vec![3u64, 5, 7, 11])) {
        let res = canonical_residue(a.spec(), ell).unwrap();
        let lhs = res.reduce(&(&a * &b));
        let rhs = res.reduce(&a).mul(&res.reduce(&b)).rem(res.modulus());
        prop_assert_eq!(lhs, rhs);
    }
}
