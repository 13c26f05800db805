//! Randomized property tests for the exact arithmetic and polynomial layers.

use kleinian::exact::CycloNum;
use kleinian::grp::{build_group, GroupSpec};
use kleinian::klein::build_kleinian;
use kleinian::poly::{monomials_of_degree, normal_form, RingSpec, WPoly};
use proptest::prelude::*;

fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
    // sums of rational multiples of zeta_12^k cover all small conductors
    prop::collection::vec((0i64..12, -4i64..=4, 1i64..=3), 0..4).prop_map(|terms| {
        let mut acc = CycloNum::zero();
        for (k, p, q) in terms {
            acc = &acc + &(&CycloNum::zeta_pow(12, k) * &CycloNum::ratio(p, q));
        }
        acc
    })
}

fn arb_poly() -> impl Strategy<Value = WPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -5i64..=5), 0..5).prop_map(|terms| {
        let ring = RingSpec::new(&["x", "y", "z"], &[1, 1, 1]);
        WPoly::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|((a, b, c), n)| (vec![a, b, c], CycloNum::from_int(n)))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclo_field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycloNum::zero());
        prop_assert_eq!(&a * &CycloNum::one(), a.clone());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, CycloNum::one());
        }
    }

    #[test]
    fn cyclo_conjugation(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        // a * conj(a) is fixed by conjugation
        let n = a.norm_sq();
        prop_assert_eq!(n.conj(), n);
    }

    #[test]
    fn poly_ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.sub(&p), WPoly::zero(&p.ring));
    }

    #[test]
    fn homogeneous_components_sum(p in arb_poly(), q in arb_poly()) {
        // deg(st) parts recombine: sum of components equals the product
        let prod = p.mul(&q);
        let mut acc = WPoly::zero(&prod.ring);
        for d in 0..=prod.weighted_degree().unwrap_or(0) {
            acc = acc.add(&prod.homogeneous_component(d));
        }
        prop_assert_eq!(acc, prod);
    }

    #[test]
    fn normal_form_idempotent_linear(p in arb_poly(), q in arb_poly()) {
        let k = build_kleinian(&build_group(GroupSpec::parse("C3").unwrap())).unwrap();
        let ring = k.jacobian_gb.ring.clone();
        let p = p.rename(&ring);
        let q = q.rename(&ring);
        let nf = |x: &WPoly| normal_form(x, &k.jacobian_gb);
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
        prop_assert_eq!(nf(&p.add(&q)), nf(&p).add(&nf(&q)));
        // ideal members reduce to zero
        for g in &k.jacobian_gb.generators {
            prop_assert!(nf(&p.mul(g)).is_zero());
        }
    }
}

#[test]
fn invariant_bases_are_invariant() {
    for name in ["C4", "BD2", "2T"] {
        let g = build_group(GroupSpec::parse(name).unwrap());
        for d in [4u64, 6] {
            for p in g.invariant_basis(d) {
                for e in 0..g.order() {
                    assert_eq!(g.act_uv(e, &p), p, "{name} degree {d}");
                }
            }
        }
    }
}

#[test]
fn monomials_of_degree_complete() {
    let ring = RingSpec::uv();
    for d in 0..8u64 {
        let ms = monomials_of_degree(&ring, d);
        assert_eq!(ms.len() as u64, d + 1);
        for m in &ms {
            assert_eq!(ring.mono_degree(m), d);
        }
    }
}
