//! Randomized property tests over the public API: field and ring
//! axioms for the exact scalars and sparse polynomials, normal-form
//! canonicity, ring-map multiplicativity, well-definedness of
//! generalized-fraction equality under transitions, residue linearity
//! and pairing symmetry. Everything asserts exact equality.

use dualis_core::algebra::order::MonomialOrder;
use dualis_core::duality::ResidueData;
use dualis_core::local_cohomology::FractionContext;
use dualis_core::{FieldKind, Polynomial, Ring, RingMap, RingPresentation, Scalar};
use proptest::prelude::*;

fn qxy() -> Ring {
    RingPresentation::polynomial(
        FieldKind::Q,
        vec!["x".into(), "y".into()],
        MonomialOrder::DegRevLex,
    )
    .unwrap()
}

/// Strategy: a small sparse polynomial in `arity` variables.
fn poly(kind: FieldKind, arity: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..=2, arity),
            -4i64..=4,
        ),
        0..4,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero(arity);
        for (expo, c) in terms {
            p = p.add(&Polynomial::monomial(arity, expo, Scalar::from_i64(kind, c)));
        }
        p
    })
}

fn scalar(kind: FieldKind) -> impl Strategy<Value = Scalar> {
    (-20i64..=20).prop_map(move |n| Scalar::from_i64(kind, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms_q(a in scalar(FieldKind::Q), b in scalar(FieldKind::Q), c in scalar(FieldKind::Q)) {
        let kind = FieldKind::Q;
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Scalar::zero(kind));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one(kind));
        }
    }

    #[test]
    fn scalar_field_axioms_fp(a in scalar(FieldKind::Fp(101)), b in scalar(FieldKind::Fp(101))) {
        let kind = FieldKind::Fp(101);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.sub(&a), Scalar::zero(kind));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one(kind));
        }
    }

    #[test]
    fn polynomial_ring_axioms(
        p in poly(FieldKind::Q, 2),
        q in poly(FieldKind::Q, 2),
        r in poly(FieldKind::Q, 2),
    ) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.sub(&p), Polynomial::zero(2));
    }

    #[test]
    fn display_parse_round_trip(p in poly(FieldKind::Q, 2)) {
        let ring = qxy();
        let shown = ring.display(&p);
        let back = ring.parse(&shown).unwrap();
        prop_assert_eq!(p, back, "display/parse round-trip through `{}`", shown);
    }

    #[test]
    fn normal_form_is_idempotent_and_additive(
        p in poly(FieldKind::Q, 2),
        q in poly(FieldKind::Q, 2),
    ) {
        // In Q[x,y]/(x^2 - y, y^3) every class has one canonical form.
        let ring = RingPresentation::quotient_parsed(
            FieldKind::Q,
            &["x", "y"],
            MonomialOrder::DegRevLex,
            &["x^2 - y", "y^3"],
        )
        .unwrap();
        let np = ring.nf(&p);
        prop_assert_eq!(ring.nf(&np), np.clone());
        prop_assert_eq!(ring.nf(&p.add(&q)), ring.nf(&np.add(&ring.nf(&q))));
        prop_assert_eq!(ring.nf(&p.mul(&q)), ring.nf(&np.mul(&ring.nf(&q))));
    }

    #[test]
    fn ring_maps_are_homomorphisms(
        p in poly(FieldKind::Q, 1),
        q in poly(FieldKind::Q, 1),
    ) {
        // a ↦ s + 1 into the dual numbers.
        let qa = RingPresentation::polynomial(
            FieldKind::Q,
            vec!["a".into()],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let nil = RingPresentation::quotient_parsed(
            FieldKind::Q,
            &["s"],
            MonomialOrder::DegRevLex,
            &["s^2"],
        )
        .unwrap();
        let g = RingMap::new(qa, nil.clone(), vec![nil.parse("s + 1").unwrap()]).unwrap();
        prop_assert_eq!(g.apply(&p.add(&q)), nil.nf(&g.apply(&p).add(&g.apply(&q))));
        prop_assert_eq!(g.apply(&p.mul(&q)), nil.nf(&g.apply(&p).mul(&g.apply(&q))));
    }

    #[test]
    fn fraction_equality_respects_transitions(
        m in poly(FieldKind::Q, 2),
        a1 in 1u32..=2,
        a2 in 1u32..=2,
        b1 in 0u32..=2,
        b2 in 0u32..=2,
    ) {
        // [m; α] = [t^β·m; α+β] for t = (x, y): different
        // representatives of one class always compare equal, and a
        // numerator inside the level ideal is the zero class.
        let ring = qxy();
        let x = ring.var(0);
        let y = ring.var(1);
        let ctx = FractionContext::new(&ring, vec![x.clone(), y.clone()], 1).unwrap();
        let alpha = [a1, a2];
        let raised = [a1 + b1, a2 + b2];
        let shift = x.pow(b1).mul(&y.pow(b2));
        let low = ctx.fraction_poly(&m, &alpha);
        let high = ctx.fraction_poly(&m.mul(&shift), &raised);
        prop_assert!(ctx.equal(&low, &high));
        let killed = ctx.fraction_poly(&m.mul(&x.pow(a1)), &alpha);
        prop_assert!(killed.is_zero());
        // Additivity of classes.
        let split = ctx.add(&low, &low);
        let doubled = ctx.fraction_poly(&m.add(&m), &alpha);
        prop_assert!(ctx.equal(&split, &doubled));
    }

    #[test]
    fn residues_are_base_linear(
        f in poly(FieldKind::Q, 1),
        g in poly(FieldKind::Q, 1),
        c in -5i64..=5,
    ) {
        let line = RingPresentation::algebra_over_parsed(
            &RingPresentation::polynomial(FieldKind::Q, vec![], MonomialOrder::DegRevLex).unwrap(),
            &["x"],
            &[],
        )
        .unwrap();
        let rd = ResidueData::new(&line, &[line.parse("x").unwrap()], &[3]).unwrap();
        let scaled = f.mul(&line.constant_i64(c)).add(&g);
        let lhs = rd.residue(&scaled);
        let rhs = rd.residue(&f).mul(&rd.base().constant_i64(c)).add(&rd.residue(&g));
        prop_assert_eq!(lhs, rd.base().nf(&rhs));
    }

    #[test]
    fn residue_pairing_is_symmetric(n in 1u32..=3) {
        let line = RingPresentation::algebra_over_parsed(
            &RingPresentation::polynomial(FieldKind::Q, vec![], MonomialOrder::DegRevLex).unwrap(),
            &["x"],
            &[],
        )
        .unwrap();
        let rd = ResidueData::new(&line, &[line.parse("x").unwrap()], &[n]).unwrap();
        let p = rd.pairing_matrix();
        prop_assert_eq!(p.transpose(), p);
    }
}
