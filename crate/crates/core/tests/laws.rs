//! Randomized algebraic laws. The deterministic suite checks the theorems on
//! seeded samples; these properties shake the structural layer underneath
//! them (normal-form arithmetic, hom application, permutation composition)
//! with proptest-driven inputs instead.

use proptest::prelude::*;

use weilform::scalar::rat;
use weilform::{
    pair_equalizer_homs, space_d, space_d2, AlgElement, Algebra, AlgebraCtx, FpAlgebra, Microcube,
    Monomial, Permutation, Rational, RationalCtx, RingCtx,
};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(num, den)| rat(num, den))
}

/// One algebra of each shape the crate leans on: the ground field, the
/// first-order line, the pair space, the microcube square, and a relation of
/// order three. Dimensions 1, 2, 3, 4, 3.
fn algebra_pool() -> Vec<Algebra> {
    vec![
        FpAlgebra::ground(),
        FpAlgebra::dual_numbers(),
        space_d2().algebra().clone(),
        space_d(2).algebra().clone(),
        FpAlgebra::new(vec!["X".to_string()], vec![Monomial::new(vec![3])])
            .expect("a single order-three relation is a valid presentation"),
    ]
}

/// Spread the coefficients over the algebra's basis; extra coefficients fall
/// off the end, so one eight-entry strategy serves every pool member.
fn element_from(ctx: &AlgebraCtx<RationalCtx>, coeffs: &[Rational]) -> AlgElement<Rational> {
    let basis = ctx
        .algebra
        .weil_basis()
        .expect("pool algebras are finite-dimensional");
    ctx.element(basis.into_iter().zip(coeffs.iter().cloned()))
}

proptest! {
    #[test]
    fn normal_form_arithmetic_is_a_commutative_ring(
        which in 0..5usize,
        a in proptest::collection::vec(arb_rational(), 8),
        b in proptest::collection::vec(arb_rational(), 8),
        c in proptest::collection::vec(arb_rational(), 8),
    ) {
        let ctx = AlgebraCtx::rational(algebra_pool()[which].clone());
        let a = element_from(&ctx, &a);
        let b = element_from(&ctx, &b);
        let c = element_from(&ctx, &c);

        prop_assert_eq!(ctx.add(&a, &b), ctx.add(&b, &a));
        prop_assert_eq!(ctx.add(&ctx.add(&a, &b), &c), ctx.add(&a, &ctx.add(&b, &c)));
        prop_assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        prop_assert_eq!(
            ctx.mul(&a, &ctx.add(&b, &c)),
            ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c))
        );
        prop_assert_eq!(ctx.mul(&a, &ctx.one()), a.clone());
        prop_assert!(ctx.is_zero(&ctx.add(&a, &ctx.neg(&a))));
    }

    #[test]
    fn hom_application_is_a_ring_map(
        a in proptest::collection::vec(arb_rational(), 8),
        b in proptest::collection::vec(arb_rational(), 8),
        scalar in arb_rational(),
    ) {
        let (section, _, _) = pair_equalizer_homs();
        let src = AlgebraCtx::rational(section.source().clone());
        let dst = AlgebraCtx::rational(section.target().clone());
        let a = element_from(&src, &a);
        let b = element_from(&src, &b);
        let apply = |x: &AlgElement<Rational>| {
            section.apply(x).expect("the section is total on its source")
        };

        prop_assert_eq!(apply(&src.add(&a, &b)), dst.add(&apply(&a), &apply(&b)));
        prop_assert_eq!(apply(&src.mul(&a, &b)), dst.mul(&apply(&a), &apply(&b)));
        prop_assert_eq!(
            apply(&src.scale(&scalar, &a)),
            dst.scale(&scalar, &apply(&a))
        );
        prop_assert_eq!(apply(&src.one()), dst.one());
    }

    #[test]
    fn tensor_dimension_multiplies(left in 0..5usize, right in 0..5usize) {
        let pool = algebra_pool();
        let product = FpAlgebra::tensor(&pool[left], &pool[right]);
        let dim = |a: &Algebra| {
            a.weil_basis()
                .expect("pool algebras and their tensors are finite-dimensional")
                .len()
        };
        prop_assert_eq!(dim(&product), dim(&pool[left]) * dim(&pool[right]));
    }

    #[test]
    fn permutation_signs_multiply(s in 0..24usize, t in 0..24usize) {
        let group = Permutation::enumerate(4);
        let sigma = &group[s];
        let tau = &group[t];
        prop_assert_eq!(tau.after(sigma).sign(), tau.sign() * sigma.sign());
    }

    #[test]
    fn microcube_permutation_composes(
        coeffs in proptest::collection::vec(proptest::collection::vec(arb_rational(), 2), 8),
        s in 0..6usize,
        t in 0..6usize,
    ) {
        let cube = Microcube::new(3, 2, coeffs)
            .expect("eight rows of width two form a three-cube in the plane");
        let group = Permutation::enumerate(3);
        let sigma = &group[s];
        let tau = &group[t];

        let two_steps = cube
            .permute(sigma)
            .expect("sigma matches the cube's order")
            .permute(tau)
            .expect("tau matches the cube's order");
        let one_step = cube
            .permute(&tau.after(sigma))
            .expect("the composite matches the cube's order");
        prop_assert_eq!(two_steps, one_step);
    }
}
