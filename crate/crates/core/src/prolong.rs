//! Points with algebra-element coordinates and the prolongation functor.
//!
//! A `WPoint` is an m-tuple of elements of one algebra A: a point of R^m
//! whose coordinates carry nilpotent (and possibly free) displacements.
//! Prolonging a smooth map means evaluating its body on those coordinates,
//! which is exact for polynomial bodies over rationals and truncated-Taylor
//! for transcendental bodies over floats. Everything here is generic in the
//! scalar context so points can nest: a WPoint whose scalars are themselves
//! algebra elements encodes a prolongation of a prolongation, and
//! [`flatten`] / [`unflatten`] convert that nesting to a single point over
//! the tensor algebra and back.

use crate::algebra::{same_algebra, AlgElement, Algebra, AlgebraCtx, AlgebraError, FpAlgebra};
use crate::expr::SmoothMap;
use crate::hom::{AlgebraHom, HomError};
use crate::monomial::Monomial;
use crate::scalar::{EvalError, Rational, RationalCtx, RingCtx};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum ProlongError {
    #[error("map takes {expected} coordinates, point has {got}")]
    Dimension { expected: usize, got: usize },
    #[error("point lives over {found}, expected {expected}")]
    PointAlgebra { found: String, expected: String },
    #[error("nested coefficient lives over {found}, expected {expected}")]
    NestingMismatch { found: String, expected: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// An m-tuple of elements of one algebra: a point of R^m spread out over the
/// algebra's displacements.
#[derive(Clone, PartialEq, Debug)]
pub struct WPoint<T> {
    algebra: Algebra,
    coords: Vec<AlgElement<T>>,
}

impl<T: Clone + PartialEq + fmt::Debug> WPoint<T> {
    pub fn new(algebra: Algebra, coords: Vec<AlgElement<T>>) -> Result<WPoint<T>, ProlongError> {
        for c in &coords {
            if !same_algebra(c.algebra(), &algebra) {
                return Err(ProlongError::PointAlgebra {
                    found: c.algebra().to_string(),
                    expected: algebra.to_string(),
                });
            }
        }
        Ok(WPoint { algebra, coords })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[AlgElement<T>] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for WPoint<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Evaluate `f` on the point's coordinates inside the algebra: the action of
/// the prolongation functor on points.
pub fn prolong<C: RingCtx>(
    base: &C,
    f: &SmoothMap,
    p: &WPoint<C::Elem>,
) -> Result<WPoint<C::Elem>, ProlongError> {
    if f.domain() != p.dim() {
        return Err(ProlongError::Dimension {
            expected: f.domain(),
            got: p.dim(),
        });
    }
    let ctx = AlgebraCtx::new(p.algebra.clone(), base.clone());
    let coords = f.eval_in(&ctx, p.coords())?;
    WPoint::new(p.algebra.clone(), coords)
}

pub fn prolong_rational(
    f: &SmoothMap,
    p: &WPoint<Rational>,
) -> Result<WPoint<Rational>, ProlongError> {
    prolong(&RationalCtx, f, p)
}

/// Push a point along an algebra hom, coordinate by coordinate. Natural in
/// the point: it commutes with [`prolong`].
pub fn alpha<C: RingCtx>(
    base: &C,
    phi: &AlgebraHom,
    p: &WPoint<C::Elem>,
) -> Result<WPoint<C::Elem>, ProlongError> {
    if !same_algebra(&p.algebra, phi.source()) {
        return Err(ProlongError::PointAlgebra {
            found: p.algebra.to_string(),
            expected: phi.source().to_string(),
        });
    }
    let coords = p.coords.iter().map(|c| phi.apply_in(base, c)).collect();
    WPoint::new(phi.target().clone(), coords)
}

/// The base point: unit-monomial coefficient of every coordinate. Equals
/// pushing along the augmentation.
pub fn tau<C: RingCtx>(base: &C, p: &WPoint<C::Elem>) -> Vec<C::Elem> {
    let ctx = AlgebraCtx::new(p.algebra.clone(), base.clone());
    p.coords.iter().map(|c| ctx.unit_coeff(c)).collect()
}

/// Embed an ordinary point with zero displacement in every direction.
pub fn iota<C: RingCtx>(base: &C, algebra: &Algebra, values: &[C::Elem]) -> WPoint<C::Elem> {
    let ctx = AlgebraCtx::new(algebra.clone(), base.clone());
    WPoint {
        algebra: algebra.clone(),
        coords: values.iter().map(|v| ctx.scalar_elem(v.clone())).collect(),
    }
}

/// Collapse a nested point (coordinates over `outer`, coefficients over
/// `inner`) to a point over `tensor(outer, inner)` by pairing monomials.
pub fn flatten<C: RingCtx>(
    base: &C,
    p: &WPoint<AlgElement<C::Elem>>,
    inner: &Algebra,
) -> Result<WPoint<C::Elem>, ProlongError> {
    let outer = &p.algebra;
    let flat = FpAlgebra::tensor(outer, inner);
    let ctx = AlgebraCtx::new(flat.clone(), base.clone());
    let mut coords = Vec::with_capacity(p.dim());
    for coord in &p.coords {
        let mut terms: Vec<(Monomial, C::Elem)> = Vec::new();
        for (mo, inner_elem) in coord.coeffs() {
            if !same_algebra(inner_elem.algebra(), inner) {
                return Err(ProlongError::NestingMismatch {
                    found: inner_elem.algebra().to_string(),
                    expected: inner.to_string(),
                });
            }
            for (mi, c) in inner_elem.coeffs() {
                let mut e = mo.exponents().to_vec();
                e.extend_from_slice(mi.exponents());
                terms.push((Monomial::new(e), c.clone()));
            }
        }
        coords.push(ctx.element(terms));
    }
    WPoint::new(flat, coords)
}

/// Inverse of [`flatten`]: split tensor monomials back into an outer point
/// with inner coefficients.
pub fn unflatten<C: RingCtx>(
    base: &C,
    p: &WPoint<C::Elem>,
    outer: &Algebra,
    inner: &Algebra,
) -> Result<WPoint<AlgElement<C::Elem>>, ProlongError> {
    let flat = FpAlgebra::tensor(outer, inner);
    if !same_algebra(&p.algebra, &flat) {
        return Err(ProlongError::NestingMismatch {
            found: p.algebra.to_string(),
            expected: flat.to_string(),
        });
    }
    let split = outer.generator_count();
    let inner_ctx = AlgebraCtx::new(inner.clone(), base.clone());
    let outer_ctx = AlgebraCtx::new(outer.clone(), inner_ctx.clone());
    let mut coords = Vec::with_capacity(p.dim());
    for coord in &p.coords {
        let mut grouped: BTreeMap<Monomial, Vec<(Monomial, C::Elem)>> = BTreeMap::new();
        for (m, c) in coord.coeffs() {
            let mo = Monomial::new(m.exponents()[..split].to_vec());
            let mi = Monomial::new(m.exponents()[split..].to_vec());
            grouped.entry(mo).or_default().push((mi, c.clone()));
        }
        let terms: Vec<(Monomial, AlgElement<C::Elem>)> = grouped
            .into_iter()
            .map(|(mo, inner_terms)| (mo, inner_ctx.element(inner_terms)))
            .collect();
        coords.push(outer_ctx.element(terms));
    }
    WPoint::new(outer.clone(), coords)
}

/// Substitute scalars for free generators; the resulting point lives over
/// the algebra with those generators removed. Only generators untouched by
/// every relation can be instantiated.
pub fn instantiate_free<C: RingCtx>(
    base: &C,
    p: &WPoint<C::Elem>,
    values: &[(String, C::Elem)],
) -> Result<WPoint<C::Elem>, ProlongError> {
    let mut current = p.clone();
    for (name, value) in values {
        let idx = current.algebra.generator_index(name)?;
        let smaller = current.algebra.remove_generator(idx)?;
        let ctx = AlgebraCtx::new(smaller.clone(), base.clone());
        let coords = current
            .coords
            .iter()
            .map(|coord| {
                let terms: Vec<(Monomial, C::Elem)> = coord
                    .coeffs()
                    .iter()
                    .map(|(m, c)| {
                        let e = m.exponent(idx);
                        let mut exps = m.exponents().to_vec();
                        exps.remove(idx);
                        let scaled = if e == 0 {
                            c.clone()
                        } else {
                            base.mul(c, &base.pow(value, e))
                        };
                        (Monomial::new(exps), scaled)
                    })
                    .collect();
                ctx.element(terms)
            })
            .collect();
        current = WPoint {
            algebra: smaller,
            coords,
        };
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::map_scale;
    use crate::scalar::{int, FloatCtx};

    fn dual_point(a: i64, b: i64) -> WPoint<Rational> {
        let alg = FpAlgebra::dual_numbers();
        let ctx = AlgebraCtx::rational(alg.clone());
        let x = ctx.generator_elem(0);
        let coord = ctx.add(
            &ctx.scalar_elem(int(a)),
            &ctx.mul(&ctx.scalar_elem(int(b)), &x),
        );
        WPoint::new(alg, vec![coord]).unwrap()
    }

    #[test]
    fn squaring_spreads_to_first_order() {
        let f = SmoothMap::parse(1, &["x1^2"]).unwrap();
        let q = prolong_rational(&f, &dual_point(3, 5)).unwrap();
        assert_eq!(q.to_string(), "(9 + 30*X)");
    }

    #[test]
    fn cube_truncates_at_third_order() {
        let alg = FpAlgebra::new(
            vec!["X".to_string()],
            vec![Monomial::new(vec![3])],
        )
        .unwrap();
        let ctx = AlgebraCtx::rational(alg.clone());
        let coord = ctx.add(&ctx.scalar_elem(int(2)), &ctx.generator_elem(0));
        let p = WPoint::new(alg, vec![coord]).unwrap();
        let f = SmoothMap::parse(1, &["x1^3"]).unwrap();
        let q = prolong_rational(&f, &p).unwrap();
        assert_eq!(q.to_string(), "(8 + 12*X + 6*X^2)");
    }

    #[test]
    fn identity_map_fixes_points() {
        let p = dual_point(3, 5);
        let q = prolong_rational(&SmoothMap::identity(1), &p).unwrap();
        assert_eq!(q, p);
        let err = prolong_rational(&SmoothMap::identity(2), &p).unwrap_err();
        assert_eq!(
            err,
            ProlongError::Dimension {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn augmentation_reads_the_base_point() {
        let p = dual_point(3, 5);
        assert_eq!(tau(&RationalCtx, &p), vec![int(3)]);
        let aug = AlgebraHom::augmentation(p.algebra());
        let collapsed = alpha(&RationalCtx, &aug, &p).unwrap();
        assert_eq!(tau(&RationalCtx, &collapsed), vec![int(3)]);
        assert!(collapsed.coords()[0].degree().unwrap_or(0) == 0);

        let back = iota(&RationalCtx, p.algebra(), &tau(&RationalCtx, &p));
        assert_eq!(tau(&RationalCtx, &back), vec![int(3)]);
    }

    #[test]
    fn alpha_commutes_with_prolongation() {
        // Scaling hom X -> Z*X, squaring map: both orders reach 9 + 30*Z*X.
        let phi = map_scale().dual_hom().clone();
        let p = dual_point(3, 5);
        let f = SmoothMap::parse(1, &["x1^2"]).unwrap();
        let one_way = alpha(&RationalCtx, &phi, &prolong_rational(&f, &p).unwrap()).unwrap();
        let other_way = prolong_rational(&f, &alpha(&RationalCtx, &phi, &p).unwrap()).unwrap();
        assert_eq!(one_way, other_way);
        assert_eq!(one_way.to_string(), "(9 + 30*Z*X)");
    }

    #[test]
    fn flatten_pairs_monomials() {
        // Nested dual numbers: (1 + 2*Xi) + (3 + 4*Xi)*Xo.
        let outer = FpAlgebra::dual_numbers();
        let inner = FpAlgebra::dual_numbers();
        let ictx = AlgebraCtx::rational(inner.clone());
        let a = ictx.element(vec![
            (Monomial::unit(1), int(1)),
            (Monomial::generator(1, 0), int(2)),
        ]);
        let b = ictx.element(vec![
            (Monomial::unit(1), int(3)),
            (Monomial::generator(1, 0), int(4)),
        ]);
        let octx = AlgebraCtx::new(outer.clone(), ictx.clone());
        let coord = octx.element(vec![
            (Monomial::unit(1), a),
            (Monomial::generator(1, 0), b),
        ]);
        let p = WPoint::new(outer.clone(), vec![coord]).unwrap();

        let flat = flatten(&RationalCtx, &p, &inner).unwrap();
        assert_eq!(flat.algebra().to_string(), "k[X@1,X@2]/(X@1^2, X@2^2)");
        assert_eq!(flat.to_string(), "(1 + 3*X@1 + 2*X@2 + 4*X@1*X@2)");

        let back = unflatten(&RationalCtx, &flat, &outer, &inner).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn instantiating_a_free_generator_shrinks_the_algebra() {
        // 1 + 3*Z*X over k[Z,X]/(X^2).
        let alg = FpAlgebra::new(
            vec!["Z".to_string(), "X".to_string()],
            vec![Monomial::new(vec![0, 2])],
        )
        .unwrap();
        let ctx = AlgebraCtx::rational(alg.clone());
        let coord = ctx.element(vec![
            (Monomial::unit(2), int(1)),
            (Monomial::new(vec![1, 1]), int(3)),
        ]);
        let p = WPoint::new(alg, vec![coord]).unwrap();

        let at2 = instantiate_free(&RationalCtx, &p, &[("Z".to_string(), int(2))]).unwrap();
        assert_eq!(at2.algebra().to_string(), "k[X]/(X^2)");
        assert_eq!(at2.to_string(), "(1 + 6*X)");

        let at0 = instantiate_free(&RationalCtx, &p, &[("Z".to_string(), int(0))]).unwrap();
        assert_eq!(at0.to_string(), "(1)");

        let err = instantiate_free(&RationalCtx, &p, &[("X".to_string(), int(1))]).unwrap_err();
        assert!(matches!(
            err,
            ProlongError::Algebra(AlgebraError::GeneratorInRelations(_))
        ));
    }

    #[test]
    fn triple_nesting_flattens_associatively() {
        // One coordinate over three stacked dual-number layers, flattened
        // outer-first and inner-first; the exponent layout must agree.
        let d = FpAlgebra::dual_numbers;
        let c0 = AlgebraCtx::rational(d());
        let c1 = AlgebraCtx::new(d(), c0.clone());
        let inner = c0.element(vec![
            (Monomial::unit(1), int(1)),
            (Monomial::generator(1, 0), int(2)),
        ]);
        let inner2 = c0.element(vec![
            (Monomial::unit(1), int(3)),
            (Monomial::generator(1, 0), int(4)),
        ]);
        let mid = c1.element(vec![
            (Monomial::unit(1), inner),
            (Monomial::generator(1, 0), inner2),
        ]);
        let mid2 = c1.element(vec![(Monomial::generator(1, 0), c0.element(vec![
            (Monomial::unit(1), int(5)),
        ]))]);
        let c2 = AlgebraCtx::new(d(), c1.clone());
        let top = c2.element(vec![
            (Monomial::unit(1), mid),
            (Monomial::generator(1, 0), mid2),
        ]);
        let p: WPoint<AlgElement<AlgElement<Rational>>> =
            WPoint::new(d(), vec![top]).unwrap();

        // Outer pair first: point over tensor(top, mid) with scalar coeffs,
        // then tensor with the innermost layer.
        let ctx_inner = AlgebraCtx::rational(d());
        let step1 = flatten(&ctx_inner, &p, &d()).unwrap();
        let flat_a = flatten(&RationalCtx, &step1, &d()).unwrap();

        // Inner pair first: rebuild each top-level coefficient as a point,
        // flatten it, then flatten the top layer.
        let mid_flat_alg = FpAlgebra::tensor(&d(), &d());
        let fctx = AlgebraCtx::new(mid_flat_alg.clone(), RationalCtx);
        let top_rebuilt: Vec<(Monomial, AlgElement<Rational>)> = p.coords()[0]
            .coeffs()
            .iter()
            .map(|(m, c)| {
                let as_point = WPoint::new(d(), vec![c.clone()]).unwrap();
                let flat_c = flatten(&RationalCtx, &as_point, &d()).unwrap();
                (m.clone(), flat_c.coords()[0].clone())
            })
            .collect();
        let octx = AlgebraCtx::new(d(), fctx.clone());
        let nested = octx.element(top_rebuilt);
        let q = WPoint::new(d(), vec![nested]).unwrap();
        let flat_b = flatten(&RationalCtx, &q, &mid_flat_alg).unwrap();

        let exps = |p: &WPoint<Rational>| -> BTreeMap<Vec<u32>, Rational> {
            p.coords()[0]
                .coeffs()
                .iter()
                .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
                .collect()
        };
        assert_eq!(exps(&flat_a), exps(&flat_b));
        assert_eq!(exps(&flat_a).len(), 5);
    }

    #[test]
    fn transcendental_bodies_lift_over_floats() {
        let alg = FpAlgebra::dual_numbers();
        let ctx = AlgebraCtx::new(alg.clone(), FloatCtx);
        let coord = ctx.generator_elem(0);
        let p = WPoint::new(alg, vec![coord]).unwrap();
        let f = SmoothMap::parse(1, &["exp(x1)"]).unwrap();
        let q = prolong(&FloatCtx, &f, &p).unwrap();
        // exp(0 + X) truncates to 1 + X.
        let qc = &q.coords()[0];
        let ctx2 = AlgebraCtx::new(q.algebra().clone(), FloatCtx);
        assert_eq!(ctx2.unit_coeff(qc), 1.0);
        assert_eq!(ctx2.coeff(qc, &Monomial::generator(1, 0)), 1.0);
    }
}
