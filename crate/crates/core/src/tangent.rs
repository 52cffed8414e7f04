//! Tangents as dual-number points and the Euclidean-module checks.
//!
//! A tangent on R^m is a point over k[X]/(X^2): base in the unit
//! coefficient, vector in the X coefficient. Addition and scaling are not
//! defined coordinatewise here; they are computed along the contravariant
//! routes (glue into the pair space and restrict along the diagonal; scale
//! through a free parameter and instantiate), and the coordinatewise
//! descriptions are what the law checks verify.

use crate::algebra::{same_algebra, AlgebraCtx, AlgebraError, FpAlgebra};
use crate::duality::{
    map_diagonal, map_pair_first, map_pair_second, map_scale, space_d, space_d2, space_product,
    space_r, CarveMap,
};
use crate::hom::{equalizer_analysis, AlgebraHom};
use crate::monomial::Monomial;
use crate::prolong::{alpha, instantiate_free, iota, ProlongError, WPoint};
use crate::report::Report;
use crate::sample::{random_rational, random_vector, sub_rng};
use crate::scalar::{Rational, RationalCtx, RingCtx};
use num_traits::{One, Zero};
use std::sync::OnceLock;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum TangentError {
    #[error("base has {base} coordinates, vector has {vector}")]
    Shape { base: usize, vector: usize },
    #[error("tangents sit at different base points: {left} vs {right}")]
    BaseMismatch { left: String, right: String },
    #[error("expected a point over k[X]/(X^2), found one over {0}")]
    NotTangentAlgebra(String),
    #[error(transparent)]
    Prolong(#[from] ProlongError),
}

/// A dual-number point of R^m: base plus first-order displacement.
#[derive(Clone, PartialEq, Debug)]
pub struct Tangent {
    point: WPoint<Rational>,
}

fn render_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(crate::scalar::render_rational).collect();
    format!("({})", parts.join(", "))
}

impl Tangent {
    pub fn new(base: Vec<Rational>, vector: Vec<Rational>) -> Result<Tangent, TangentError> {
        if base.len() != vector.len() {
            return Err(TangentError::Shape {
                base: base.len(),
                vector: vector.len(),
            });
        }
        let algebra = FpAlgebra::dual_numbers();
        let ctx = AlgebraCtx::rational(algebra.clone());
        let coords = base
            .into_iter()
            .zip(vector)
            .map(|(b, v)| {
                ctx.element(vec![
                    (Monomial::unit(1), b),
                    (Monomial::generator(1, 0), v),
                ])
            })
            .collect();
        Ok(Tangent {
            point: WPoint::new(algebra, coords)?,
        })
    }

    pub fn zero_at(base: Vec<Rational>) -> Tangent {
        Tangent {
            point: iota(&RationalCtx, &FpAlgebra::dual_numbers(), &base),
        }
    }

    pub fn from_wpoint(point: WPoint<Rational>) -> Result<Tangent, TangentError> {
        if !same_algebra(point.algebra(), &FpAlgebra::dual_numbers()) {
            return Err(TangentError::NotTangentAlgebra(point.algebra().to_string()));
        }
        Ok(Tangent { point })
    }

    pub fn as_wpoint(&self) -> &WPoint<Rational> {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.point.dim()
    }

    pub fn base(&self) -> Vec<Rational> {
        self.point
            .coords()
            .iter()
            .map(|c| c.coeff(&Monomial::unit(1)))
            .collect()
    }

    pub fn vector(&self) -> Vec<Rational> {
        self.point
            .coords()
            .iter()
            .map(|c| c.coeff(&Monomial::generator(1, 0)))
            .collect()
    }
}

fn diagonal_hom() -> &'static AlgebraHom {
    static HOM: OnceLock<AlgebraHom> = OnceLock::new();
    HOM.get_or_init(|| map_diagonal().dual_hom().clone())
}

fn scale_hom() -> &'static AlgebraHom {
    static HOM: OnceLock<AlgebraHom> = OnceLock::new();
    HOM.get_or_init(|| map_scale().dual_hom().clone())
}

/// Dual of `(r, d1, d2) -> (r*d1, r*d2)`: simultaneous scaling of the pair
/// space through a free parameter.
fn pair_scale_hom() -> &'static AlgebraHom {
    static HOM: OnceLock<AlgebraHom> = OnceLock::new();
    HOM.get_or_init(|| {
        let source = space_product(&space_r(1), &space_d2());
        CarveMap::parse(source, space_d2(), &["r*d1", "r*d2"])
            .expect("scaled pair coordinates satisfy the pair relations")
            .dual_hom()
            .clone()
    })
}

/// Glue a base and two vectors into a single pair-space point:
/// coefficients 1 -> p, X -> v1, Y -> v2.
fn glue_pair(base: &[Rational], v1: &[Rational], v2: &[Rational]) -> WPoint<Rational> {
    let algebra = space_d2().algebra().clone();
    let ctx = AlgebraCtx::rational(algebra.clone());
    let coords = (0..base.len())
        .map(|j| {
            ctx.element(vec![
                (Monomial::unit(2), base[j].clone()),
                (Monomial::new(vec![1, 0]), v1[j].clone()),
                (Monomial::new(vec![0, 1]), v2[j].clone()),
            ])
        })
        .collect();
    WPoint::new(algebra, coords).expect("coordinates built over the pair algebra")
}

/// Fiberwise sum: glue into the pair space, restrict along the diagonal.
pub fn tangent_add(t1: &Tangent, t2: &Tangent) -> Result<Tangent, TangentError> {
    if t1.dim() != t2.dim() {
        return Err(TangentError::Shape {
            base: t1.dim(),
            vector: t2.dim(),
        });
    }
    let (b1, b2) = (t1.base(), t2.base());
    if b1 != b2 {
        return Err(TangentError::BaseMismatch {
            left: render_vec(&b1),
            right: render_vec(&b2),
        });
    }
    let glued = glue_pair(&b1, &t1.vector(), &t2.vector());
    let summed = alpha(&RationalCtx, diagonal_hom(), &glued)?;
    Tangent::from_wpoint(summed)
}

/// Scaling: push along the free-parameter scaling hom, then instantiate the
/// parameter.
pub fn tangent_scale(r: &Rational, t: &Tangent) -> Tangent {
    let spread = alpha(&RationalCtx, scale_hom(), &t.point)
        .expect("tangent points live over the scaling hom's source");
    let point = instantiate_free(&RationalCtx, &spread, &[("Z".to_string(), r.clone())])
        .expect("Z is free in k[Z,X]/(X^2)");
    Tangent::from_wpoint(point).expect("instantiation lands back over k[X]/(X^2)")
}

/// The three-hom diagram whose equalizer encodes gluing two tangents over a
/// common base: the pair algebra embeds into the two-direction product, and
/// the two outer homs agree exactly on its image.
pub fn pair_equalizer_homs() -> (AlgebraHom, AlgebraHom, AlgebraHom) {
    let pair = space_d2().algebra().clone();
    let square = space_d(2).algebra().clone();
    let line = FpAlgebra::dual_numbers();
    let sq_ctx = AlgebraCtx::rational(square.clone());
    let e = AlgebraHom::new(
        pair.clone(),
        square.clone(),
        vec![
            sq_ctx.generator_elem(0),
            sq_ctx.monomial_elem(Monomial::new(vec![1, 1])),
        ],
    )
    .expect("X -> X1, Y -> X1*X2 kills all pair relations");
    let line_ctx = AlgebraCtx::rational(line.clone());
    let f = AlgebraHom::new(
        square.clone(),
        line.clone(),
        vec![line_ctx.zero(), line_ctx.zero()],
    )
    .expect("zero images are always valid");
    let g = AlgebraHom::new(
        square,
        line,
        vec![line_ctx.zero(), line_ctx.generator_elem(0)],
    )
    .expect("X1 -> 0, X2 -> X kills both squares");
    (e, f, g)
}

/// Theorem-level module laws for tangents on R^m, each on `trials` random
/// instances with exact arithmetic.
pub fn tangent_module_check(m: usize, trials: usize, seed: u64) -> Report {
    let mut report = Report::new(format!("tangent_module(m={m})"), seed);
    let sum = |a: &Tangent, b: &Tangent| tangent_add(a, b).expect("same base by construction");

    let mut check = |id: &str, anchor: &str, f: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> Option<String>| {
        let mut rng = sub_rng(seed, id);
        let mut witness = None;
        for _ in 0..trials {
            if let Some(w) = f(&mut rng) {
                witness = Some(w);
                break;
            }
        }
        match witness {
            None => report.pass(id, anchor, format!("m={m}, {trials} random instances")),
            Some(w) => report.fail(id, anchor, format!("m={m}, {trials} random instances"), w),
        }
    };

    check(
        "tangent.add.commutative",
        "t1 + t2 = t2 + t1",
        &mut |rng| {
            let p = random_vector(rng, m);
            let t1 = Tangent::new(p.clone(), random_vector(rng, m)).unwrap();
            let t2 = Tangent::new(p, random_vector(rng, m)).unwrap();
            (sum(&t1, &t2) != sum(&t2, &t1)).then(|| format!("t1={:?}", t1.vector()))
        },
    );
    check(
        "tangent.add.associative",
        "(t1 + t2) + t3 = t1 + (t2 + t3)",
        &mut |rng| {
            let p = random_vector(rng, m);
            let t1 = Tangent::new(p.clone(), random_vector(rng, m)).unwrap();
            let t2 = Tangent::new(p.clone(), random_vector(rng, m)).unwrap();
            let t3 = Tangent::new(p, random_vector(rng, m)).unwrap();
            (sum(&sum(&t1, &t2), &t3) != sum(&t1, &sum(&t2, &t3)))
                .then(|| format!("t1={:?}", t1.vector()))
        },
    );
    check("tangent.add.zero", "t + 0 = t", &mut |rng| {
        let p = random_vector(rng, m);
        let t = Tangent::new(p.clone(), random_vector(rng, m)).unwrap();
        (sum(&t, &Tangent::zero_at(p)) != t).then(|| format!("t={:?}", t.vector()))
    });
    check("tangent.scale.one", "1·t = t", &mut |rng| {
        let t = Tangent::new(random_vector(rng, m), random_vector(rng, m)).unwrap();
        (tangent_scale(&Rational::one(), &t) != t).then(|| format!("t={:?}", t.vector()))
    });
    check("tangent.scale.zero", "0·t = 0 at the same base", &mut |rng| {
        let t = Tangent::new(random_vector(rng, m), random_vector(rng, m)).unwrap();
        (tangent_scale(&Rational::zero(), &t) != Tangent::zero_at(t.base()))
            .then(|| format!("t={:?}", t.vector()))
    });
    check(
        "tangent.scale.associative",
        "r·(s·t) = (r·s)·t",
        &mut |rng| {
            let (r, s) = (random_rational(rng), random_rational(rng));
            let t = Tangent::new(random_vector(rng, m), random_vector(rng, m)).unwrap();
            (tangent_scale(&r, &tangent_scale(&s, &t)) != tangent_scale(&(&r * &s), &t))
                .then(|| format!("r={r}, s={s}"))
        },
    );
    check(
        "tangent.scale.distributes_add",
        "r·(t1 + t2) = r·t1 + r·t2",
        &mut |rng| {
            let r = random_rational(rng);
            let p = random_vector(rng, m);
            let t1 = Tangent::new(p.clone(), random_vector(rng, m)).unwrap();
            let t2 = Tangent::new(p, random_vector(rng, m)).unwrap();
            (tangent_scale(&r, &sum(&t1, &t2))
                != sum(&tangent_scale(&r, &t1), &tangent_scale(&r, &t2)))
            .then(|| format!("r={r}"))
        },
    );
    check(
        "tangent.scale.distributes_scalar",
        "(r + s)·t = r·t + s·t",
        &mut |rng| {
            let (r, s) = (random_rational(rng), random_rational(rng));
            let t = Tangent::new(random_vector(rng, m), random_vector(rng, m)).unwrap();
            (tangent_scale(&(&r + &s), &t)
                != sum(&tangent_scale(&r, &t), &tangent_scale(&s, &t)))
            .then(|| format!("r={r}, s={s}"))
        },
    );
    check(
        "tangent.square.diagonal_scaling",
        "scaling commutes with the diagonal restriction",
        &mut |rng| {
            // Route A: glue, restrict along the diagonal, then scale.
            // Route B: scale both directions in the pair space, then
            // restrict. The commuting square in the module-structure proof.
            let r = random_rational(rng);
            let p = random_vector(rng, m);
            let (v1, v2) = (random_vector(rng, m), random_vector(rng, m));
            let glued = glue_pair(&p, &v1, &v2);
            let a = tangent_scale(
                &r,
                &Tangent::from_wpoint(alpha(&RationalCtx, diagonal_hom(), &glued).unwrap())
                    .unwrap(),
            );
            let spread = alpha(&RationalCtx, pair_scale_hom(), &glued).unwrap();
            let scaled_pair =
                instantiate_free(&RationalCtx, &spread, &[("Z".to_string(), r.clone())]).unwrap();
            let b = Tangent::from_wpoint(
                alpha(&RationalCtx, diagonal_hom(), &scaled_pair).unwrap(),
            )
            .unwrap();
            (a != b).then(|| format!("r={r}, p={}", render_vec(&p)))
        },
    );
    report
}

/// The transpose of `(a, b) -> a + r·b` as a family over the free line,
/// restricted along the inclusion of the infinitesimal line.
pub fn pair_to_tangent(a: &[Rational], b: &[Rational]) -> Tangent {
    static RESTRICT: OnceLock<AlgebraHom> = OnceLock::new();
    let restrict = RESTRICT.get_or_init(|| {
        CarveMap::parse(space_d(1), space_r(1), &["d"])
            .expect("the infinitesimal line includes into the free line")
            .dual_hom()
            .clone()
    });
    let line = space_r(1).algebra().clone();
    let ctx = AlgebraCtx::rational(line.clone());
    let coords = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| {
            ctx.element(vec![
                (Monomial::unit(1), ai.clone()),
                (Monomial::generator(1, 0), bi.clone()),
            ])
        })
        .collect();
    let family = WPoint::new(line, coords).expect("family built over the free line");
    let restricted = alpha(&RationalCtx, restrict, &family).expect("family is over k[Z]");
    Tangent::from_wpoint(restricted).expect("restriction lands over k[X]/(X^2)")
}

/// Read a tangent back as the coefficient pair.
pub fn tangent_to_pair(t: &Tangent) -> (Vec<Rational>, Vec<Rational>) {
    (t.base(), t.vector())
}

/// Checks that `(a, b) -> a + b·d` is a module isomorphism E x E -> E⊗W_D
/// for E = R^m: exact round trips and transported operations.
pub fn euclidean_check(m: usize, trials: usize, seed: u64) -> Report {
    let mut report = Report::new(format!("euclidean(m={m})"), seed);

    let id = "euclidean.pair_to_tangent.round_trip";
    let mut rng = sub_rng(seed, id);
    let mut witness = None;
    for _ in 0..trials {
        let (a, b) = (random_vector(&mut rng, m), random_vector(&mut rng, m));
        let t = pair_to_tangent(&a, &b);
        let (a2, b2) = tangent_to_pair(&t);
        if a2 != a || b2 != b {
            witness = Some(format!("a={}, b={}", render_vec(&a), render_vec(&b)));
            break;
        }
        let back = pair_to_tangent(&a2, &b2);
        if back != t {
            witness = Some(format!("tangent at {}", render_vec(&a)));
            break;
        }
    }
    match witness {
        None => report.pass(
            id,
            "(a,b) -> a + b·d is bijective with coefficient reads as inverse",
            format!("m={m}, {trials} random pairs"),
        ),
        Some(w) => report.fail(
            id,
            "(a,b) -> a + b·d is bijective with coefficient reads as inverse",
            format!("m={m}, {trials} random pairs"),
            w,
        ),
    }

    let id = "euclidean.transport.add";
    let mut rng = sub_rng(seed, id);
    let mut witness = None;
    for _ in 0..trials {
        let a = random_vector(&mut rng, m);
        let (b1, b2) = (random_vector(&mut rng, m), random_vector(&mut rng, m));
        let lhs = tangent_add(&pair_to_tangent(&a, &b1), &pair_to_tangent(&a, &b2)).unwrap();
        let pointwise: Vec<Rational> = b1.iter().zip(&b2).map(|(x, y)| x + y).collect();
        if lhs != pair_to_tangent(&a, &pointwise) {
            witness = Some(format!("a={}", render_vec(&a)));
            break;
        }
    }
    match witness {
        None => report.pass(
            id,
            "transported addition is coordinatewise vector addition",
            format!("m={m}, {trials} random pairs"),
        ),
        Some(w) => report.fail(
            id,
            "transported addition is coordinatewise vector addition",
            format!("m={m}, {trials} random pairs"),
            w,
        ),
    }

    let id = "euclidean.transport.scale";
    let mut rng = sub_rng(seed, id);
    let mut witness = None;
    for _ in 0..trials {
        let r = random_rational(&mut rng);
        let (a, b) = (random_vector(&mut rng, m), random_vector(&mut rng, m));
        let lhs = tangent_scale(&r, &pair_to_tangent(&a, &b));
        let pointwise: Vec<Rational> = b.iter().map(|x| x * &r).collect();
        if lhs != pair_to_tangent(&a, &pointwise) {
            witness = Some(format!("r={r}, a={}", render_vec(&a)));
            break;
        }
    }
    match witness {
        None => report.pass(
            id,
            "transported scaling is coordinatewise vector scaling",
            format!("m={m}, {trials} random pairs"),
        ),
        Some(w) => report.fail(
            id,
            "transported scaling is coordinatewise vector scaling",
            format!("m={m}, {trials} random pairs"),
            w,
        ),
    }

    report
}

/// Prop-level transport: the module R^m ⊗ W is Euclidean with the derived
/// coefficientwise structure. Flattens along the basis and reruns the
/// Euclidean checks in dimension m·dim(W).
pub fn euclidean_tensor_check(
    m: usize,
    w: &crate::algebra::Algebra,
    trials: usize,
    seed: u64,
) -> Result<Report, AlgebraError> {
    let d = w.dimension()?;
    let mut report = Report::new(format!("euclidean_tensor(m={m}, W={w})"), seed);

    let id = "euclidean.tensor.flatten_linear";
    let basis = w.weil_basis()?;
    let ctx = AlgebraCtx::rational(w.clone());
    let mut rng = sub_rng(seed, id);
    let mut witness = None;
    for _ in 0..trials {
        let x: Vec<_> = (0..m)
            .map(|_| crate::sample::random_element(&mut rng, w))
            .collect();
        let y: Vec<_> = (0..m)
            .map(|_| crate::sample::random_element(&mut rng, w))
            .collect();
        let r = random_rational(&mut rng);
        let flat = |v: &[crate::algebra::AlgElement<Rational>]| -> Vec<Rational> {
            v.iter()
                .flat_map(|e| basis.iter().map(|mono| ctx.coeff(e, mono)))
                .collect()
        };
        let summed: Vec<_> = x.iter().zip(&y).map(|(a, b)| ctx.add(a, b)).collect();
        let lhs_add = flat(&summed);
        let rhs_add: Vec<Rational> = flat(&x)
            .into_iter()
            .zip(flat(&y))
            .map(|(a, b)| a + b)
            .collect();
        let scaled: Vec<_> = x.iter().map(|a| ctx.scale(&r, a)).collect();
        let lhs_scale = flat(&scaled);
        let rhs_scale: Vec<Rational> = flat(&x).into_iter().map(|a| a * &r).collect();
        if lhs_add != rhs_add || lhs_scale != rhs_scale {
            witness = Some(format!("r={r}"));
            break;
        }
    }
    match witness {
        None => report.pass(
            id,
            "basis flattening R^m⊗W = R^(m·dim W) preserves the module operations",
            format!("m={m}, dim W={d}, {trials} random elements"),
        ),
        Some(wit) => report.fail(
            id,
            "basis flattening R^m⊗W = R^(m·dim W) preserves the module operations",
            format!("m={m}, dim W={d}, {trials} random elements"),
            wit,
        ),
    }

    report.absorb(euclidean_check(m * d, trials, seed));
    Ok(report)
}

/// The fibered-product identification for pair-space points: restriction
/// along the two inclusions is a bijection onto pairs of tangents over a
/// common base, and the underlying three-hom diagram is a limit.
pub fn fibered_tangent_check(m: usize, trials: usize, seed: u64) -> Report {
    let mut report = Report::new(format!("fibered_tangent(m={m})"), seed);
    let leg1 = map_pair_first().dual_hom().clone();
    let leg2 = map_pair_second().dual_hom().clone();

    let id = "fibered.round_trip";
    let mut rng = sub_rng(seed, id);
    let mut witness = None;
    for _ in 0..trials {
        let p = random_vector(&mut rng, m);
        let (v1, v2) = (random_vector(&mut rng, m), random_vector(&mut rng, m));
        let glued = glue_pair(&p, &v1, &v2);
        let t1 = Tangent::from_wpoint(alpha(&RationalCtx, &leg1, &glued).unwrap()).unwrap();
        let t2 = Tangent::from_wpoint(alpha(&RationalCtx, &leg2, &glued).unwrap()).unwrap();
        if t1.base() != p || t2.base() != p || t1.vector() != v1 || t2.vector() != v2 {
            witness = Some(format!("p={}", render_vec(&p)));
            break;
        }
        if glue_pair(&t1.base(), &t1.vector(), &t2.vector()) != glued {
            witness = Some(format!("p={}", render_vec(&p)));
            break;
        }
    }
    match witness {
        None => report.pass(
            id,
            "pair-space points = pairs of tangents over a common base",
            format!("m={m}, {trials} random points"),
        ),
        Some(w) => report.fail(
            id,
            "pair-space points = pairs of tangents over a common base",
            format!("m={m}, {trials} random points"),
            w,
        ),
    }

    let id = "fibered.zero_section";
    let mut rng = sub_rng(seed, id);
    let mut witness = None;
    for _ in 0..trials {
        let p = random_vector(&mut rng, m);
        let glued = iota(&RationalCtx, space_d2().algebra(), &p);
        let t1 = Tangent::from_wpoint(alpha(&RationalCtx, &leg1, &glued).unwrap()).unwrap();
        let t2 = Tangent::from_wpoint(alpha(&RationalCtx, &leg2, &glued).unwrap()).unwrap();
        if t1 != Tangent::zero_at(p.clone()) || t2 != Tangent::zero_at(p.clone()) {
            witness = Some(format!("p={}", render_vec(&p)));
            break;
        }
    }
    match witness {
        None => report.pass(
            id,
            "the zero section restricts to two zero tangents",
            format!("m={m}, {trials} random base points"),
        ),
        Some(w) => report.fail(
            id,
            "the zero section restricts to two zero tangents",
            format!("m={m}, {trials} random base points"),
            w,
        ),
    }

    let id = "fibered.equalizer";
    let (e, f, g) = pair_equalizer_homs();
    match equalizer_analysis(&f, &g, &e) {
        Ok(analysis) => {
            let ok = analysis.holds() && analysis.equalizer_dim == 3;
            report.record(
                id,
                "the pair algebra equalizes the two collapse homs (dimension 3)",
                "exact rational linear algebra",
                ok,
                Some(format!("{analysis:?}")),
            );
        }
        Err(err) => report.fail(
            id,
            "the pair algebra equalizes the two collapse homs (dimension 3)",
            "exact rational linear algebra",
            err.to_string(),
        ),
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn addition_follows_the_diagonal_route() {
        let p = vec![int(1), int(2), int(3)];
        let t1 = Tangent::new(p.clone(), vec![int(1), int(0), rat(1, 2)]).unwrap();
        let t2 = Tangent::new(p.clone(), vec![int(2), int(5), rat(1, 2)]).unwrap();
        let s = tangent_add(&t1, &t2).unwrap();
        assert_eq!(s.base(), p);
        assert_eq!(s.vector(), vec![int(3), int(5), int(1)]);
    }

    #[test]
    fn adding_the_zero_tangent_is_identity() {
        let t = Tangent::new(vec![int(4)], vec![rat(-3, 2)]).unwrap();
        let z = Tangent::zero_at(vec![int(4)]);
        assert_eq!(tangent_add(&t, &z).unwrap(), t);
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let t1 = Tangent::new(vec![int(0)], vec![int(1)]).unwrap();
        let t2 = Tangent::new(vec![int(1)], vec![int(1)]).unwrap();
        match tangent_add(&t1, &t2).unwrap_err() {
            TangentError::BaseMismatch { left, right } => {
                assert_eq!(left, "(0)");
                assert_eq!(right, "(1)");
            }
            other => panic!("expected base mismatch, got {other:?}"),
        }
    }

    #[test]
    fn scaling_multiplies_the_vector_only() {
        let t = Tangent::new(vec![int(2), int(3)], vec![int(4), rat(1, 3)]).unwrap();
        let s = tangent_scale(&rat(3, 2), &t);
        assert_eq!(s.base(), vec![int(2), int(3)]);
        assert_eq!(s.vector(), vec![int(6), rat(1, 2)]);
        assert_eq!(tangent_scale(&Rational::zero(), &t), Tangent::zero_at(t.base()));
    }

    #[test]
    fn module_laws_hold_on_small_runs() {
        let report = tangent_module_check(2, 25, 7);
        assert!(report.all_passed(), "{}", report.render_text());
    }

    #[test]
    fn euclidean_bijection_m1_explicit() {
        let t = pair_to_tangent(&[int(5)], &[rat(2, 3)]);
        assert_eq!(t.base(), vec![int(5)]);
        assert_eq!(t.vector(), vec![rat(2, 3)]);
        let report = euclidean_check(1, 25, 3);
        assert!(report.all_passed(), "{}", report.render_text());
        // The empty module passes too: both sides are singletons.
        assert!(euclidean_check(0, 5, 3).all_passed());
    }

    #[test]
    fn tensor_check_covers_the_pair_algebra() {
        let report = euclidean_tensor_check(2, space_d2().algebra(), 10, 9).unwrap();
        assert!(report.all_passed(), "{}", report.render_text());
        let free = FpAlgebra::free(&["Z"]).unwrap();
        assert!(euclidean_tensor_check(1, &free, 5, 9).is_err());
    }

    #[test]
    fn fibered_product_identification_holds() {
        let report = fibered_tangent_check(1, 25, 11);
        assert!(report.all_passed(), "{}", report.render_text());
    }
}
