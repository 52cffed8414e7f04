//! Carved spaces and the contravariant dictionary into algebra homs.
//!
//! A carved space is a named coordinate tuple governed by an algebra with one
//! generator per coordinate; a coordinate is infinitesimal exactly when its
//! generator is nilpotent. Maps between carved spaces are written at the
//! coordinate level as polynomial expressions and compile, contravariantly,
//! to validated [`AlgebraHom`]s: the compile substitutes source generators
//! for source coordinates, and the hom validation is what checks that the
//! coordinate map really lands in the target space.

use crate::algebra::{Algebra, AlgebraCtx, FpAlgebra, same_algebra};
use crate::expr::{Expr, ExprError};
use crate::hom::{AlgebraHom, HomError};
use crate::monomial::Monomial;
use crate::scalar::EvalError;
use std::fmt;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum DualityError {
    #[error("expected {expected} coordinates for {algebra}, got {got}")]
    CoordinateCount {
        algebra: String,
        expected: usize,
        got: usize,
    },
    #[error("coordinate `{0}` appears twice")]
    DuplicateCoordinate(String),
    #[error("expected {expected} components (one per target coordinate), got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("component {index} (`{component}`) is not polynomial")]
    NotPolynomial { index: usize, component: String },
    #[error("component mentions `{0}`, which is not a source coordinate")]
    UnknownCoordinate(String),
    #[error("cannot compose: inner map lands in ({0}), outer map starts at ({1})")]
    NotComposable(String, String),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// A coordinate tuple carved out by an algebra, one generator per coordinate.
#[derive(Clone, PartialEq, Debug)]
pub struct CarvedSpace {
    coordinates: Vec<String>,
    algebra: Algebra,
}

impl CarvedSpace {
    pub fn new(coordinates: Vec<String>, algebra: Algebra) -> Result<CarvedSpace, DualityError> {
        if coordinates.len() != algebra.generator_count() {
            return Err(DualityError::CoordinateCount {
                algebra: algebra.to_string(),
                expected: algebra.generator_count(),
                got: coordinates.len(),
            });
        }
        for (i, c) in coordinates.iter().enumerate() {
            if coordinates[..i].contains(c) {
                return Err(DualityError::DuplicateCoordinate(c.clone()));
            }
        }
        Ok(CarvedSpace {
            coordinates,
            algebra,
        })
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coordinate_count(&self) -> usize {
        self.coordinates.len()
    }

    /// True when the governing generator is nilpotent.
    pub fn is_infinitesimal(&self, coordinate: usize) -> bool {
        self.algebra.nilpotent_flags()[coordinate]
    }
}

impl fmt::Display for CarvedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) carved by {}",
            self.coordinates.join(", "),
            self.algebra
        )
    }
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The n-fold product of first-order infinitesimals: squares vanish, mixed
/// products survive. Generators `X` / `X1..Xn`, coordinates `d` / `d1..dn`.
pub fn space_d(n: usize) -> CarvedSpace {
    let (coords, gens) = if n == 1 {
        (vec!["d".to_string()], vec!["X".to_string()])
    } else {
        (numbered("d", n), numbered("X", n))
    };
    let relations = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 2;
            Monomial::new(e)
        })
        .collect();
    let algebra = FpAlgebra::new(gens, relations).expect("generated names are valid");
    CarvedSpace {
        coordinates: coords,
        algebra,
    }
}

/// The pair space where every product of the two coordinates vanishes:
/// relations X², Y², XY.
pub fn space_d2() -> CarvedSpace {
    let algebra = FpAlgebra::new(
        vec!["X".to_string(), "Y".to_string()],
        vec![
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![0, 2]),
            Monomial::new(vec![1, 1]),
        ],
    )
    .expect("fixed names are valid");
    CarvedSpace {
        coordinates: vec!["d1".to_string(), "d2".to_string()],
        algebra,
    }
}

/// The free n-dimensional space: no relations. Generators `Z` / `Z1..Zn`,
/// coordinates `r` / `r1..rn`.
pub fn space_r(n: usize) -> CarvedSpace {
    let (coords, gens) = if n == 1 {
        (vec!["r".to_string()], vec!["Z".to_string()])
    } else {
        (numbered("r", n), numbered("Z", n))
    };
    let algebra = FpAlgebra::new(gens, Vec::new()).expect("generated names are valid");
    CarvedSpace {
        coordinates: coords,
        algebra,
    }
}

/// First name in `base, base_2, base_3, ..` not yet taken.
fn fresh_name(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    let mut i = 2usize;
    loop {
        let candidate = format!("{base}_{i}");
        if !taken.iter().any(|t| t == &candidate) {
            return candidate;
        }
        i += 1;
    }
}

/// Product of carved spaces: coordinates and generators concatenate, keeping
/// names where possible and suffixing the right factor's names on a clash.
pub fn space_product(a: &CarvedSpace, b: &CarvedSpace) -> CarvedSpace {
    let mut coords = a.coordinates.clone();
    for c in &b.coordinates {
        let name = fresh_name(c, &coords);
        coords.push(name);
    }
    let mut gens: Vec<String> = a.algebra.generator_names().to_vec();
    for g in b.algebra.generator_names() {
        let name = fresh_name(g, &gens);
        gens.push(name);
    }
    let (na, nb) = (a.algebra.generator_count(), b.algebra.generator_count());
    let mut relations = Vec::new();
    for m in a.algebra.relations() {
        let mut e = m.exponents().to_vec();
        e.extend(std::iter::repeat_n(0, nb));
        relations.push(Monomial::new(e));
    }
    for m in b.algebra.relations() {
        let mut e = vec![0u32; na];
        e.extend_from_slice(m.exponents());
        relations.push(Monomial::new(e));
    }
    let algebra = FpAlgebra::new(gens, relations).expect("freshened names stay valid");
    CarvedSpace {
        coordinates: coords,
        algebra,
    }
}

/// A coordinate-level map between carved spaces, stored with its compiled
/// contravariant dual. Construction is the validation: the dual hom exists
/// exactly when the polynomial components respect the target's relations.
#[derive(Clone, PartialEq, Debug)]
pub struct CarveMap {
    source: CarvedSpace,
    target: CarvedSpace,
    components: Vec<Expr>,
    dual: AlgebraHom,
}

impl CarveMap {
    pub fn new(
        source: CarvedSpace,
        target: CarvedSpace,
        components: Vec<Expr>,
    ) -> Result<CarveMap, DualityError> {
        if components.len() != target.coordinate_count() {
            return Err(DualityError::ComponentCount {
                expected: target.coordinate_count(),
                got: components.len(),
            });
        }
        let ctx = AlgebraCtx::rational(source.algebra.clone());
        let mut images = Vec::with_capacity(components.len());
        for (i, comp) in components.iter().enumerate() {
            if !comp.is_polynomial() {
                return Err(DualityError::NotPolynomial {
                    index: i,
                    component: comp.to_string(),
                });
            }
            let lookup = |v: &str| {
                source
                    .coordinates
                    .iter()
                    .position(|c| c == v)
                    .map(|j| ctx.generator_elem(j))
            };
            let image = comp.eval(&ctx, &lookup).map_err(|e| match e {
                EvalError::UnknownVariable(v) => DualityError::UnknownCoordinate(v),
                other => DualityError::Expr(ExprError::Eval(other)),
            })?;
            images.push(image);
        }
        let dual = AlgebraHom::new(target.algebra.clone(), source.algebra.clone(), images)?;
        Ok(CarveMap {
            source,
            target,
            components,
            dual,
        })
    }

    pub fn parse(
        source: CarvedSpace,
        target: CarvedSpace,
        components: &[&str],
    ) -> Result<CarveMap, DualityError> {
        let exprs = components
            .iter()
            .map(|s| Expr::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        CarveMap::new(source, target, exprs)
    }

    pub fn identity(space: &CarvedSpace) -> CarveMap {
        let components = space.coordinates.iter().map(|c| Expr::var(c)).collect();
        CarveMap::new(space.clone(), space.clone(), components)
            .expect("identity coordinates always compile")
    }

    pub fn source(&self) -> &CarvedSpace {
        &self.source
    }

    pub fn target(&self) -> &CarvedSpace {
        &self.target
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// The compiled hom, running opposite to the coordinate map:
    /// `W(target) -> W(source)`.
    pub fn dual_hom(&self) -> &AlgebraHom {
        &self.dual
    }

    /// `self` after `inner`, by substituting inner components for source
    /// coordinates.
    pub fn after(&self, inner: &CarveMap) -> Result<CarveMap, DualityError> {
        if inner.target.coordinates != self.source.coordinates
            || !same_algebra(inner.target.algebra(), self.source.algebra())
        {
            return Err(DualityError::NotComposable(
                inner.target.to_string(),
                self.source.to_string(),
            ));
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                c.substitute(&|v| {
                    self.source
                        .coordinates
                        .iter()
                        .position(|n| n == v)
                        .map(|i| inner.components[i].clone())
                })
            })
            .collect();
        CarveMap::new(inner.source.clone(), self.target.clone(), components)
    }
}

impl fmt::Display for CarveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "({}) -> ({})",
            self.source.coordinates.join(", "),
            parts.join(", ")
        )
    }
}

/// True when the dual of the composite equals the composite of the duals in
/// the reversed order, exactly.
pub fn dual_contravariance_check(f: &CarveMap, g: &CarveMap) -> Result<bool, DualityError> {
    let composite = g.after(f)?;
    let duals_composed = g.dual_hom().then(f.dual_hom())?;
    Ok(*composite.dual_hom() == duals_composed)
}

/// `d -> (d, d)`, the diagonal into the pair space.
pub fn map_diagonal() -> CarveMap {
    CarveMap::parse(space_d(1), space_d2(), &["d", "d"]).expect("lands in the pair space")
}

/// `d -> (d, 0)`.
pub fn map_pair_first() -> CarveMap {
    CarveMap::parse(space_d(1), space_d2(), &["d", "0"]).expect("lands in the pair space")
}

/// `d -> (0, d)`.
pub fn map_pair_second() -> CarveMap {
    CarveMap::parse(space_d(1), space_d2(), &["0", "d"]).expect("lands in the pair space")
}

/// `(r, d) -> r*d`, the scaling action on the infinitesimal line.
pub fn map_scale() -> CarveMap {
    map_direction_scale(1, 1)
}

/// Scaling of one direction of the n-fold infinitesimal product by a free
/// parameter: `(r, d1..dn) -> (d1, .., r*d_i, .., dn)` with `i` 1-based. The
/// dual sends generator i to Z·X_i and fixes the rest.
pub fn map_direction_scale(n: usize, i: usize) -> CarveMap {
    assert!(i >= 1 && i <= n, "direction out of range");
    let target = space_d(n);
    let source = space_product(&space_r(1), &target);
    let components: Vec<String> = target
        .coordinates()
        .iter()
        .enumerate()
        .map(|(u, d)| if u + 1 == i { format!("r*{d}") } else { d.clone() })
        .collect();
    let refs: Vec<&str> = components.iter().map(String::as_str).collect();
    CarveMap::parse(source, target, &refs).expect("square of r*d_i vanishes")
}

/// The coordinate permutation of the n-fold infinitesimal product whose dual
/// substitutes generator `u` by generator `perm[u]`. `perm` is 0-based and
/// must be a bijection on `0..n`.
pub fn map_permutation(perm: &[usize]) -> CarveMap {
    let n = perm.len();
    let space = space_d(n);
    let components: Vec<Expr> = perm
        .iter()
        .map(|&j| Expr::var(&space.coordinates()[j]))
        .collect();
    CarveMap::new(space.clone(), space, components).expect("permutations always compile")
}

/// The cycle on the (n+1)-fold infinitesimal product that moves the last
/// coordinate into slot `i` (1-based), shifting slots `i..n` up by one. Its
/// dual substitutes the generators along the inverse walk, which is the
/// direction every boundary computation consumes.
pub fn map_insert_cycle(n: usize, i: usize) -> CarveMap {
    assert!(i >= 1 && i <= n + 1, "slot out of range");
    let perm: Vec<usize> = (1..=n + 1)
        .map(|u| {
            if u < i {
                u - 1
            } else if u == i {
                n
            } else {
                u - 2
            }
        })
        .collect();
    map_permutation(&perm)
}

/// Every named carve map the law suites quantify over, labeled by what it
/// does. Their duals are the hom catalog for the naturality and coherence
/// checks.
pub fn map_catalog() -> Vec<(String, CarveMap)> {
    let pair_scale = CarveMap::parse(
        space_product(&space_r(1), &space_d2()),
        space_d2(),
        &["r*d1", "r*d2"],
    )
    .expect("scaling preserves the pair relations");
    let graph_mult = CarveMap::parse(space_d(2), space_d2(), &["d1", "d1*d2"])
        .expect("(d1, d1*d2) satisfies the pair relations");
    let mult = CarveMap::parse(space_d(2), space_d(1), &["d1*d2"])
        .expect("a product of square-zero elements squares to zero");
    let pair_zero = CarveMap::parse(space_d(1), space_d2(), &["0", "0"])
        .expect("the zero point satisfies every relation");
    vec![
        ("diagonal: d -> (d,d)".to_string(), map_diagonal()),
        ("first leg: d -> (d,0)".to_string(), map_pair_first()),
        ("second leg: d -> (0,d)".to_string(), map_pair_second()),
        ("zero: d -> (0,0)".to_string(), pair_zero),
        ("scale: (r,d) -> r*d".to_string(), map_scale()),
        (
            "pair scale: (r,d1,d2) -> (r*d1,r*d2)".to_string(),
            pair_scale,
        ),
        (
            "graph of multiplication: (d1,d2) -> (d1,d1*d2)".to_string(),
            graph_mult,
        ),
        ("multiplication: (d1,d2) -> d1*d2".to_string(), mult),
        (
            "swap: (d1,d2) -> (d2,d1)".to_string(),
            map_permutation(&[1, 0]),
        ),
        (
            "cycle into slot 1 of 3".to_string(),
            map_insert_cycle(2, 1),
        ),
        (
            "cycle into slot 2 of 3".to_string(),
            map_insert_cycle(2, 2),
        ),
        (
            "scale direction 1 of 2".to_string(),
            map_direction_scale(2, 1),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::HomError;

    #[test]
    fn named_spaces_have_expected_algebras() {
        assert_eq!(space_d(1).algebra().to_string(), "k[X]/(X^2)");
        assert_eq!(space_d2().algebra().to_string(), "k[X,Y]/(X^2, X*Y, Y^2)");
        assert_eq!(space_r(0).algebra().to_string(), "k");
        assert_eq!(space_r(2).algebra().to_string(), "k[Z1,Z2]");
        let prod = space_product(&space_r(2), &space_d2());
        assert_eq!(prod.algebra().to_string(), "k[Z1,Z2,X,Y]/(X^2, X*Y, Y^2)");
        assert_eq!(prod.coordinates(), &["r1", "r2", "d1", "d2"]);
        assert!(!prod.is_infinitesimal(0));
        assert!(prod.is_infinitesimal(2));
    }

    #[test]
    fn product_freshens_clashing_names() {
        let dd = space_product(&space_d(1), &space_d(1));
        assert_eq!(dd.coordinates(), &["d", "d_2"]);
        assert_eq!(dd.algebra().generator_names(), &["X", "X_2"]);
        assert_eq!(dd.algebra().to_string(), "k[X,X_2]/(X^2, X_2^2)");
    }

    #[test]
    fn scaling_map_compiles_to_generator_scaling() {
        let m = map_scale();
        let dual = m.dual_hom();
        assert_eq!(dual.source().to_string(), "k[X]/(X^2)");
        assert_eq!(dual.target().to_string(), "k[Z,X]/(X^2)");
        assert_eq!(format!("{}", dual.images()[0]), "Z*X");
    }

    #[test]
    fn diagonal_into_pair_space_is_valid() {
        // All three target relations normalize to zero through X -> X, Y -> X.
        let m = map_diagonal();
        assert_eq!(format!("{}", m.dual_hom().images()[0]), "X");
        assert_eq!(format!("{}", m.dual_hom().images()[1]), "X");
    }

    #[test]
    fn identity_map_compiles_to_identity_hom() {
        let m = CarveMap::identity(&space_d2());
        assert!(m.dual_hom().is_identity());
    }

    #[test]
    fn maps_that_miss_the_target_are_rejected() {
        // r -> r cannot land in the infinitesimal line: Z^2 is not zero.
        let err = CarveMap::parse(space_r(1), space_d(1), &["r"]).unwrap_err();
        match err {
            DualityError::Hom(HomError::RelationViolated { relation, .. }) => {
                assert_eq!(relation, "X^2");
            }
            other => panic!("expected a relation violation, got {other:?}"),
        }
    }

    #[test]
    fn composition_reverses_under_the_dual() {
        // Include, then project back: the composite is the identity.
        let f = map_pair_first();
        let g = CarveMap::parse(space_d2(), space_d(1), &["d1"]).unwrap();
        let gf = g.after(&f).unwrap();
        assert!(gf.dual_hom().is_identity());
        assert!(dual_contravariance_check(&f, &g).unwrap());

        // A non-trivial pair through the scaling map.
        let h = CarveMap::parse(space_d(1), space_product(&space_r(1), &space_d(1)), &[
            "3", "d",
        ])
        .unwrap();
        assert!(dual_contravariance_check(&h, &map_scale()).unwrap());
    }

    #[test]
    fn insert_cycle_on_the_pair_product_swaps_generators() {
        let m = map_insert_cycle(1, 1);
        assert_eq!(m.components()[0].to_string(), "d2");
        assert_eq!(m.components()[1].to_string(), "d1");
        let dual = m.dual_hom();
        assert_eq!(format!("{}", dual.images()[0]), "X2");
        assert_eq!(format!("{}", dual.images()[1]), "X1");
    }

    #[test]
    fn insert_cycle_slots_follow_the_walk() {
        // n = 2, i = 2: (d1, d2, d3) -> (d1, d3, d2).
        let m = map_insert_cycle(2, 2);
        let comps: Vec<String> = m.components().iter().map(|c| c.to_string()).collect();
        assert_eq!(comps, ["d1", "d3", "d2"]);
        // n = 2, i = 1: the last coordinate moves to the front.
        let m = map_insert_cycle(2, 1);
        let comps: Vec<String> = m.components().iter().map(|c| c.to_string()).collect();
        assert_eq!(comps, ["d3", "d1", "d2"]);
    }

    #[test]
    fn mismatched_component_counts_are_rejected() {
        let err = CarveMap::parse(space_d(1), space_d2(), &["d"]).unwrap_err();
        assert_eq!(
            err,
            DualityError::ComponentCount {
                expected: 2,
                got: 1
            }
        );
        let err = CarveMap::parse(space_d(1), space_d(1), &["q"]).unwrap_err();
        assert_eq!(err, DualityError::UnknownCoordinate("q".to_string()));
    }
}
