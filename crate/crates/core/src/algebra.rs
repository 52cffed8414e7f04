//! Pointed finitely presented algebras with monomial relations.
//!
//! A presentation is an ordered generator list plus a finite set of relation
//! monomials of degree at least one. Restricting relations to monomials keeps
//! normal forms trivial: a monomial is zero in the quotient exactly when some
//! relation monomial divides it, so reduction is deletion and no completion
//! procedure is ever needed. Presentations with non-monomial relations are
//! unrepresentable here by construction; the JSON document schema rejects
//! them at parse time for the same reason.
//!
//! Elements are kept in normal form at all times: the coefficient map of an
//! [`AlgElement`] only ever contains surviving monomials with nonzero
//! coefficients. Coefficients come from an arbitrary [`RingCtx`], so elements
//! can be nested (an element whose coefficients are elements of another
//! algebra), which is how prolongation towers are evaluated.

use crate::monomial::Monomial;
use crate::scalar::{EvalError, Primitive, Rational, RationalCtx, RingCtx};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Algebra = Arc<FpAlgebra>;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("relation `1` is constant; pointed presentations need relations of degree >= 1")]
    ConstantRelation,
    #[error("`{0}` is not a valid generator name (ASCII identifier expected)")]
    BadGeneratorName(String),
    #[error("generator `{0}` appears twice")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements live in different algebras: {left} vs {right}")]
    AlgebraMismatch { left: String, right: String },
    #[error("{algebra} is not a Weil algebra: generator `{generator}` has no pure power among the relations")]
    NotWeil { algebra: String, generator: String },
    #[error("generator `{0}` cannot be removed: a relation mentions it")]
    GeneratorInRelations(String),
}

/// A pointed finitely presented algebra `k[X1..Xg] / (monomial relations)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpAlgebra {
    generators: Vec<String>,
    relations: Vec<Monomial>,
    /// Smallest pure-power exponent per generator, if any relation is one.
    pure_powers: Vec<Option<u32>>,
}

impl FpAlgebra {
    pub fn new(generators: Vec<String>, relations: Vec<Monomial>) -> Result<Algebra, AlgebraError> {
        for name in &generators {
            if !valid_generator_name(name) {
                return Err(AlgebraError::BadGeneratorName(name.clone()));
            }
        }
        Self::new_unchecked_names(generators, relations)
    }

    /// Same as [`FpAlgebra::new`] but permits internal names such as the
    /// `X@1` produced by tensor renaming, which user input may not contain.
    pub(crate) fn new_unchecked_names(
        generators: Vec<String>,
        relations: Vec<Monomial>,
    ) -> Result<Algebra, AlgebraError> {
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(AlgebraError::DuplicateGenerator(name.clone()));
            }
        }
        let mut relations = relations;
        for r in &relations {
            debug_assert_eq!(r.width(), generators.len());
            if r.is_unit() {
                return Err(AlgebraError::ConstantRelation);
            }
        }
        relations.sort();
        relations.dedup();
        let pure_powers = (0..generators.len())
            .map(|i| {
                relations
                    .iter()
                    .filter(|r| r.is_pure_power_of(i))
                    .map(|r| r.exponent(i))
                    .min()
            })
            .collect();
        Ok(Arc::new(FpAlgebra {
            generators,
            relations,
            pure_powers,
        }))
    }

    /// The ground field `k` itself: no generators, no relations.
    pub fn ground() -> Algebra {
        FpAlgebra::new(Vec::new(), Vec::new()).expect("ground field presentation")
    }

    /// Polynomial algebra on the given generators (no relations).
    pub fn free(generators: &[&str]) -> Result<Algebra, AlgebraError> {
        FpAlgebra::new(generators.iter().map(|s| s.to_string()).collect(), Vec::new())
    }

    /// `k[X]/(X^2)`, the dual numbers.
    pub fn dual_numbers() -> Algebra {
        FpAlgebra::new(
            vec!["X".to_string()],
            vec![Monomial::new(vec![2])],
        )
        .expect("dual number presentation")
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    /// Monomial survives in the quotient iff no relation divides it.
    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.relations.iter().all(|r| !m.divisible_by(r))
    }

    /// A generator is nilpotent iff some pure power of it is a relation.
    pub fn nilpotent_flags(&self) -> Vec<bool> {
        self.pure_powers.iter().map(|p| p.is_some()).collect()
    }

    /// Weil means finite dimensional: every generator nilpotent.
    pub fn is_weil(&self) -> bool {
        self.pure_powers.iter().all(|p| p.is_some())
    }

    fn require_weil(&self) -> Result<(), AlgebraError> {
        if let Some(i) = self.pure_powers.iter().position(|p| p.is_none()) {
            return Err(AlgebraError::NotWeil {
                algebra: self.to_string(),
                generator: self.generators[i].clone(),
            });
        }
        Ok(())
    }

    /// All surviving monomials in graded lexicographic order, unit first.
    pub fn weil_basis(&self) -> Result<Vec<Monomial>, AlgebraError> {
        self.require_weil()?;
        let bounds: Vec<u32> = self.pure_powers.iter().map(|p| p.unwrap()).collect();
        let mut basis = Vec::new();
        let mut current = vec![0u32; bounds.len()];
        loop {
            let m = Monomial::new(current.clone());
            if self.is_normal(&m) {
                basis.push(m);
            }
            let mut i = 0;
            loop {
                if i == bounds.len() {
                    basis.sort();
                    return Ok(basis);
                }
                current[i] += 1;
                if current[i] < bounds[i] {
                    break;
                }
                current[i] = 0;
                i += 1;
            }
        }
    }

    pub fn dimension(&self) -> Result<usize, AlgebraError> {
        Ok(self.weil_basis()?.len())
    }

    /// Smallest `N` with `n^N = 0` for every element `n` without unit part.
    pub fn nil_index(&self) -> Result<u32, AlgebraError> {
        let max_degree = self
            .weil_basis()?
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0);
        Ok(max_degree + 1)
    }

    /// Tensor product with generators renamed positionally: `X` becomes
    /// `X@1` on the left and `X@2` on the right. Relations are the union.
    pub fn tensor(left: &FpAlgebra, right: &FpAlgebra) -> Algebra {
        let lw = left.generator_count();
        let rw = right.generator_count();
        let mut generators = Vec::with_capacity(lw + rw);
        generators.extend(left.generators.iter().map(|g| format!("{g}@1")));
        generators.extend(right.generators.iter().map(|g| format!("{g}@2")));
        let mut relations = Vec::new();
        for r in &left.relations {
            let mut e = r.exponents().to_vec();
            e.extend(std::iter::repeat_n(0, rw));
            relations.push(Monomial::new(e));
        }
        for r in &right.relations {
            let mut e = vec![0; lw];
            e.extend_from_slice(r.exponents());
            relations.push(Monomial::new(e));
        }
        FpAlgebra::new_unchecked_names(generators, relations)
            .expect("tensor of valid presentations")
    }

    /// Side-by-side union keeping generator names; errors on a name clash.
    pub fn concat(left: &FpAlgebra, right: &FpAlgebra) -> Result<Algebra, AlgebraError> {
        let lw = left.generator_count();
        let rw = right.generator_count();
        let mut generators = Vec::with_capacity(lw + rw);
        generators.extend(left.generators.iter().cloned());
        generators.extend(right.generators.iter().cloned());
        let mut relations = Vec::new();
        for r in &left.relations {
            let mut e = r.exponents().to_vec();
            e.extend(std::iter::repeat_n(0, rw));
            relations.push(Monomial::new(e));
        }
        for r in &right.relations {
            let mut e = vec![0; lw];
            e.extend_from_slice(r.exponents());
            relations.push(Monomial::new(e));
        }
        FpAlgebra::new_unchecked_names(generators, relations)
    }

    /// Drop a generator no relation mentions (used when a free parameter is
    /// substituted away). Returns the smaller algebra and keeps the order of
    /// the remaining generators.
    pub fn remove_generator(&self, index: usize) -> Result<Algebra, AlgebraError> {
        if self.relations.iter().any(|r| r.exponent(index) > 0) {
            return Err(AlgebraError::GeneratorInRelations(
                self.generators[index].clone(),
            ));
        }
        let generators = self
            .generators
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, g)| g.clone())
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let e = r
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != index)
                    .map(|(_, &x)| x)
                    .collect();
                Monomial::new(e)
            })
            .collect();
        FpAlgebra::new_unchecked_names(generators, relations)
    }
}

impl fmt::Display for FpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("k");
        }
        write!(f, "k[{}]", self.generators.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|r| r.display(&self.generators))
                .collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An element of an [`FpAlgebra`] in normal form, with coefficients in an
/// arbitrary ring `T`. All arithmetic goes through [`AlgebraCtx`].
#[derive(Clone, PartialEq, Debug)]
pub struct AlgElement<T> {
    algebra: Algebra,
    coeffs: BTreeMap<Monomial, T>,
}

impl<T> AlgElement<T> {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &BTreeMap<Monomial, T> {
        &self.coeffs
    }

    pub fn is_zero_element(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree of the highest surviving monomial (None when zero).
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(Monomial::degree).max()
    }
}

/// Ring context for elements of one fixed algebra over a base ring.
#[derive(Clone, Debug)]
pub struct AlgebraCtx<C: RingCtx> {
    pub algebra: Algebra,
    pub base: C,
}

impl AlgebraCtx<RationalCtx> {
    pub fn rational(algebra: Algebra) -> Self {
        AlgebraCtx {
            algebra,
            base: RationalCtx,
        }
    }
}

impl<C: RingCtx> AlgebraCtx<C> {
    pub fn new(algebra: Algebra, base: C) -> Self {
        AlgebraCtx { algebra, base }
    }

    /// Build an element from arbitrary terms: reduce, merge, drop zeros.
    pub fn element<I: IntoIterator<Item = (Monomial, C::Elem)>>(
        &self,
        terms: I,
    ) -> AlgElement<C::Elem> {
        let mut coeffs: BTreeMap<Monomial, C::Elem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.width(), self.algebra.generator_count());
            if !self.algebra.is_normal(&m) || self.base.is_zero(&c) {
                continue;
            }
            match coeffs.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = self.base.add(e.get(), &c);
                    if self.base.is_zero(&merged) {
                        e.remove();
                    } else {
                        *e.get_mut() = merged;
                    }
                }
            }
        }
        AlgElement {
            algebra: self.algebra.clone(),
            coeffs,
        }
    }

    pub fn monomial_elem(&self, m: Monomial) -> AlgElement<C::Elem> {
        self.element([(m, self.base.one())])
    }

    pub fn generator_elem(&self, index: usize) -> AlgElement<C::Elem> {
        self.monomial_elem(Monomial::generator(self.algebra.generator_count(), index))
    }

    pub fn scalar_elem(&self, c: C::Elem) -> AlgElement<C::Elem> {
        self.element([(Monomial::unit(self.algebra.generator_count()), c)])
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, a: &AlgElement<C::Elem>, m: &Monomial) -> C::Elem {
        a.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    /// Coefficient of the unit monomial: the image under the point
    /// augmentation.
    pub fn unit_coeff(&self, a: &AlgElement<C::Elem>) -> C::Elem {
        self.coeff(a, &Monomial::unit(self.algebra.generator_count()))
    }

    /// The element minus its unit part; nilpotent whenever the algebra is
    /// Weil.
    pub fn nil_part(&self, a: &AlgElement<C::Elem>) -> AlgElement<C::Elem> {
        let unit = Monomial::unit(self.algebra.generator_count());
        AlgElement {
            algebra: a.algebra.clone(),
            coeffs: a
                .coeffs
                .iter()
                .filter(|(m, _)| **m != unit)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<C: RingCtx> RingCtx for AlgebraCtx<C> {
    type Elem = AlgElement<C::Elem>;

    fn zero(&self) -> Self::Elem {
        AlgElement {
            algebra: self.algebra.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.scalar_elem(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        debug_assert!(same_algebra(&a.algebra, &self.algebra));
        debug_assert!(same_algebra(&b.algebra, &self.algebra));
        self.element(
            a.coeffs
                .iter()
                .chain(b.coeffs.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        AlgElement {
            algebra: a.algebra.clone(),
            coeffs: a
                .coeffs
                .iter()
                .map(|(m, c)| (m.clone(), self.base.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        debug_assert!(same_algebra(&a.algebra, &self.algebra));
        debug_assert!(same_algebra(&b.algebra, &self.algebra));
        let mut terms = Vec::new();
        for (ma, ca) in &a.coeffs {
            for (mb, cb) in &b.coeffs {
                let m = ma.mul(mb);
                if self.algebra.is_normal(&m) {
                    terms.push((m, self.base.mul(ca, cb)));
                }
            }
        }
        self.element(terms)
    }

    fn from_ratio(&self, q: &Rational) -> Self::Elem {
        self.scalar_elem(self.base.from_ratio(q))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn render(&self, a: &Self::Elem) -> String {
        if a.coeffs.is_empty() {
            return "0".to_string();
        }
        let names = self.algebra.generator_names();
        let mut parts = Vec::new();
        for (m, c) in &a.coeffs {
            let coeff = self.base.render(c);
            let coeff = if atom(&coeff) {
                coeff
            } else {
                format!("({coeff})")
            };
            if m.is_unit() {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(m.display(names));
            } else if coeff == "-1" {
                parts.push(format!("-{}", m.display(names)));
            } else {
                parts.push(format!("{coeff}*{}", m.display(names)));
            }
        }
        parts.join(" + ")
    }

    /// Truncated Taylor lift: with `x = c + n`, `n` nilpotent of index `N`,
    /// `f^(j)(x) = sum_{l<N} f^(j+l)(c) / l! * n^l`. Requires a Weil algebra
    /// so that `N` exists.
    fn prim_derivs(
        &self,
        p: Primitive,
        x: &Self::Elem,
        count: usize,
    ) -> Result<Vec<Self::Elem>, EvalError> {
        let nil_index = self
            .algebra
            .nil_index()
            .map_err(|_| EvalError::PrimitiveNeedsNilpotents(p))?
            as usize;
        let center = self.unit_coeff(x);
        let nil = self.nil_part(x);
        let center_derivs = self.base.prim_derivs(p, &center, count + nil_index - 1)?;

        // Powers of the nilpotent part divided by factorials.
        let mut nil_pow_over_fact = Vec::with_capacity(nil_index);
        let mut pow = self.one();
        let mut factorial = Rational::one();
        for l in 0..nil_index {
            if l > 0 {
                pow = self.mul(&pow, &nil);
                factorial *= Rational::from_integer((l as i64).into());
            }
            nil_pow_over_fact.push(self.scale(&factorial.recip(), &pow));
        }

        let mut out = Vec::with_capacity(count);
        for j in 0..count {
            let mut acc = self.zero();
            for (l, npf) in nil_pow_over_fact.iter().enumerate() {
                let term = self.mul(&self.scalar_elem(center_derivs[j + l].clone()), npf);
                acc = self.add(&acc, &term);
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Re-coefficient a rational element into any base ring.
pub fn lift_element<C: RingCtx>(
    ctx: &AlgebraCtx<C>,
    elem: &AlgElement<Rational>,
) -> AlgElement<C::Elem> {
    debug_assert!(same_algebra(elem.algebra(), &ctx.algebra));
    ctx.element(
        elem.coeffs()
            .iter()
            .map(|(m, c)| (m.clone(), ctx.base.from_ratio(c))),
    )
}

fn atom(s: &str) -> bool {
    !s.contains(' ') && !s.contains('+') && !s.contains('*')
}

fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Checked operations on rational elements; these are the entry points the
/// rest of the crate uses when no tower is involved.
impl AlgElement<Rational> {
    pub fn from_terms(
        algebra: &Algebra,
        terms: &[(Monomial, Rational)],
    ) -> AlgElement<Rational> {
        AlgebraCtx::rational(algebra.clone())
            .element(terms.iter().cloned())
    }

    fn ctx(&self) -> AlgebraCtx<RationalCtx> {
        AlgebraCtx::rational(self.algebra.clone())
    }

    fn check_same(&self, other: &AlgElement<Rational>) -> Result<(), AlgebraError> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch {
                left: self.algebra.to_string(),
                right: other.algebra.to_string(),
            })
        }
    }

    pub fn add(&self, other: &AlgElement<Rational>) -> Result<AlgElement<Rational>, AlgebraError> {
        self.check_same(other)?;
        Ok(self.ctx().add(self, other))
    }

    pub fn mul(&self, other: &AlgElement<Rational>) -> Result<AlgElement<Rational>, AlgebraError> {
        self.check_same(other)?;
        Ok(self.ctx().mul(self, other))
    }

    pub fn neg(&self) -> AlgElement<Rational> {
        self.ctx().neg(self)
    }

    pub fn scale(&self, q: &Rational) -> AlgElement<Rational> {
        self.ctx().scale(q, self)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.ctx().coeff(self, m)
    }
}

impl fmt::Display for AlgElement<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx().render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn w_d() -> Algebra {
        FpAlgebra::dual_numbers()
    }

    /// k[X,Y]/(X^2, Y^2, X*Y)
    fn w_d2() -> Algebra {
        FpAlgebra::new(
            vec!["X".into(), "Y".into()],
            vec![
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![0, 2]),
                Monomial::new(vec![1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn square_of_generator_reduces_to_zero() {
        let a = w_d();
        let ctx = AlgebraCtx::rational(a);
        let x = ctx.generator_elem(0);
        assert!(ctx.mul(&x, &x).is_zero_element());
    }

    #[test]
    fn product_in_first_order_neighbourhood() {
        // (1 + X)(1 + Y) = 1 + X + Y once X*Y dies.
        let a = w_d2();
        let ctx = AlgebraCtx::rational(a.clone());
        let one = ctx.one();
        let x = ctx.generator_elem(0);
        let y = ctx.generator_elem(1);
        let p = ctx.mul(&ctx.add(&one, &x), &ctx.add(&one, &y));
        let expected = ctx.element([
            (Monomial::unit(2), int(1)),
            (Monomial::generator(2, 0), int(1)),
            (Monomial::generator(2, 1), int(1)),
        ]);
        assert_eq!(p, expected);
        // (X + Y)^2 = 0 there as well.
        let s = ctx.add(&x, &y);
        assert!(ctx.mul(&s, &s).is_zero_element());
    }

    #[test]
    fn weil_basis_orders_and_counts() {
        assert_eq!(
            w_d().weil_basis().unwrap(),
            vec![Monomial::unit(1), Monomial::generator(1, 0)]
        );
        let basis = w_d2().weil_basis().unwrap();
        let names = vec!["X".to_string(), "Y".to_string()];
        let shown: Vec<String> = basis.iter().map(|m| m.display(&names)).collect();
        assert_eq!(shown, vec!["1", "X", "Y"]);
    }

    #[test]
    fn free_algebras_are_not_weil() {
        let free = FpAlgebra::free(&["Z"]).unwrap();
        assert!(!free.is_weil());
        let err = free.weil_basis().unwrap_err();
        assert!(matches!(err, AlgebraError::NotWeil { generator, .. } if generator == "Z"));
    }

    #[test]
    fn tensor_renames_and_multiplies_dimensions() {
        let t = FpAlgebra::tensor(&w_d(), &w_d());
        assert_eq!(t.generator_names(), &["X@1".to_string(), "X@2".to_string()]);
        assert_eq!(t.dimension().unwrap(), 4);
        // Ground field is a unit for tensor up to renaming.
        let unit = FpAlgebra::tensor(&w_d(), &FpAlgebra::ground());
        assert_eq!(unit.dimension().unwrap(), 2);
    }

    #[test]
    fn constant_relations_are_rejected() {
        let err = FpAlgebra::new(vec!["X".into()], vec![Monomial::unit(1)]).unwrap_err();
        assert_eq!(err, AlgebraError::ConstantRelation);
    }

    #[test]
    fn mismatched_algebras_refuse_to_add() {
        let a = AlgebraCtx::rational(w_d()).one();
        let b = AlgebraCtx::rational(w_d2()).one();
        assert!(matches!(
            a.add(&b),
            Err(AlgebraError::AlgebraMismatch { .. })
        ));
    }

    #[test]
    fn nil_index_counts_basis_degrees() {
        assert_eq!(w_d().nil_index().unwrap(), 2);
        assert_eq!(w_d2().nil_index().unwrap(), 2);
        let cubic = FpAlgebra::new(vec!["X".into()], vec![Monomial::new(vec![3])]).unwrap();
        assert_eq!(cubic.nil_index().unwrap(), 3);
    }

    #[test]
    fn removing_a_free_generator_keeps_relations() {
        let a = FpAlgebra::new(
            vec!["Z".into(), "X".into()],
            vec![Monomial::new(vec![0, 2])],
        )
        .unwrap();
        let reduced = a.remove_generator(0).unwrap();
        assert_eq!(reduced.generator_names(), &["X".to_string()]);
        assert_eq!(reduced.relations(), &[Monomial::new(vec![2])]);
        // The nilpotent generator is pinned by its relation.
        assert!(matches!(
            a.remove_generator(1),
            Err(AlgebraError::GeneratorInRelations(_))
        ));
    }

    #[test]
    fn rendering_nested_elements_parenthesizes() {
        let inner = AlgebraCtx::rational(w_d());
        let outer = AlgebraCtx::new(w_d2(), inner.clone());
        let inner_val = inner.add(&inner.one(), &inner.generator_elem(0));
        let v = outer.element([(Monomial::generator(2, 1), inner_val)]);
        assert_eq!(outer.render(&v), "(1 + X)*Y");
    }
}
