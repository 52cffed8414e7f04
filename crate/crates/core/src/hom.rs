//! Algebra homomorphisms between monomial-quotient presentations.
//!
//! A hom is stored as one target element per source generator and is
//! validated on construction: every relation monomial of the source must map
//! to zero in the target. Since relations are monomials, that check is a
//! handful of products, no completion involved.
//!
//! Homs always have rational coefficients (they are maps of `k`-algebras);
//! applying one to an element with coefficients in a larger ring lifts the
//! images first. All structural laws are certified over the rationals.

use crate::algebra::{
    lift_element, same_algebra, AlgElement, Algebra, AlgebraCtx, AlgebraError, FpAlgebra,
};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::scalar::{Rational, RationalCtx, RingCtx};
use std::fmt;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum HomError {
    #[error("{algebra} has {expected} generators but {got} images were given")]
    ImageCount {
        algebra: String,
        expected: usize,
        got: usize,
    },
    #[error("image of `{generator}` lives in {found}, expected {expected}")]
    ImageAlgebra {
        generator: String,
        found: String,
        expected: String,
    },
    #[error("relation `{relation}` is not sent to zero (it maps to {image})")]
    RelationViolated { relation: String, image: String },
    #[error("element lives in {found} but the hom starts at {expected}")]
    SourceMismatch { found: String, expected: String },
    #[error("cannot compose: the first hom ends at {first_target}, the second starts at {second_source}")]
    NotComposable {
        first_target: String,
        second_source: String,
    },
    #[error("homs do not share the shape required here: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraHom {
    source: Algebra,
    target: Algebra,
    images: Vec<AlgElement<Rational>>,
}

impl AlgebraHom {
    /// Build and validate: relation monomials must land on zero.
    pub fn new(
        source: Algebra,
        target: Algebra,
        images: Vec<AlgElement<Rational>>,
    ) -> Result<AlgebraHom, HomError> {
        if images.len() != source.generator_count() {
            return Err(HomError::ImageCount {
                algebra: source.to_string(),
                expected: source.generator_count(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if !same_algebra(img.algebra(), &target) {
                return Err(HomError::ImageAlgebra {
                    generator: source.generator_names()[i].clone(),
                    found: img.algebra().to_string(),
                    expected: target.to_string(),
                });
            }
        }
        let hom = AlgebraHom {
            source,
            target,
            images,
        };
        let ctx = AlgebraCtx::rational(hom.target.clone());
        for relation in hom.source.relations() {
            let image = hom.apply_monomial(&ctx, relation);
            if !image.is_zero_element() {
                return Err(HomError::RelationViolated {
                    relation: relation.display(hom.source.generator_names()),
                    image: ctx.render(&image),
                });
            }
        }
        Ok(hom)
    }

    pub fn identity(a: &Algebra) -> AlgebraHom {
        let ctx = AlgebraCtx::rational(a.clone());
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            images: (0..a.generator_count())
                .map(|i| ctx.generator_elem(i))
                .collect(),
        }
    }

    /// The point augmentation `A -> k`: every generator to zero.
    pub fn augmentation(a: &Algebra) -> AlgebraHom {
        let ground = FpAlgebra::ground();
        let ctx = AlgebraCtx::rational(ground.clone());
        AlgebraHom {
            source: a.clone(),
            target: ground,
            images: vec![ctx.zero(); a.generator_count()],
        }
    }

    /// The unit `k -> A`.
    pub fn unit_map(a: &Algebra) -> AlgebraHom {
        AlgebraHom {
            source: FpAlgebra::ground(),
            target: a.clone(),
            images: Vec::new(),
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn images(&self) -> &[AlgElement<Rational>] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        same_algebra(&self.source, &self.target) && *self == AlgebraHom::identity(&self.source)
    }

    fn apply_monomial<C: RingCtx>(
        &self,
        ctx: &AlgebraCtx<C>,
        m: &Monomial,
    ) -> AlgElement<C::Elem> {
        let mut acc = ctx.one();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = lift_element(ctx, &self.images[i]);
            acc = ctx.mul(&acc, &ctx.pow(&img, e));
        }
        acc
    }

    /// Apply to an element with coefficients in any base ring. The element
    /// must live in the hom's source algebra.
    pub fn apply_in<C: RingCtx>(
        &self,
        base: &C,
        elem: &AlgElement<C::Elem>,
    ) -> AlgElement<C::Elem> {
        debug_assert!(same_algebra(elem.algebra(), &self.source));
        let ctx = AlgebraCtx::new(self.target.clone(), base.clone());
        let mut acc = ctx.zero();
        for (m, c) in elem.coeffs() {
            let img = self.apply_monomial(&ctx, m);
            let scaled = ctx.mul(&ctx.scalar_elem(c.clone()), &img);
            acc = ctx.add(&acc, &scaled);
        }
        acc
    }

    /// Checked rational application.
    pub fn apply(&self, elem: &AlgElement<Rational>) -> Result<AlgElement<Rational>, HomError> {
        if !same_algebra(elem.algebra(), &self.source) {
            return Err(HomError::SourceMismatch {
                found: elem.algebra().to_string(),
                expected: self.source.to_string(),
            });
        }
        Ok(self.apply_in(&RationalCtx, elem))
    }

    /// `second` after `self`; both validated, so the composite is valid by
    /// construction.
    pub fn then(&self, second: &AlgebraHom) -> Result<AlgebraHom, HomError> {
        if !same_algebra(&self.target, &second.source) {
            return Err(HomError::NotComposable {
                first_target: self.target.to_string(),
                second_source: second.source.to_string(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|img| second.apply_in(&RationalCtx, img))
            .collect();
        Ok(AlgebraHom {
            source: self.source.clone(),
            target: second.target.clone(),
            images,
        })
    }

    /// Matrix on Weil bases: column `j` holds the image of the `j`-th source
    /// basis monomial in target-basis coordinates.
    pub fn matrix(&self) -> Result<Matrix, AlgebraError> {
        let source_basis = self.source.weil_basis()?;
        let target_basis = self.target.weil_basis()?;
        let ctx = AlgebraCtx::rational(self.target.clone());
        let mut m = Matrix::zero(target_basis.len(), source_basis.len());
        for (j, sm) in source_basis.iter().enumerate() {
            let img = self.apply_monomial(&ctx, sm);
            for (i, tm) in target_basis.iter().enumerate() {
                m.set(i, j, ctx.coeff(&img, tm));
            }
        }
        Ok(m)
    }
}

impl fmt::Display for AlgebraHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: ", self.source, self.target)?;
        let parts: Vec<String> = self
            .source
            .generator_names()
            .iter()
            .zip(&self.images)
            .map(|(g, img)| format!("{g} -> {img}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Everything [`equalizer_check`] derives, kept for reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct EqualizerAnalysis {
    /// `f . e = g . e`
    pub commutes: bool,
    /// `e` is injective on basis coordinates.
    pub injective: bool,
    /// The image of `e` spans the whole subspace `{a : f(a) = g(a)}`.
    pub spans: bool,
    /// Dimension of `{a : f(a) = g(a)}`.
    pub equalizer_dim: usize,
}

impl EqualizerAnalysis {
    pub fn holds(&self) -> bool {
        self.commutes && self.injective && self.spans
    }
}

/// Decide whether `e` presents its source as the equalizer of `f` and `g`,
/// by exact rank computations on Weil bases.
pub fn equalizer_analysis(
    f: &AlgebraHom,
    g: &AlgebraHom,
    e: &AlgebraHom,
) -> Result<EqualizerAnalysis, HomError> {
    if !same_algebra(f.source(), g.source()) || !same_algebra(f.target(), g.target()) {
        return Err(HomError::ShapeMismatch(
            "f and g must be parallel homs".to_string(),
        ));
    }
    if !same_algebra(e.target(), f.source()) {
        return Err(HomError::ShapeMismatch(format!(
            "e must end where f starts: {} vs {}",
            e.target(),
            f.source()
        )));
    }
    let mf = f.matrix()?;
    let mg = g.matrix()?;
    let me = e.matrix()?;
    let diff = mf.sub(&mg);
    let commutes = diff.mul(&me).is_zero();
    let e_dim = e.source().dimension()?;
    let injective = me.rank() == e_dim;
    let equalizer_dim = diff.nullity();
    // Given commutativity and injectivity, the image sits inside the
    // subspace with the dimension of the source, so spanning is a dimension
    // count.
    let spans = commutes && injective && equalizer_dim == e_dim;
    Ok(EqualizerAnalysis {
        commutes,
        injective,
        spans,
        equalizer_dim,
    })
}

pub fn equalizer_check(f: &AlgebraHom, g: &AlgebraHom, e: &AlgebraHom) -> Result<bool, HomError> {
    Ok(equalizer_analysis(f, g, e)?.holds())
}
