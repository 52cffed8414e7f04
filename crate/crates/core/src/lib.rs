//! Exact arithmetic for pointed monomial-quotient algebras, the point
//! prolongation they induce on carved spaces, and the tangent and
//! differential form constructions built on top.
//!
//! Everything law-like is checked over exact rationals; floating point only
//! appears in truncated Taylor evaluation of transcendental demos.

pub mod algebra;
pub mod document;
pub mod duality;
pub mod expr;
pub mod exterior;
pub mod forms;
pub mod hom;
pub mod linalg;
pub mod monomial;
pub mod perm;
pub mod prolong;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod suite;
pub mod tangent;

pub use algebra::{Algebra, AlgebraCtx, AlgebraError, AlgElement, FpAlgebra};
pub use document::{Document, DocumentError};
pub use duality::{
    dual_contravariance_check, map_catalog, space_d, space_d2, space_product, space_r, CarveMap,
    CarvedSpace, DualityError,
};
pub use expr::{Expr, ExprError, Poly, SmoothMap};
pub use exterior::{
    boundary_alternation_check, boundary_sum, classical_derivative_check, exterior_derivative,
    integral_i, residual_permutation, residual_sign_check, shuffle_boundary,
    shuffle_scaling_hom_check,
};
pub use forms::{
    classical_d, cube_from_wpoint, cube_to_wpoint, curry_factorize, epsilon_algebra,
    from_classical, integrate, permutation_equivariance_check, random_classical_field,
    random_microcube, scale_direction, validate_form, ClassicalTensorField, DifferentialForm,
    FormBody, FormError, FormFamily, Microcube,
};
pub use hom::{equalizer_analysis, equalizer_check, AlgebraHom, EqualizerAnalysis, HomError};
pub use monomial::Monomial;
pub use perm::Permutation;
pub use prolong::{
    alpha, flatten, instantiate_free, iota, prolong, prolong_rational, tau, unflatten,
    ProlongError, WPoint,
};
pub use report::{Report, ReportEntry};
pub use sample::sub_rng;
pub use scalar::{EvalError, FloatCtx, Primitive, Rational, RationalCtx, RingCtx};
pub use suite::{
    alpha_coherence_check, contravariance_check, document_check, equalizer_diagram_check,
    functor_law_check, hom_check, run_suite, weil_dimension_check,
};
pub use tangent::{
    euclidean_check, euclidean_tensor_check, fibered_tangent_check, pair_equalizer_homs,
    pair_to_tangent, tangent_add, tangent_module_check, tangent_scale, tangent_to_pair, Tangent,
    TangentError,
};
