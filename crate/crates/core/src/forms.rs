//! Differential n-forms on R^m: microcubes, the homogeneity and alternation
//! validators, infinitesimal integration, and the classical tensor-field
//! bridge with its symbolic derivative.
//!
//! A form's body is a scalar-generic program: it evaluates over any
//! [`RingCtx`], which is what lets the `exterior` module run the same body
//! over nilpotent scalar extensions. The symbolic derivative of a classical
//! field is computed from polynomial partials alone and shares no code with
//! the boundary-sum derivative, so the two routes to dω cross-check each
//! other.

use crate::algebra::{same_algebra, AlgElement, Algebra, AlgebraCtx, AlgebraError, FpAlgebra};
use crate::duality::{map_direction_scale, map_permutation, space_d};
use crate::expr::{coordinate_names, Expr, ExprError, Poly};
use crate::monomial::Monomial;
use crate::perm::Permutation;
use crate::prolong::{alpha, instantiate_free, ProlongError, WPoint};
use crate::report::Report;
use crate::sample::{random_poly_expr, random_rational, random_vector, sub_rng};
use crate::scalar::{render_rational, EvalError, Rational, RationalCtx, RingCtx};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Trials and seed used for the validation a form constructor runs on
/// itself; acceptance-grade runs pass their own, larger budgets.
const CONSTRUCTION_TRIALS: usize = 16;
const CONSTRUCTION_SEED: u64 = 0x5EED;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum FormError {
    #[error("expected a degree-{expected_n} microcube on R^{expected_m}, got degree {got_n} on R^{got_m}")]
    Dimension {
        expected_n: usize,
        expected_m: usize,
        got_n: usize,
        got_m: usize,
    },
    #[error("a degree-{n} microcube needs {expected} coefficient vectors, got {got}")]
    CoefficientCount { n: usize, expected: usize, got: usize },
    #[error("coefficient vector {index} has length {got}, expected {expected}")]
    CoefficientLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("direction {i} is out of range 1..={n}")]
    DirectionRange { i: usize, n: usize },
    #[error("a permutation of {got} directions cannot act on a degree-{expected} microcube")]
    PermutationSize { expected: usize, got: usize },
    #[error("point algebra {found} is not the {n}-direction infinitesimal product")]
    CubeAlgebra { found: String, n: usize },
    #[error("index tuple {tuple:?} should have {expected} entries, got {got}")]
    TupleLength {
        tuple: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("index {index} is out of range 1..={m}")]
    IndexRange { index: usize, m: usize },
    #[error("coefficient for {tuple:?} must use the coordinate variables x1..x{m}")]
    CoefficientVars { tuple: Vec<usize>, m: usize },
    #[error("repeated index in {tuple:?} with a nonzero coefficient breaks antisymmetry")]
    Antisymmetry { tuple: Vec<usize> },
    #[error("conflicting coefficients given for index tuple {tuple:?}")]
    ConflictingCoefficients { tuple: Vec<usize> },
    #[error("`{0}` is not a microcube variable (use b<j> or c<subset>_<j>)")]
    UnknownCubeVariable(String),
    #[error("body produces {got} value components, expected {expected}")]
    ValueDimension { expected: usize, got: usize },
    #[error("family parameter `{0}` collides with a microcube variable")]
    ParamCollision(String),
    #[error("family fails the form conditions at parameter {param}: {witness}")]
    ConditionViolated { param: String, witness: String },
    #[error("form failed validation with {} failing entries", .0.failed)]
    Invalid(Box<Report>),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Prolong(#[from] ProlongError),
}

/// An n-dimensional microcube on R^dim: one coefficient vector per subset of
/// the n infinitesimal directions, indexed by bitmask (bit j-1 set means
/// direction j is in the subset). Equivalent to a point over the n-fold
/// infinitesimal product, with subset S holding the coefficient of
/// ∏_{j∈S} X_j.
#[derive(Clone, PartialEq, Debug)]
pub struct Microcube<T> {
    n: usize,
    dim: usize,
    coeffs: Vec<Vec<T>>,
}

impl<T: Clone> Microcube<T> {
    pub fn new(n: usize, dim: usize, coeffs: Vec<Vec<T>>) -> Result<Microcube<T>, FormError> {
        if coeffs.len() != 1 << n {
            return Err(FormError::CoefficientCount {
                n,
                expected: 1 << n,
                got: coeffs.len(),
            });
        }
        for (index, row) in coeffs.iter().enumerate() {
            if row.len() != dim {
                return Err(FormError::CoefficientLength {
                    index,
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        Ok(Microcube { n, dim, coeffs })
    }

    /// The degree-0 microcube: just a point.
    pub fn from_base(values: Vec<T>) -> Microcube<T> {
        let dim = values.len();
        Microcube {
            n: 0,
            dim,
            coeffs: vec![values],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Vec<T>] {
        &self.coeffs
    }

    /// Coefficient vector of the subset encoded by `mask`.
    pub fn coeff(&self, mask: usize) -> &[T] {
        &self.coeffs[mask]
    }

    /// The base point: coefficient of the empty subset.
    pub fn base(&self) -> &[T] {
        &self.coeffs[0]
    }

    /// Coefficient vector of the singleton {j}, 1-based.
    pub fn direction(&self, j: usize) -> &[T] {
        assert!(j >= 1 && j <= self.n, "direction out of range");
        &self.coeffs[1 << (j - 1)]
    }

    /// Relabel directions: the coefficient of subset U in the result is the
    /// coefficient of σ⁻¹(U) in the original, matching the substitution
    /// X_u -> X_{σ(u)} on points.
    pub fn permute(&self, sigma: &Permutation) -> Result<Microcube<T>, FormError> {
        if sigma.len() != self.n {
            return Err(FormError::PermutationSize {
                expected: self.n,
                got: sigma.len(),
            });
        }
        let inv = sigma.inverse();
        let coeffs = (0..self.coeffs.len())
            .map(|mask| {
                let mut src = 0usize;
                for b in 0..self.n {
                    if mask >> b & 1 == 1 {
                        src |= 1 << inv.apply(b);
                    }
                }
                self.coeffs[src].clone()
            })
            .collect();
        Ok(Microcube {
            n: self.n,
            dim: self.dim,
            coeffs,
        })
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Microcube<U> {
        Microcube {
            n: self.n,
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }
}

fn subset_monomial(n: usize, mask: usize) -> Monomial {
    Monomial::new((0..n).map(|b| (mask >> b & 1) as u32).collect())
}

/// View a microcube as a point over the n-fold infinitesimal product.
pub fn cube_to_wpoint<C: RingCtx>(base: &C, cube: &Microcube<C::Elem>) -> WPoint<C::Elem> {
    let algebra = space_d(cube.n()).algebra().clone();
    let ctx = AlgebraCtx::new(algebra.clone(), base.clone());
    let coords = (0..cube.dim())
        .map(|j| {
            ctx.element(
                (0..cube.coeffs().len())
                    .map(|mask| (subset_monomial(cube.n(), mask), cube.coeff(mask)[j].clone())),
            )
        })
        .collect();
    WPoint::new(algebra, coords).expect("coordinates built over the cube algebra")
}

/// Read a point over the n-fold infinitesimal product back as a microcube.
pub fn cube_from_wpoint<C: RingCtx>(
    base: &C,
    p: &WPoint<C::Elem>,
) -> Result<Microcube<C::Elem>, FormError> {
    let n = p.algebra().generator_count();
    if !same_algebra(p.algebra(), space_d(n).algebra()) {
        return Err(FormError::CubeAlgebra {
            found: p.algebra().to_string(),
            n,
        });
    }
    let ctx = AlgebraCtx::new(p.algebra().clone(), base.clone());
    let coeffs = (0..1usize << n)
        .map(|mask| {
            let mono = subset_monomial(n, mask);
            p.coords().iter().map(|c| ctx.coeff(c, &mono)).collect()
        })
        .collect();
    Microcube::new(n, p.dim(), coeffs)
}

/// Multiply every subset containing direction `i` by `a`: the coefficient
/// action of substituting d_i -> a·d_i.
pub fn scale_direction<C: RingCtx>(
    base: &C,
    a: &C::Elem,
    i: usize,
    cube: &Microcube<C::Elem>,
) -> Result<Microcube<C::Elem>, FormError> {
    if i < 1 || i > cube.n() {
        return Err(FormError::DirectionRange { i, n: cube.n() });
    }
    let coeffs = (0..cube.coeffs().len())
        .map(|mask| {
            let row = cube.coeff(mask);
            if mask >> (i - 1) & 1 == 1 {
                row.iter().map(|c| base.mul(a, c)).collect()
            } else {
                row.to_vec()
            }
        })
        .collect();
    Microcube::new(cube.n(), cube.dim(), coeffs)
}

/// A microcube with every coefficient drawn from the small-rational sampler.
pub fn random_microcube(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Microcube<Rational> {
    let coeffs = (0..1usize << n).map(|_| random_vector(rng, dim)).collect();
    Microcube::new(n, dim, coeffs).expect("sampled with consistent shape")
}

/// A classical field with one random polynomial per strictly increasing
/// index tuple. For n > m there are no tuples and the field is zero.
pub fn random_classical_field(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    coeff_degree: u32,
) -> ClassicalTensorField {
    let names = coordinate_names(m);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let entries = ascending_tuples(n, m)
        .into_iter()
        .map(|tuple| {
            let expr = random_poly_expr(rng, &refs, coeff_degree);
            let poly = Poly::from_expr(&expr, &names).expect("sampled expressions are polynomial");
            (tuple, poly)
        })
        .collect();
    ClassicalTensorField::new(n, m, entries).expect("ascending tuples with standard variables")
}

/// The one-generator square-zero extension used to read off first-order
/// parts of form values.
pub fn epsilon_algebra() -> &'static Algebra {
    static EPS: OnceLock<Algebra> = OnceLock::new();
    EPS.get_or_init(|| {
        FpAlgebra::new(vec!["eps".to_string()], vec![Monomial::new(vec![2])])
            .expect("eps is a valid generator name")
    })
}

/// A shuffled microcube: the square-zero scalar extension its entries now
/// live in, paired with the regrouped cube one degree down.
pub type ShuffleSplit<C> = (AlgebraCtx<C>, Microcube<AlgElement<<C as RingCtx>::Elem>>);

/// Cycle direction `i` of a degree-(n+1) microcube to the last slot and
/// regroup that slot as a square-zero scalar extension: the subset-S
/// coefficient of the result is c_{m(S)} + c_{m(S)∪{i}}·eps, where m shifts
/// directions ≥ i up by one.
pub(crate) fn shuffle_regroup<C: RingCtx>(
    base: &C,
    cube: &Microcube<C::Elem>,
    i: usize,
) -> Result<ShuffleSplit<C>, FormError> {
    let total = cube.n();
    if total == 0 || i < 1 || i > total {
        return Err(FormError::DirectionRange { i, n: total });
    }
    let n = total - 1;
    let ctx = AlgebraCtx::new(epsilon_algebra().clone(), base.clone());
    let unit = Monomial::unit(1);
    let eps = Monomial::generator(1, 0);
    let mut coeffs = Vec::with_capacity(1 << n);
    for mask in 0..1usize << n {
        let mut body = 0usize;
        for b in 0..n {
            if mask >> b & 1 == 1 {
                let v = b + 1;
                let shifted = if v < i { v } else { v + 1 };
                body |= 1 << (shifted - 1);
            }
        }
        let fringe = body | 1 << (i - 1);
        let row = (0..cube.dim())
            .map(|j| {
                ctx.element(vec![
                    (unit.clone(), cube.coeff(body)[j].clone()),
                    (eps.clone(), cube.coeff(fringe)[j].clone()),
                ])
            })
            .collect();
        coeffs.push(row);
    }
    Ok((ctx, Microcube::new(n, cube.dim(), coeffs)?))
}

/// A classical antisymmetric tensor field on R^m with polynomial
/// coefficients: one polynomial in x1..xm per strictly increasing index
/// tuple. Arbitrary tuples are canonicalized by sorting with sign on
/// construction.
#[derive(Clone, PartialEq, Debug)]
pub struct ClassicalTensorField {
    n: usize,
    m: usize,
    coefficients: BTreeMap<Vec<usize>, Poly>,
}

/// Sort an index tuple, tracking whether the permutation used is odd.
/// `None` marks a repeated index.
fn canonical_tuple(tuple: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = tuple.to_vec();
    let mut negate = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negate))
}

fn ascending_tuples(len: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn extend(current: &mut Vec<usize>, len: usize, m: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let start = current.last().map_or(1, |&l| l + 1);
        for next in start..=m {
            current.push(next);
            extend(current, len, m, out);
            current.pop();
        }
    }
    extend(&mut current, len, m, &mut out);
    out
}

impl ClassicalTensorField {
    pub fn new(
        n: usize,
        m: usize,
        entries: Vec<(Vec<usize>, Poly)>,
    ) -> Result<ClassicalTensorField, FormError> {
        let names = coordinate_names(m);
        let mut coefficients: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
        for (tuple, poly) in entries {
            if tuple.len() != n {
                return Err(FormError::TupleLength {
                    expected: n,
                    got: tuple.len(),
                    tuple,
                });
            }
            if let Some(&index) = tuple.iter().find(|&&i| i < 1 || i > m) {
                return Err(FormError::IndexRange { index, m });
            }
            if poly.vars() != names.as_slice() {
                return Err(FormError::CoefficientVars { tuple, m });
            }
            let (key, negate) = match canonical_tuple(&tuple) {
                Some(pair) => pair,
                None => {
                    if poly.is_zero() {
                        continue;
                    }
                    return Err(FormError::Antisymmetry { tuple });
                }
            };
            let signed = if negate { poly.neg() } else { poly };
            if signed.is_zero() {
                continue;
            }
            match coefficients.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(signed);
                }
                std::collections::btree_map::Entry::Occupied(e) => {
                    if *e.get() != signed {
                        return Err(FormError::ConflictingCoefficients {
                            tuple: e.key().clone(),
                        });
                    }
                }
            }
        }
        Ok(ClassicalTensorField { n, m, coefficients })
    }

    /// The zero field of the given shape.
    pub fn zero(n: usize, m: usize) -> ClassicalTensorField {
        ClassicalTensorField {
            n,
            m,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Canonical (strictly increasing tuple) entries; absent means zero.
    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, Poly> {
        &self.coefficients
    }

    /// Coefficient for an arbitrary tuple, canonicalized with sign; zero for
    /// repeated indices or absent tuples.
    pub fn coefficient(&self, tuple: &[usize]) -> Poly {
        let zero = || Poly::zero(coordinate_names(self.m));
        match canonical_tuple(tuple) {
            None => zero(),
            Some((key, negate)) => match self.coefficients.get(&key) {
                None => zero(),
                Some(poly) => {
                    if negate {
                        poly.neg()
                    } else {
                        poly.clone()
                    }
                }
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// The symbolic derivative of a classical field: the coefficient of a
/// strictly increasing (n+1)-tuple J is the alternating sum over positions k
/// of ∂_{J[k]} applied to the coefficient of J with position k removed.
/// Shares no code with the boundary-sum derivative in `exterior`.
pub fn classical_d(field: &ClassicalTensorField) -> ClassicalTensorField {
    let mut entries = Vec::new();
    for tuple in ascending_tuples(field.n + 1, field.m) {
        let mut acc = Poly::zero(coordinate_names(field.m));
        for k in 0..tuple.len() {
            let mut rest = tuple.clone();
            let jk = rest.remove(k);
            let term = field.coefficient(&rest).partial(jk - 1);
            acc = if k % 2 == 0 {
                acc.add(&term)
            } else {
                acc.add(&term.neg())
            };
        }
        if !acc.is_zero() {
            entries.push((tuple, acc));
        }
    }
    ClassicalTensorField::new(field.n + 1, field.m, entries)
        .expect("canonical tuples with standard variables")
}

/// How a form computes its value from a microcube. Every variant is a
/// scalar-generic program.
#[derive(Clone, PartialEq, Debug)]
pub enum FormBody {
    /// The multilinear alternating extension of a classical field:
    /// Σ_I a_I(base) · det[(c_{j})_{I_k}].
    Classical(ClassicalTensorField),
    /// One expression per value component over the microcube variables
    /// b<j> (base coordinates) and c<subset>_<j> (subset coefficients,
    /// ascending digits, e.g. c12_3).
    Coefficient { exprs: Vec<Expr> },
    /// The boundary alternating sum of a lower-degree form: value =
    /// Σ_i (−1)^{i+1} (eps-part of inner on the i-th shuffle).
    Exterior(Box<DifferentialForm>),
    Scaled {
        factor: Rational,
        inner: Box<DifferentialForm>,
    },
    Sum(Vec<DifferentialForm>),
}

enum CubeVar {
    Base(usize),
    Coeff { mask: usize, coord: usize },
}

fn cube_var(n: usize, m: usize, name: &str) -> Option<CubeVar> {
    if let Some(rest) = name.strip_prefix('b') {
        let j: usize = rest.parse().ok()?;
        return (1..=m).contains(&j).then_some(CubeVar::Base(j));
    }
    let rest = name.strip_prefix('c')?;
    let (digits, coord) = rest.split_once('_')?;
    let j: usize = coord.parse().ok()?;
    if !(1..=m).contains(&j) {
        return None;
    }
    let mut mask = 0usize;
    let mut last = 0usize;
    for ch in digits.chars() {
        let d = ch.to_digit(10)? as usize;
        if d < 1 || d > n || d <= last {
            return None;
        }
        mask |= 1 << (d - 1);
        last = d;
    }
    Some(CubeVar::Coeff { mask, coord: j })
}

/// Scalars for evaluating form bodies whose boundary-sum arms nest to a
/// depth only known at runtime: a base scalar, or an element of a
/// square-zero extension with further tower scalars as coefficients.
/// Keeping the nesting in data rather than in the scalar type lets one
/// instantiation of the evaluator handle any depth.
#[derive(Clone, PartialEq, Debug)]
enum Tower<T> {
    Base(T),
    Ext(AlgElement<Tower<T>>),
}

#[derive(Clone)]
enum TowerCtx<C: RingCtx> {
    Base(C),
    Ext(Box<AlgebraCtx<TowerCtx<C>>>),
}

impl<C: RingCtx> RingCtx for TowerCtx<C> {
    type Elem = Tower<C::Elem>;

    fn zero(&self) -> Tower<C::Elem> {
        match self {
            TowerCtx::Base(c) => Tower::Base(c.zero()),
            TowerCtx::Ext(ctx) => Tower::Ext(ctx.zero()),
        }
    }

    fn one(&self) -> Tower<C::Elem> {
        match self {
            TowerCtx::Base(c) => Tower::Base(c.one()),
            TowerCtx::Ext(ctx) => Tower::Ext(ctx.one()),
        }
    }

    fn add(&self, a: &Tower<C::Elem>, b: &Tower<C::Elem>) -> Tower<C::Elem> {
        match (self, a, b) {
            (TowerCtx::Base(c), Tower::Base(a), Tower::Base(b)) => Tower::Base(c.add(a, b)),
            (TowerCtx::Ext(ctx), Tower::Ext(a), Tower::Ext(b)) => Tower::Ext(ctx.add(a, b)),
            _ => panic!("tower level mismatch"),
        }
    }

    fn neg(&self, a: &Tower<C::Elem>) -> Tower<C::Elem> {
        match (self, a) {
            (TowerCtx::Base(c), Tower::Base(a)) => Tower::Base(c.neg(a)),
            (TowerCtx::Ext(ctx), Tower::Ext(a)) => Tower::Ext(ctx.neg(a)),
            _ => panic!("tower level mismatch"),
        }
    }

    fn mul(&self, a: &Tower<C::Elem>, b: &Tower<C::Elem>) -> Tower<C::Elem> {
        match (self, a, b) {
            (TowerCtx::Base(c), Tower::Base(a), Tower::Base(b)) => Tower::Base(c.mul(a, b)),
            (TowerCtx::Ext(ctx), Tower::Ext(a), Tower::Ext(b)) => Tower::Ext(ctx.mul(a, b)),
            _ => panic!("tower level mismatch"),
        }
    }

    fn from_ratio(&self, q: &Rational) -> Tower<C::Elem> {
        match self {
            TowerCtx::Base(c) => Tower::Base(c.from_ratio(q)),
            TowerCtx::Ext(ctx) => Tower::Ext(ctx.from_ratio(q)),
        }
    }

    fn is_zero(&self, a: &Tower<C::Elem>) -> bool {
        match (self, a) {
            (TowerCtx::Base(c), Tower::Base(a)) => c.is_zero(a),
            (TowerCtx::Ext(ctx), Tower::Ext(a)) => ctx.is_zero(a),
            _ => panic!("tower level mismatch"),
        }
    }

    fn render(&self, a: &Tower<C::Elem>) -> String {
        match (self, a) {
            (TowerCtx::Base(c), Tower::Base(a)) => c.render(a),
            (TowerCtx::Ext(ctx), Tower::Ext(a)) => ctx.render(a),
            _ => panic!("tower level mismatch"),
        }
    }

    fn prim_derivs(
        &self,
        p: crate::scalar::Primitive,
        x: &Tower<C::Elem>,
        count: usize,
    ) -> Result<Vec<Tower<C::Elem>>, EvalError> {
        match (self, x) {
            (TowerCtx::Base(c), Tower::Base(x)) => Ok(c
                .prim_derivs(p, x, count)?
                .into_iter()
                .map(Tower::Base)
                .collect()),
            (TowerCtx::Ext(ctx), Tower::Ext(x)) => Ok(ctx
                .prim_derivs(p, x, count)?
                .into_iter()
                .map(Tower::Ext)
                .collect()),
            _ => panic!("tower level mismatch"),
        }
    }
}

/// A differential n-form on R^m with values in R^e. Constructing through
/// [`DifferentialForm::new`] runs the validator; `new_unchecked` skips it
/// and marks the form accordingly.
#[derive(Clone, PartialEq, Debug)]
pub struct DifferentialForm {
    n: usize,
    m: usize,
    e: usize,
    body: FormBody,
    validated: bool,
}

fn check_shape(n: usize, m: usize, e: usize, body: &FormBody) -> Result<(), FormError> {
    let demand = |form: &DifferentialForm, degree: usize| -> Result<(), FormError> {
        if form.n != degree || form.m != m {
            return Err(FormError::Dimension {
                expected_n: degree,
                expected_m: m,
                got_n: form.n,
                got_m: form.m,
            });
        }
        if form.e != e {
            return Err(FormError::ValueDimension {
                expected: e,
                got: form.e,
            });
        }
        Ok(())
    };
    match body {
        FormBody::Classical(field) => {
            if field.n != n || field.m != m {
                return Err(FormError::Dimension {
                    expected_n: n,
                    expected_m: m,
                    got_n: field.n,
                    got_m: field.m,
                });
            }
            if e != 1 {
                return Err(FormError::ValueDimension { expected: 1, got: e });
            }
        }
        FormBody::Coefficient { exprs } => {
            if exprs.len() != e {
                return Err(FormError::ValueDimension {
                    expected: e,
                    got: exprs.len(),
                });
            }
            for expr in exprs {
                for var in expr.variables() {
                    if cube_var(n, m, &var).is_none() {
                        return Err(FormError::UnknownCubeVariable(var));
                    }
                }
            }
        }
        FormBody::Exterior(inner) => {
            if n == 0 {
                return Err(FormError::Dimension {
                    expected_n: inner.n + 1,
                    expected_m: m,
                    got_n: 0,
                    got_m: m,
                });
            }
            demand(inner, n - 1)?;
        }
        FormBody::Scaled { inner, .. } => demand(inner, n)?,
        FormBody::Sum(parts) => {
            for part in parts {
                demand(part, n)?;
            }
        }
    }
    Ok(())
}

impl DifferentialForm {
    /// Shape-check the body and run the validator; fails with the full
    /// report when either condition breaks.
    pub fn new(
        n: usize,
        m: usize,
        e: usize,
        body: FormBody,
        trials: usize,
        seed: u64,
    ) -> Result<DifferentialForm, FormError> {
        let mut form = DifferentialForm::new_unchecked(n, m, e, body)?;
        let report = validate_form(&form, trials, seed);
        if !report.all_passed() {
            return Err(FormError::Invalid(Box::new(report)));
        }
        form.validated = true;
        Ok(form)
    }

    /// Shape-check only; the form carries `validated() == false`.
    pub fn new_unchecked(
        n: usize,
        m: usize,
        e: usize,
        body: FormBody,
    ) -> Result<DifferentialForm, FormError> {
        check_shape(n, m, e, &body)?;
        Ok(DifferentialForm {
            n,
            m,
            e,
            body,
            validated: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn body(&self) -> &FormBody {
        &self.body
    }

    pub fn validated(&self) -> bool {
        self.validated
    }

    /// Evaluate the body on a microcube over any scalar context.
    pub fn eval_in<C: RingCtx>(
        &self,
        ctx: &C,
        cube: &Microcube<C::Elem>,
    ) -> Result<Vec<C::Elem>, FormError> {
        let tctx = TowerCtx::Base(ctx.clone());
        let lifted = cube.map(|v| Tower::Base(v.clone()));
        let value = self.eval_tower(&tctx, &lifted)?;
        Ok(value
            .into_iter()
            .map(|v| match v {
                Tower::Base(v) => v,
                Tower::Ext(_) => unreachable!("base context yields base scalars"),
            })
            .collect())
    }

    /// The working evaluator. The boundary-sum arm re-enters with the cube
    /// lifted one tower level, so the scalar type never changes and the
    /// nesting depth is purely a runtime matter.
    fn eval_tower<C: RingCtx>(
        &self,
        ctx: &TowerCtx<C>,
        cube: &Microcube<Tower<C::Elem>>,
    ) -> Result<Vec<Tower<C::Elem>>, FormError> {
        if cube.n() != self.n || cube.dim() != self.m {
            return Err(FormError::Dimension {
                expected_n: self.n,
                expected_m: self.m,
                got_n: cube.n(),
                got_m: cube.dim(),
            });
        }
        match &self.body {
            FormBody::Classical(field) => Ok(vec![classical_value(ctx, field, cube)]),
            FormBody::Coefficient { exprs } => {
                let lookup = |name: &str| -> Option<Tower<C::Elem>> {
                    match cube_var(self.n, self.m, name)? {
                        CubeVar::Base(j) => Some(cube.base()[j - 1].clone()),
                        CubeVar::Coeff { mask, coord } => {
                            Some(cube.coeff(mask)[coord - 1].clone())
                        }
                    }
                };
                exprs
                    .iter()
                    .map(|expr| expr.eval(ctx, &lookup).map_err(FormError::from))
                    .collect()
            }
            FormBody::Exterior(inner) => {
                let eps = Monomial::generator(1, 0);
                let mut acc = vec![ctx.zero(); self.e];
                for i in 1..=cube.n() {
                    let (eps_ctx, shuffled) = shuffle_regroup(ctx, cube, i)?;
                    let lifted = shuffled.map(|e| Tower::Ext(e.clone()));
                    let value = inner.eval_tower(&TowerCtx::Ext(Box::new(eps_ctx.clone())), &lifted)?;
                    for (slot, v) in acc.iter_mut().zip(&value) {
                        let part = match v {
                            Tower::Ext(e) => eps_ctx.coeff(e, &eps),
                            Tower::Base(_) => unreachable!("extension yields extension scalars"),
                        };
                        *slot = if i % 2 == 1 {
                            ctx.add(slot, &part)
                        } else {
                            ctx.sub(slot, &part)
                        };
                    }
                }
                Ok(acc)
            }
            FormBody::Scaled { factor, inner } => {
                let value = inner.eval_tower(ctx, cube)?;
                Ok(value.iter().map(|v| ctx.scale(factor, v)).collect())
            }
            FormBody::Sum(parts) => {
                let mut acc = vec![ctx.zero(); self.e];
                for part in parts {
                    let value = part.eval_tower(ctx, cube)?;
                    for (slot, v) in acc.iter_mut().zip(&value) {
                        *slot = ctx.add(slot, v);
                    }
                }
                Ok(acc)
            }
        }
    }
}

fn classical_value<C: RingCtx>(
    ctx: &C,
    field: &ClassicalTensorField,
    cube: &Microcube<C::Elem>,
) -> C::Elem {
    let perms = Permutation::enumerate(field.n);
    let mut total = ctx.zero();
    for (tuple, poly) in &field.coefficients {
        let scalar = poly.eval(ctx, cube.base());
        let mut det = ctx.zero();
        for sigma in &perms {
            let mut prod = ctx.one();
            for j in 0..field.n {
                prod = ctx.mul(&prod, &cube.direction(j + 1)[tuple[sigma.apply(j)] - 1]);
            }
            det = if sigma.sign() == 1 {
                ctx.add(&det, &prod)
            } else {
                ctx.sub(&det, &prod)
            };
        }
        total = ctx.add(&total, &ctx.mul(&scalar, &det));
    }
    total
}

/// The multilinear alternating form of a classical field. The result is
/// linear in each single-direction coefficient and alternating by the
/// determinant, so it always passes validation; the constructor asserts
/// that by running it.
pub fn from_classical(field: &ClassicalTensorField) -> Result<DifferentialForm, FormError> {
    DifferentialForm::new(
        field.n,
        field.m,
        1,
        FormBody::Classical(field.clone()),
        CONSTRUCTION_TRIALS,
        CONSTRUCTION_SEED,
    )
}

/// Evaluation of a form at a microcube over the rationals. Deliberately
/// plain-vector valued: the value carries no nilpotent decoration.
pub fn integrate(
    cube: &Microcube<Rational>,
    form: &DifferentialForm,
) -> Result<Vec<Rational>, FormError> {
    form.eval_in(&RationalCtx, cube)
}

/// Scale direction `i` of a rational cube through the contravariant route:
/// push along the dual of the free-parameter direction scaling, then
/// instantiate the parameter.
fn scale_via_hom(cube: &Microcube<Rational>, i: usize, a: &Rational) -> Microcube<Rational> {
    let hom = map_direction_scale(cube.n(), i);
    let p = cube_to_wpoint(&RationalCtx, cube);
    let spread = alpha(&RationalCtx, hom.dual_hom(), &p).expect("cube lives over the hom source");
    let inst = instantiate_free(&RationalCtx, &spread, &[("Z".to_string(), a.clone())])
        .expect("Z is free in the scaling extension");
    cube_from_wpoint(&RationalCtx, &inst).expect("instantiation lands over the cube algebra")
}

/// Relabel directions of a rational cube through the contravariant route:
/// push along the dual of the coordinate permutation.
fn permute_via_hom(cube: &Microcube<Rational>, sigma: &Permutation) -> Microcube<Rational> {
    let hom = map_permutation(sigma.images());
    let p = cube_to_wpoint(&RationalCtx, cube);
    let moved = alpha(&RationalCtx, hom.dual_hom(), &p).expect("cube lives over the hom source");
    cube_from_wpoint(&RationalCtx, &moved).expect("permutation preserves the cube algebra")
}

pub(crate) fn render_value(value: &[Rational]) -> String {
    let parts: Vec<String> = value.iter().map(render_rational).collect();
    format!("({})", parts.join(", "))
}

/// Check the two defining conditions on random rational microcubes: degree-1
/// homogeneity under each single-direction scaling (including forced a = 0
/// every tenth trial) and sign flip under each adjacent transposition. Both
/// group actions run through the contravariant hom route. For n = 0 both
/// quantifiers are empty and the validator passes anything.
pub fn validate_form(form: &DifferentialForm, trials: usize, seed: u64) -> Report {
    let mut report = Report::new(
        format!("validate_form(n={}, m={}, e={})", form.n, form.m, form.e),
        seed,
    );
    if form.n == 0 {
        report.pass(
            "form.homogeneity.vacuous",
            "ω(a·ᵢγ) = a·ω(γ)",
            "n=0: no directions to scale",
        );
        report.pass(
            "form.alternation.vacuous",
            "ω(γ^σ) = ε(σ)·ω(γ)",
            "n=0: no directions to swap",
        );
        return report;
    }
    for i in 1..=form.n {
        let id = format!("form.homogeneity.direction_{i}");
        let instance = format!("direction i={i}, {trials} trials, m={}", form.m);
        let mut rng = sub_rng(seed, &id);
        let mut witness = None;
        for t in 0..trials {
            let cube = random_microcube(&mut rng, form.n, form.m);
            let a = if t % 10 == 9 {
                Rational::zero()
            } else {
                random_rational(&mut rng)
            };
            let scaled = scale_via_hom(&cube, i, &a);
            let outcome = (|| -> Result<Option<String>, FormError> {
                let lhs = form.eval_in(&RationalCtx, &scaled)?;
                let rhs: Vec<Rational> = form
                    .eval_in(&RationalCtx, &cube)?
                    .iter()
                    .map(|v| v * &a)
                    .collect();
                Ok((lhs != rhs).then(|| {
                    format!(
                        "a={}, ω(a·γ)={}, a·ω(γ)={}",
                        render_rational(&a),
                        render_value(&lhs),
                        render_value(&rhs)
                    )
                }))
            })();
            match outcome {
                Ok(None) => {}
                Ok(Some(w)) => {
                    witness = Some(w);
                    break;
                }
                Err(err) => {
                    witness = Some(format!("evaluation failed: {err}"));
                    break;
                }
            }
        }
        report.record(&id, "ω(a·ᵢγ) = a·ω(γ)", instance, witness.is_none(), witness);
    }
    for u in 1..form.n {
        let id = format!("form.alternation.swap_{u}_{}", u + 1);
        let instance = format!("σ = ({u} {}), {trials} trials, m={}", u + 1, form.m);
        let sigma = Permutation::transposition(form.n, u - 1, u);
        let mut rng = sub_rng(seed, &id);
        let mut witness = None;
        for _ in 0..trials {
            let cube = random_microcube(&mut rng, form.n, form.m);
            let moved = permute_via_hom(&cube, &sigma);
            let outcome = (|| -> Result<Option<String>, FormError> {
                let lhs = form.eval_in(&RationalCtx, &moved)?;
                let rhs: Vec<Rational> = form
                    .eval_in(&RationalCtx, &cube)?
                    .iter()
                    .map(|v| -v)
                    .collect();
                Ok((lhs != rhs).then(|| {
                    format!(
                        "ω(γ^σ)={}, −ω(γ)={}",
                        render_value(&lhs),
                        render_value(&rhs)
                    )
                }))
            })();
            match outcome {
                Ok(None) => {}
                Ok(Some(w)) => {
                    witness = Some(w);
                    break;
                }
                Err(err) => {
                    witness = Some(format!("evaluation failed: {err}"));
                    break;
                }
            }
        }
        report.record(
            &id,
            "ω(γ^σ) = ε(σ)·ω(γ)",
            instance,
            witness.is_none(),
            witness,
        );
    }
    report
}

/// Check ω(γ^σ) = ε(σ)·ω(γ) for one arbitrary permutation on random
/// rational microcubes, through the contravariant route.
pub fn permutation_equivariance_check(
    form: &DifferentialForm,
    sigma: &Permutation,
    trials: usize,
    seed: u64,
) -> Report {
    let mut report = Report::new(format!("equivariance(σ={sigma})"), seed);
    let id = format!("form.equivariance.sigma_{sigma}");
    let instance = format!("n={}, m={}, {trials} trials", form.n, form.m);
    let anchor = "ω(γ^σ) = ε(σ)·ω(γ)";
    if sigma.len() != form.n {
        report.fail(
            id,
            anchor,
            instance,
            format!(
                "permutation acts on {} directions, form has {}",
                sigma.len(),
                form.n
            ),
        );
        return report;
    }
    let mut rng = sub_rng(seed, &id);
    let mut witness = None;
    for _ in 0..trials {
        let cube = random_microcube(&mut rng, form.n, form.m);
        let moved = permute_via_hom(&cube, sigma);
        let outcome = (|| -> Result<Option<String>, FormError> {
            let lhs = form.eval_in(&RationalCtx, &moved)?;
            let raw = form.eval_in(&RationalCtx, &cube)?;
            let rhs: Vec<Rational> = if sigma.sign() == 1 {
                raw
            } else {
                raw.iter().map(|v| -v).collect()
            };
            Ok((lhs != rhs).then(|| {
                format!(
                    "ω(γ^σ)={}, ε(σ)·ω(γ)={}",
                    render_value(&lhs),
                    render_value(&rhs)
                )
            }))
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(err) => {
                witness = Some(format!("evaluation failed: {err}"));
                break;
            }
        }
    }
    report.record(&id, anchor, instance, witness.is_none(), witness);
    report
}

/// A family of candidate forms indexed by one scalar parameter: expressions
/// over the microcube variables plus the parameter name.
#[derive(Clone, PartialEq, Debug)]
pub struct FormFamily {
    n: usize,
    m: usize,
    e: usize,
    param: String,
    exprs: Vec<Expr>,
}

impl FormFamily {
    pub fn new(
        n: usize,
        m: usize,
        e: usize,
        param: impl Into<String>,
        exprs: Vec<Expr>,
    ) -> Result<FormFamily, FormError> {
        let param = param.into();
        if cube_var(n, m, &param).is_some() {
            return Err(FormError::ParamCollision(param));
        }
        if exprs.len() != e {
            return Err(FormError::ValueDimension {
                expected: e,
                got: exprs.len(),
            });
        }
        for expr in &exprs {
            for var in expr.variables() {
                if var != param && cube_var(n, m, &var).is_none() {
                    return Err(FormError::UnknownCubeVariable(var));
                }
            }
        }
        Ok(FormFamily {
            n,
            m,
            e,
            param,
            exprs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    /// The candidate body at one parameter value, by substitution.
    pub fn at(&self, x: &Rational) -> FormBody {
        let lookup =
            |name: &str| -> Option<Expr> { (name == self.param).then(|| Expr::constant(x.clone())) };
        FormBody::Coefficient {
            exprs: self.exprs.iter().map(|e| e.substitute(&lookup)).collect(),
        }
    }

    /// Direct evaluation with the parameter bound, bypassing substitution.
    pub fn eval_rational(
        &self,
        cube: &Microcube<Rational>,
        x: &Rational,
    ) -> Result<Vec<Rational>, FormError> {
        if cube.n() != self.n || cube.dim() != self.m {
            return Err(FormError::Dimension {
                expected_n: self.n,
                expected_m: self.m,
                got_n: cube.n(),
                got_m: cube.dim(),
            });
        }
        let lookup = |name: &str| -> Option<Rational> {
            if name == self.param {
                return Some(x.clone());
            }
            match cube_var(self.n, self.m, name)? {
                CubeVar::Base(j) => Some(cube.base()[j - 1].clone()),
                CubeVar::Coeff { mask, coord } => Some(cube.coeff(mask)[coord - 1].clone()),
            }
        };
        self.exprs
            .iter()
            .map(|expr| expr.eval(&RationalCtx, &lookup).map_err(FormError::from))
            .collect()
    }
}

/// Factor a parametrized family into one validated form per parameter value.
/// Each slice must pass both form conditions (sampled with `trials` random
/// cubes); the factored forms are checked to reproduce the family pointwise.
pub fn curry_factorize(
    family: &FormFamily,
    params: &[Rational],
    trials: usize,
    seed: u64,
) -> Result<Vec<DifferentialForm>, FormError> {
    let mut forms = Vec::with_capacity(params.len());
    for (idx, x) in params.iter().enumerate() {
        let slice_seed = sub_rng(seed, &format!("curry.param_{idx}")).gen::<u64>();
        let form = match DifferentialForm::new(
            family.n,
            family.m,
            family.e,
            family.at(x),
            trials,
            slice_seed,
        ) {
            Ok(form) => form,
            Err(FormError::Invalid(report)) => {
                let witness = report
                    .entries
                    .iter()
                    .find(|entry| !entry.pass)
                    .map(|entry| {
                        format!(
                            "{} ({})",
                            entry.id,
                            entry.witness.as_deref().unwrap_or("no witness")
                        )
                    })
                    .unwrap_or_else(|| "validation failed".to_string());
                return Err(FormError::ConditionViolated {
                    param: render_rational(x),
                    witness,
                });
            }
            Err(other) => return Err(other),
        };
        let mut rng = sub_rng(seed, &format!("curry.round_trip_{idx}"));
        for _ in 0..trials {
            let cube = random_microcube(&mut rng, family.n, family.m);
            if integrate(&cube, &form)? != family.eval_rational(&cube, x)? {
                return Err(FormError::ConditionViolated {
                    param: render_rational(x),
                    witness: "factored form disagrees with the family".to_string(),
                });
            }
        }
        forms.push(form);
    }
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn poly(m: usize, text: &str) -> Poly {
        Poly::from_expr(&Expr::parse(text).unwrap(), &coordinate_names(m)).unwrap()
    }

    fn cube(n: usize, dim: usize, rows: &[&[i64]]) -> Microcube<Rational> {
        let coeffs = rows
            .iter()
            .map(|row| row.iter().map(|&v| int(v)).collect())
            .collect();
        Microcube::new(n, dim, coeffs).unwrap()
    }

    #[test]
    fn cubes_round_trip_through_points() {
        let c = cube(2, 2, &[&[1, 2], &[3, 4], &[5, 6], &[7, 8]]);
        let p = cube_to_wpoint(&RationalCtx, &c);
        assert_eq!(p.algebra().to_string(), "k[X1,X2]/(X1^2, X2^2)");
        assert_eq!(cube_from_wpoint(&RationalCtx, &p).unwrap(), c);
        let tangent = crate::prolong::iota(&RationalCtx, space_d(1).algebra(), &[int(9)]);
        let back = cube_from_wpoint(&RationalCtx, &tangent).unwrap();
        assert_eq!(back.base(), &[int(9)]);
        assert_eq!(back.direction(1), &[Rational::zero()]);
    }

    #[test]
    fn wrong_algebra_is_not_a_cube() {
        let cubic = FpAlgebra::new(vec!["X".to_string()], vec![Monomial::new(vec![3])]).unwrap();
        let p = crate::prolong::iota(&RationalCtx, &cubic, &[int(1)]);
        match cube_from_wpoint(&RationalCtx, &p).unwrap_err() {
            FormError::CubeAlgebra { n, .. } => assert_eq!(n, 1),
            other => panic!("expected cube algebra error, got {other:?}"),
        }
    }

    #[test]
    fn scaling_routes_agree() {
        let c = cube(2, 1, &[&[2], &[3], &[5], &[7]]);
        for i in 1..=2 {
            for a in [rat(3, 2), Rational::zero(), int(-1)] {
                let direct = scale_direction(&RationalCtx, &a, i, &c).unwrap();
                assert_eq!(direct, scale_via_hom(&c, i, &a));
            }
        }
        let scaled = scale_direction(&RationalCtx, &int(10), 1, &c).unwrap();
        assert_eq!(scaled.coeff(0), &[int(2)]);
        assert_eq!(scaled.coeff(1), &[int(30)]);
        assert_eq!(scaled.coeff(2), &[int(5)]);
        assert_eq!(scaled.coeff(3), &[int(70)]);
    }

    #[test]
    fn permutation_routes_agree() {
        let c = cube(2, 1, &[&[2], &[3], &[5], &[7]]);
        let swap = Permutation::transposition(2, 0, 1);
        let direct = c.permute(&swap).unwrap();
        assert_eq!(direct, permute_via_hom(&c, &swap));
        assert_eq!(direct.coeff(1), &[int(5)]);
        assert_eq!(direct.coeff(2), &[int(3)]);
        assert_eq!(direct.coeff(3), &[int(7)]);
        assert!(matches!(
            c.permute(&Permutation::identity(3)),
            Err(FormError::PermutationSize { .. })
        ));
    }

    #[test]
    fn classical_one_form_reads_scaled_coefficients() {
        // x dy on the plane: base (2,3) and first-order coefficients (1,1)
        // give a1(p)*1 + a2(p)*1 with a1 = 0, a2 = x1, so the value is 2.
        let field =
            ClassicalTensorField::new(1, 2, vec![(vec![2], poly(2, "x1"))]).unwrap();
        let form = from_classical(&field).unwrap();
        assert!(form.validated());
        let c = cube(1, 2, &[&[2, 3], &[1, 1]]);
        assert_eq!(integrate(&c, &form).unwrap(), vec![int(2)]);
    }

    #[test]
    fn classical_two_form_is_a_determinant() {
        let field = ClassicalTensorField::new(
            2,
            2,
            vec![(vec![1, 2], poly(2, "1"))],
        )
        .unwrap();
        let form = from_classical(&field).unwrap();
        let c = cube(2, 2, &[&[0, 0], &[1, 2], &[3, 4], &[9, 9]]);
        // det [[1,2],[3,4]] read through the direction coefficients.
        assert_eq!(integrate(&c, &form).unwrap(), vec![int(4 - 6)]);
    }

    #[test]
    fn constant_bodies_fail_homogeneity() {
        let body = FormBody::Coefficient {
            exprs: vec![Expr::parse("b1").unwrap()],
        };
        let form = DifferentialForm::new_unchecked(1, 1, 1, body).unwrap();
        let report = validate_form(&form, 12, 5);
        assert!(!report.all_passed());
        let entry = &report.entries[0];
        assert_eq!(entry.id, "form.homogeneity.direction_1");
        assert!(!entry.pass);
    }

    #[test]
    fn symmetric_bodies_fail_alternation() {
        let body = FormBody::Coefficient {
            exprs: vec![Expr::parse("c1_1*c2_1").unwrap()],
        };
        let form = DifferentialForm::new_unchecked(2, 1, 1, body).unwrap();
        let report = validate_form(&form, 12, 5);
        let by_id = |id: &str| report.entries.iter().find(|e| e.id == id).unwrap();
        assert!(by_id("form.homogeneity.direction_1").pass);
        assert!(by_id("form.homogeneity.direction_2").pass);
        assert!(!by_id("form.alternation.swap_1_2").pass);
    }

    #[test]
    fn degree_zero_forms_are_unconstrained() {
        let body = FormBody::Coefficient {
            exprs: vec![Expr::parse("b1^2 + 1").unwrap()],
        };
        let form = DifferentialForm::new(0, 1, 1, body, 8, 3).unwrap();
        assert!(form.validated());
        let value = integrate(&Microcube::from_base(vec![int(3)]), &form).unwrap();
        assert_eq!(value, vec![int(10)]);
    }

    #[test]
    fn tuples_canonicalize_with_sign() {
        let field = ClassicalTensorField::new(
            2,
            3,
            vec![(vec![2, 1], poly(3, "x3"))],
        )
        .unwrap();
        assert_eq!(field.coefficient(&[1, 2]), poly(3, "x3").neg());
        assert_eq!(field.coefficient(&[2, 1]), poly(3, "x3"));
        assert!(field.coefficient(&[1, 3]).is_zero());
        assert!(field.coefficient(&[1, 1]).is_zero());

        let repeated = ClassicalTensorField::new(2, 3, vec![(vec![1, 1], poly(3, "x1"))]);
        assert!(matches!(repeated, Err(FormError::Antisymmetry { .. })));
        let consistent = ClassicalTensorField::new(
            2,
            3,
            vec![
                (vec![1, 2], poly(3, "x1")),
                (vec![2, 1], poly(3, "0 - x1")),
            ],
        );
        assert!(consistent.is_ok());
        let conflicting = ClassicalTensorField::new(
            2,
            3,
            vec![(vec![1, 2], poly(3, "x1")), (vec![2, 1], poly(3, "x1"))],
        );
        assert!(matches!(
            conflicting,
            Err(FormError::ConflictingCoefficients { .. })
        ));
    }

    #[test]
    fn symbolic_derivative_of_x2_dx1() {
        let field =
            ClassicalTensorField::new(1, 2, vec![(vec![1], poly(2, "x2"))]).unwrap();
        let d = classical_d(&field);
        assert_eq!(d.n(), 2);
        assert_eq!(d.coefficient(&[1, 2]), poly(2, "0 - 1"));
        let dd = classical_d(&d);
        assert!(dd.is_zero());
    }

    #[test]
    fn cube_variables_are_checked_at_construction() {
        let bad = DifferentialForm::new_unchecked(
            2,
            1,
            1,
            FormBody::Coefficient {
                exprs: vec![Expr::parse("c21_1").unwrap()],
            },
        );
        assert!(matches!(bad, Err(FormError::UnknownCubeVariable(v)) if v == "c21_1"));
        let bad = DifferentialForm::new_unchecked(
            1,
            1,
            1,
            FormBody::Coefficient {
                exprs: vec![Expr::parse("b0").unwrap()],
            },
        );
        assert!(matches!(bad, Err(FormError::UnknownCubeVariable(_))));
    }

    #[test]
    fn families_factor_into_validated_slices() {
        let family = FormFamily::new(
            1,
            1,
            1,
            "t",
            vec![Expr::parse("t*c1_1 + t^2*b1*c1_1").unwrap()],
        )
        .unwrap();
        let params = vec![Rational::zero(), int(2), rat(-1, 2)];
        let forms = curry_factorize(&family, &params, 10, 21).unwrap();
        assert_eq!(forms.len(), 3);
        let c = cube(1, 1, &[&[3], &[5]]);
        for (form, x) in forms.iter().zip(&params) {
            assert!(form.validated());
            assert_eq!(
                integrate(&c, form).unwrap(),
                family.eval_rational(&c, x).unwrap()
            );
        }

        let invalid = FormFamily::new(1, 1, 1, "t", vec![Expr::parse("b1 + t").unwrap()]).unwrap();
        match curry_factorize(&invalid, &params, 10, 21).unwrap_err() {
            FormError::ConditionViolated { param, .. } => assert_eq!(param, "0"),
            other => panic!("expected a condition violation, got {other:?}"),
        }
        assert!(matches!(
            FormFamily::new(1, 1, 1, "b1", vec![Expr::parse("b1").unwrap()]),
            Err(FormError::ParamCollision(_))
        ));
    }

    #[test]
    fn linear_combinations_validate() {
        let dx = from_classical(
            &ClassicalTensorField::new(1, 2, vec![(vec![1], poly(2, "1"))]).unwrap(),
        )
        .unwrap();
        let xdy = from_classical(
            &ClassicalTensorField::new(1, 2, vec![(vec![2], poly(2, "x1"))]).unwrap(),
        )
        .unwrap();
        let combo = DifferentialForm::new(
            1,
            2,
            1,
            FormBody::Sum(vec![
                DifferentialForm::new_unchecked(
                    1,
                    2,
                    1,
                    FormBody::Scaled {
                        factor: rat(1, 2),
                        inner: Box::new(dx.clone()),
                    },
                )
                .unwrap(),
                xdy.clone(),
            ]),
            10,
            4,
        )
        .unwrap();
        let c = cube(1, 2, &[&[2, 3], &[4, 6]]);
        let lhs = integrate(&c, &combo).unwrap();
        let dx_val = integrate(&c, &dx).unwrap()[0].clone();
        let xdy_val = integrate(&c, &xdy).unwrap()[0].clone();
        assert_eq!(lhs, vec![dx_val * rat(1, 2) + xdy_val]);
    }
}
