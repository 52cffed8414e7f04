//! Ground scalars and ring contexts.
//!
//! Every law in this crate is checked over exact rationals. 64-bit floats
//! exist only so truncated Taylor lifts of transcendental primitives can be
//! demonstrated; nothing structural is certified over floats.
//!
//! Arithmetic is threaded through [`RingCtx`] rather than implemented on the
//! element types directly. That keeps element arithmetic generic over towers:
//! an algebra element whose coefficients are themselves algebra elements is
//! handled by nesting contexts, which is what evaluating a form body over a
//! nilpotent scalar extension requires.

use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants in tests and fixtures.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Transcendental primitives with known Taylor rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Primitive {
    Exp,
    Sin,
    Cos,
}

impl Primitive {
    pub fn name(self) -> &'static str {
        match self {
            Primitive::Exp => "exp",
            Primitive::Sin => "sin",
            Primitive::Cos => "cos",
        }
    }

    pub fn from_name(name: &str) -> Option<Primitive> {
        match name {
            "exp" => Some(Primitive::Exp),
            "sin" => Some(Primitive::Sin),
            "cos" => Some(Primitive::Cos),
            _ => None,
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum EvalError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` has no exact rational value; evaluate over floats instead")]
    InexactPrimitive(Primitive),
    #[error("`{0}` needs nilpotent scalars, but the algebra has free generators")]
    PrimitiveNeedsNilpotents(Primitive),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
}

/// A commutative unital ring containing the rationals, presented as a context
/// object so that rings whose elements carry no intrinsic structure reference
/// (nested quotient-algebra elements) still get zero/one constructors.
pub trait RingCtx: Clone {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Embed an exact rational constant. Takes the context because towers of
    /// extensions need it to shape the result.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, q: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Human-readable rendering used in reports and failure witnesses.
    fn render(&self, a: &Self::Elem) -> String;

    /// `[f(x), f'(x), ..., f^(count-1)(x)]` for a transcendental primitive.
    fn prim_derivs(
        &self,
        p: Primitive,
        x: &Self::Elem,
        count: usize,
    ) -> Result<Vec<Self::Elem>, EvalError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_ratio(q), a)
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for item in items {
            acc = self.add(&acc, item);
        }
        acc
    }
}

/// Exact rationals: the ground field every law is certified over.
#[derive(Clone, Copy, Default, Debug)]
pub struct RationalCtx;

impl RingCtx for RationalCtx {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn from_ratio(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn render(&self, a: &Rational) -> String {
        render_rational(a)
    }

    fn prim_derivs(
        &self,
        p: Primitive,
        _x: &Rational,
        _count: usize,
    ) -> Result<Vec<Rational>, EvalError> {
        Err(EvalError::InexactPrimitive(p))
    }
}

/// Floats, for demonstrating truncated Taylor lifts only.
#[derive(Clone, Copy, Default, Debug)]
pub struct FloatCtx;

impl RingCtx for FloatCtx {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn neg(&self, a: &f64) -> f64 {
        -a
    }

    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }

    fn from_ratio(&self, q: &Rational) -> f64 {
        q.to_f64().expect("rational out of f64 range")
    }

    fn is_zero(&self, a: &f64) -> bool {
        *a == 0.0
    }

    fn render(&self, a: &f64) -> String {
        format!("{a}")
    }

    fn prim_derivs(&self, p: Primitive, x: &f64, count: usize) -> Result<Vec<f64>, EvalError> {
        let mut out = Vec::with_capacity(count);
        for j in 0..count {
            let v = match p {
                Primitive::Exp => x.exp(),
                Primitive::Sin => match j % 4 {
                    0 => x.sin(),
                    1 => x.cos(),
                    2 => -x.sin(),
                    _ => -x.cos(),
                },
                Primitive::Cos => match j % 4 {
                    0 => x.cos(),
                    1 => -x.sin(),
                    2 => -x.cos(),
                    _ => x.sin(),
                },
            };
            out.push(v);
        }
        Ok(out)
    }
}

/// `-3/2`, `4`, `0` style rendering without a trailing `/1`.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().magnitude(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rendering_drops_unit_denominators() {
        assert_eq!(render_rational(&int(5)), "5");
        assert_eq!(render_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(render_rational(&rat(2, 4)), "1/2");
        assert_eq!(render_rational(&int(0)), "0");
    }

    #[test]
    fn rational_primitives_are_rejected() {
        let ctx = RationalCtx;
        let err = ctx.prim_derivs(Primitive::Exp, &int(1), 2).unwrap_err();
        assert_eq!(err, EvalError::InexactPrimitive(Primitive::Exp));
    }

    #[test]
    fn float_sin_derivative_cycle() {
        let ctx = FloatCtx;
        let ds = ctx.prim_derivs(Primitive::Sin, &0.5f64, 5).unwrap();
        assert_eq!(ds[0], 0.5f64.sin());
        assert_eq!(ds[1], 0.5f64.cos());
        assert_eq!(ds[2], -0.5f64.sin());
        assert_eq!(ds[3], -0.5f64.cos());
        assert_eq!(ds[4], 0.5f64.sin());
    }
}
