//! Expressions, polynomials and smooth maps.
//!
//! Expressions are the textual interface of the crate: hom images, carve map
//! components, smooth map bodies and classical field coefficients are all
//! written as infix strings over named variables with rational literals.
//! Evaluation is generic over [`RingCtx`], so one body can be run on plain
//! rationals, on algebra elements, or on nested towers of them.
//!
//! `Poly` is the exact normal form of a polynomial expression relative to an
//! ordered variable list; it is what symbolic differentiation works on.

use crate::monomial::Monomial;
use crate::scalar::{EvalError, Primitive, Rational, RationalCtx, RingCtx};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("variable `{0}` is not available here")]
    UnknownVariable(String),
    #[error("expression is not polynomial: it calls `{0}`")]
    NotPolynomial(Primitive),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Const(Rational),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Primitive, Box<Expr>),
}

impl Expr {
    pub fn parse(input: &str) -> Result<Expr, ExprError> {
        Parser::new(input).parse_all()
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn constant(q: Rational) -> Expr {
        Expr::Const(q)
    }

    /// All variable names, in first-use order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk_variables(&mut out);
        out
    }

    fn walk_variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.walk_variables(out);
                b.walk_variables(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.walk_variables(out),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_polynomial() && b.is_polynomial()
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_polynomial(),
            Expr::Call(..) => false,
        }
    }

    /// Evaluate in any ring, resolving variables through `lookup`.
    pub fn eval<C: RingCtx>(
        &self,
        ctx: &C,
        lookup: &dyn Fn(&str) -> Option<C::Elem>,
    ) -> Result<C::Elem, EvalError> {
        match self {
            Expr::Const(q) => Ok(ctx.from_ratio(q)),
            Expr::Var(v) => lookup(v).ok_or_else(|| EvalError::UnknownVariable(v.clone())),
            Expr::Add(a, b) => Ok(ctx.add(&a.eval(ctx, lookup)?, &b.eval(ctx, lookup)?)),
            Expr::Sub(a, b) => Ok(ctx.sub(&a.eval(ctx, lookup)?, &b.eval(ctx, lookup)?)),
            Expr::Mul(a, b) => Ok(ctx.mul(&a.eval(ctx, lookup)?, &b.eval(ctx, lookup)?)),
            Expr::Neg(a) => Ok(ctx.neg(&a.eval(ctx, lookup)?)),
            Expr::Pow(a, n) => Ok(ctx.pow(&a.eval(ctx, lookup)?, *n)),
            Expr::Call(p, a) => {
                let x = a.eval(ctx, lookup)?;
                Ok(ctx.prim_derivs(*p, &x, 1)?.remove(0))
            }
        }
    }

    /// Replace every variable with another expression.
    pub fn substitute(&self, lookup: &dyn Fn(&str) -> Option<Expr>) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var(v) => lookup(v).unwrap_or_else(|| self.clone()),
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.substitute(lookup)),
                Box::new(b.substitute(lookup)),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.substitute(lookup)),
                Box::new(b.substitute(lookup)),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.substitute(lookup)),
                Box::new(b.substitute(lookup)),
            ),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(lookup))),
            Expr::Pow(a, n) => Expr::Pow(Box::new(a.substitute(lookup)), *n),
            Expr::Call(p, a) => Expr::Call(*p, Box::new(a.substitute(lookup))),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(q) => write!(f, "{}", crate::scalar::render_rational(q)),
            Expr::Var(v) => f.write_str(v),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, n) => write!(f, "({a}^{n})"),
            Expr::Call(p, a) => write!(f, "{p}({a})"),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Parser<'a> {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(&mut self) -> Result<Expr, ExprError> {
        let e = self.parse_sum()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            let c = self.input[self.pos..].chars().next().unwrap();
            if c == '/' {
                return self
                    .error("`/` is only allowed inside rational literals like 1/2");
            }
            return self.error(format!("unexpected `{c}`"));
        }
        Ok(e)
    }

    fn parse_sum(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.parse_product()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.parse_product()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.parse_product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_product(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.parse_power()?;
        while self.eat(b'*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.parse_power()?));
        }
        Ok(acc)
    }

    fn parse_power(&mut self) -> Result<Expr, ExprError> {
        let base = self.parse_atom()?;
        if self.eat(b'^') {
            let n = self.parse_nat()?;
            Ok(Expr::Pow(Box::new(base), n))
        } else {
            Ok(base)
        }
    }

    fn parse_nat(&mut self) -> Result<u32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an exponent");
        }
        self.input[start..self.pos]
            .parse::<u32>()
            .map_err(|_| ExprError::Parse {
                offset: start,
                message: "exponent out of range".to_string(),
            })
    }

    fn parse_atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.parse_power()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_sum()?;
                if !self.eat(b')') {
                    return self.error("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.parse_literal(),
            Some(c) if c.is_ascii_alphabetic() => self.parse_name(),
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of expression"),
        }
    }

    /// Integer or rational literal; `/` binds only digits into one literal.
    fn parse_literal(&mut self) -> Result<Expr, ExprError> {
        let numer = self.parse_int_digits()?;
        let save = self.pos;
        if self.eat(b'/') {
            self.skip_ws();
            if self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_digit())
            {
                let denom = self.parse_int_digits()?;
                if denom.is_zero() {
                    return Err(ExprError::Parse {
                        offset: save,
                        message: "zero denominator".to_string(),
                    });
                }
                return Ok(Expr::Const(Rational::new(numer, denom)));
            }
            // Not a literal denominator: division is not an operator here.
            return Err(ExprError::Parse {
                offset: save,
                message: "`/` is only allowed inside rational literals like 1/2".to_string(),
            });
        }
        Ok(Expr::Const(Rational::from_integer(numer)))
    }

    fn parse_int_digits(&mut self) -> Result<num_bigint::BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        Ok(self.input[start..self.pos]
            .parse::<num_bigint::BigInt>()
            .expect("digits parse as an integer"))
    }

    fn parse_name(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric()
                || self.bytes[self.pos] == b'_'
                || self.bytes[self.pos] == b'@')
        {
            self.pos += 1;
        }
        let name = &self.input[start..self.pos];
        if let Some(p) = Primitive::from_name(name) {
            if !self.eat(b'(') {
                return self.error(format!("`{name}` needs an argument list"));
            }
            let arg = self.parse_sum()?;
            if !self.eat(b')') {
                return self.error("expected `)`");
            }
            return Ok(Expr::Call(p, Box::new(arg)));
        }
        Ok(Expr::Var(name.to_string()))
    }
}

/// Exact polynomial normal form relative to an ordered variable list.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: Vec<String>) -> Poly {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_expr(expr: &Expr, vars: &[String]) -> Result<Poly, ExprError> {
        let mut poly = Self::build(expr, vars)?;
        poly.terms.retain(|_, c| !c.is_zero());
        Ok(poly)
    }

    fn build(expr: &Expr, vars: &[String]) -> Result<Poly, ExprError> {
        let width = vars.len();
        match expr {
            Expr::Const(q) => {
                let mut terms = BTreeMap::new();
                if !q.is_zero() {
                    terms.insert(Monomial::unit(width), q.clone());
                }
                Ok(Poly {
                    vars: vars.to_vec(),
                    terms,
                })
            }
            Expr::Var(v) => {
                let i = vars
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| ExprError::UnknownVariable(v.clone()))?;
                let mut terms = BTreeMap::new();
                terms.insert(Monomial::generator(width, i), Rational::one());
                Ok(Poly {
                    vars: vars.to_vec(),
                    terms,
                })
            }
            Expr::Add(a, b) => Ok(Self::build(a, vars)?.add(&Self::build(b, vars)?)),
            Expr::Sub(a, b) => Ok(Self::build(a, vars)?.add(&Self::build(b, vars)?.neg())),
            Expr::Mul(a, b) => Ok(Self::build(a, vars)?.mul(&Self::build(b, vars)?)),
            Expr::Neg(a) => Ok(Self::build(a, vars)?.neg()),
            Expr::Pow(a, n) => {
                let base = Self::build(a, vars)?;
                let mut acc = Poly::constant(vars.to_vec(), Rational::one());
                for _ in 0..*n {
                    acc = acc.mul(&base);
                }
                Ok(acc)
            }
            Expr::Call(p, _) => Err(ExprError::NotPolynomial(*p)),
        }
    }

    pub fn constant(vars: Vec<String>, q: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::unit(vars.len()), q);
        }
        Poly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, q: &Rational) -> Poly {
        if q.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Partial derivative in the `i`-th variable.
    pub fn partial(&self, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            terms.insert(
                Monomial::new(exps),
                c * Rational::from_integer((e as i64).into()),
            );
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn eval<C: RingCtx>(&self, ctx: &C, values: &[C::Elem]) -> C::Elem {
        debug_assert_eq!(values.len(), self.vars.len());
        let mut acc = ctx.zero();
        for (m, c) in &self.terms {
            let mut term = ctx.from_ratio(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = ctx.mul(&term, &ctx.pow(&values[i], e));
                }
            }
            acc = ctx.add(&acc, &term);
        }
        acc
    }

    pub fn eval_rational(&self, values: &[Rational]) -> Rational {
        self.eval(&RationalCtx, values)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = crate::scalar::render_rational(c);
                if m.is_unit() {
                    cs
                } else if cs == "1" {
                    m.display(&self.vars)
                } else if cs == "-1" {
                    format!("-{}", m.display(&self.vars))
                } else {
                    format!("{cs}*{}", m.display(&self.vars))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A map `R^domain -> R^codomain` given by one expression per component over
/// the variables `x1..x<domain>`. Polynomial when no component calls a
/// transcendental primitive.
#[derive(Clone, PartialEq, Debug)]
pub struct SmoothMap {
    domain: usize,
    components: Vec<Expr>,
    polynomial: bool,
}

/// The fixed coordinate names of `R^n` bodies: `x1..xn`.
pub fn coordinate_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl SmoothMap {
    pub fn new(domain: usize, components: Vec<Expr>) -> Result<SmoothMap, ExprError> {
        let names = coordinate_names(domain);
        for c in &components {
            for v in c.variables() {
                if !names.contains(&v) {
                    return Err(ExprError::UnknownVariable(v));
                }
            }
        }
        let polynomial = components.iter().all(Expr::is_polynomial);
        Ok(SmoothMap {
            domain,
            components,
            polynomial,
        })
    }

    pub fn parse(domain: usize, components: &[&str]) -> Result<SmoothMap, ExprError> {
        let exprs = components
            .iter()
            .map(|s| Expr::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        SmoothMap::new(domain, exprs)
    }

    pub fn identity(n: usize) -> SmoothMap {
        SmoothMap {
            domain: n,
            components: (1..=n).map(|i| Expr::var(&format!("x{i}"))).collect(),
            polynomial: true,
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    pub fn component_poly(&self, i: usize) -> Result<Poly, ExprError> {
        Poly::from_expr(&self.components[i], &coordinate_names(self.domain))
    }

    /// `self` after `inner`: substitute the inner components for the
    /// variables of `self`.
    pub fn after(&self, inner: &SmoothMap) -> Result<SmoothMap, ExprError> {
        if inner.codomain() != self.domain {
            return Err(ExprError::Eval(EvalError::Arity {
                expected: self.domain,
                got: inner.codomain(),
            }));
        }
        let names = coordinate_names(self.domain);
        let components = self
            .components
            .iter()
            .map(|c| {
                c.substitute(&|v| {
                    names
                        .iter()
                        .position(|n| n == v)
                        .map(|i| inner.components[i].clone())
                })
            })
            .collect();
        SmoothMap::new(inner.domain, components)
    }

    pub fn eval_in<C: RingCtx>(
        &self,
        ctx: &C,
        args: &[C::Elem],
    ) -> Result<Vec<C::Elem>, EvalError> {
        if args.len() != self.domain {
            return Err(EvalError::Arity {
                expected: self.domain,
                got: args.len(),
            });
        }
        let lookup = |v: &str| -> Option<C::Elem> {
            v.strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= args.len())
                .map(|i| args[i - 1].clone())
        };
        self.components
            .iter()
            .map(|c| c.eval(ctx, &lookup))
            .collect()
    }

    pub fn eval_rational(&self, args: &[Rational]) -> Result<Vec<Rational>, EvalError> {
        self.eval_in(&RationalCtx, args)
    }
}

impl fmt::Display for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "R^{} -> R^{}: ({})", self.domain, self.codomain(), parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_rational_literals_and_powers() {
        let e = Expr::parse("1/2*x1^2 - 3").unwrap();
        let p = Poly::from_expr(&e, &coordinate_names(1)).unwrap();
        assert_eq!(p.eval_rational(&[int(4)]), int(5));
        assert_eq!(p.eval_rational(&[int(1)]), rat(-5, 2));
    }

    #[test]
    fn division_outside_literals_is_rejected() {
        let err = Expr::parse("x1/2").unwrap_err();
        assert!(matches!(err, ExprError::Parse { .. }));
        assert!(err.to_string().contains("rational literals"));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match Expr::parse("x1 + ") {
            Err(ExprError::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn poly_partial_derivatives() {
        // d/dx1 (x1^2*x2 + x2) = 2*x1*x2
        let e = Expr::parse("x1^2*x2 + x2").unwrap();
        let p = Poly::from_expr(&e, &coordinate_names(2)).unwrap();
        let d = p.partial(0);
        assert_eq!(d.to_string(), "2*x1*x2");
        let d2 = p.partial(1);
        assert_eq!(d2.to_string(), "1 + x1^2");
    }

    #[test]
    fn smooth_map_rejects_stray_variables() {
        let err = SmoothMap::parse(1, &["x2"]).unwrap_err();
        assert_eq!(err, ExprError::UnknownVariable("x2".to_string()));
    }

    #[test]
    fn composition_substitutes_components() {
        let f = SmoothMap::parse(1, &["x1^2", "x1 + 1"]).unwrap();
        let g = SmoothMap::parse(2, &["x1 * x2"]).unwrap();
        let gf = g.after(&f).unwrap();
        assert_eq!(
            gf.eval_rational(&[int(3)]).unwrap(),
            vec![int(36)] // 9 * 4
        );
    }

    #[test]
    fn transcendental_components_are_flagged() {
        let f = SmoothMap::parse(1, &["exp(x1)"]).unwrap();
        assert!(!f.is_polynomial());
        assert!(matches!(
            f.component_poly(0),
            Err(ExprError::NotPolynomial(Primitive::Exp))
        ));
        // Exact evaluation refuses the primitive.
        assert!(matches!(
            f.eval_rational(&[int(0)]),
            Err(EvalError::InexactPrimitive(Primitive::Exp))
        ));
    }
}
