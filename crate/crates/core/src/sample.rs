//! Deterministic random instances for the law checks.
//!
//! Every check derives its own generator from (seed, label) through a fixed
//! FNV-1a mix, so reports are reproducible for a given seed no matter which
//! subset of checks runs or in what order. Rationals are kept small (single
//! digit numerators, tiny denominators) so products across towers of
//! extensions stay readable in witnesses.

use crate::algebra::{AlgElement, Algebra, AlgebraCtx};
use crate::expr::Expr;
use crate::prolong::WPoint;
use crate::scalar::{int, rat, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for one labeled check under a run seed. FNV-1a over the label,
/// folded with the seed, so the stream is stable across runs and platforms.
pub fn sub_rng(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^= seed.wrapping_mul(0x9e3779b97f4a7c15);
    ChaCha8Rng::seed_from_u64(h)
}

/// Small exact rational: numerator in -9..=9, denominator in 1..=4.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let numer = rng.gen_range(-9i64..=9);
    let denom = rng.gen_range(1i64..=4);
    rat(numer, denom)
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

/// Random element with one small coefficient per basis monomial. Requires a
/// finite-dimensional algebra.
pub fn random_element(rng: &mut ChaCha8Rng, algebra: &Algebra) -> AlgElement<Rational> {
    let ctx = AlgebraCtx::rational(algebra.clone());
    let basis = algebra
        .weil_basis()
        .expect("random elements need a finite basis");
    ctx.element(
        basis
            .into_iter()
            .map(|m| (m, random_rational(rng)))
            .collect::<Vec<_>>(),
    )
}

pub fn random_wpoint(rng: &mut ChaCha8Rng, algebra: &Algebra, dim: usize) -> WPoint<Rational> {
    let coords = (0..dim).map(|_| random_element(rng, algebra)).collect();
    WPoint::new(algebra.clone(), coords).expect("coordinates built over the same algebra")
}

/// Random polynomial expression over the given variables with total degree
/// at most `degree`: a sum of a few random monomial terms.
pub fn random_poly_expr(rng: &mut ChaCha8Rng, vars: &[&str], degree: u32) -> Expr {
    let terms = rng.gen_range(1..=3);
    let mut acc: Option<Expr> = None;
    for _ in 0..terms {
        let mut term = Expr::constant(int(rng.gen_range(-3i64..=3)));
        let mut budget = degree;
        for v in vars {
            if budget == 0 {
                break;
            }
            let e = rng.gen_range(0..=budget.min(2));
            budget -= e;
            for _ in 0..e {
                term = Expr::Mul(Box::new(term), Box::new(Expr::var(v)));
            }
        }
        acc = Some(match acc {
            None => term,
            Some(prev) => Expr::Add(Box::new(prev), Box::new(term)),
        });
    }
    acc.expect("at least one term")
}
