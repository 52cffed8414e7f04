//! The exterior derivative as an alternating sum of infinitesimal boundary
//! integrals, with the permutation bookkeeping that makes the sum alternate
//! and the cross-check against coefficientwise symbolic differentiation.

use crate::duality::{
    map_direction_scale, map_insert_cycle, space_d, space_product, space_r, CarveMap,
};
use crate::forms::{
    classical_d, from_classical, integrate, random_classical_field, random_microcube,
    render_value, shuffle_regroup, ClassicalTensorField, DifferentialForm, FormBody, FormError,
    Microcube, ShuffleSplit,
};
use crate::monomial::Monomial;
use crate::perm::Permutation;
use crate::report::Report;
use crate::sample::sub_rng;
use crate::scalar::{Rational, RationalCtx, RingCtx};
use num_traits::Zero;
use rand::Rng;

/// Cycle direction `i` of a degree-(n+1) microcube to the last slot and read
/// that slot as a square-zero scalar extension, leaving a degree-n microcube
/// whose entries carry the fringe along direction `i` in their nilpotent
/// part.
pub fn shuffle_boundary<C: RingCtx>(
    ctx: &C,
    cube: &Microcube<C::Elem>,
    i: usize,
) -> Result<ShuffleSplit<C>, FormError> {
    shuffle_regroup(ctx, cube, i)
}

/// The i-th boundary integral: evaluate a degree-n form on the i-th shuffle
/// of a degree-(n+1) microcube and take the first-order part of the result.
pub fn integral_i<C: RingCtx>(
    ctx: &C,
    form: &DifferentialForm,
    cube: &Microcube<C::Elem>,
    i: usize,
) -> Result<Vec<C::Elem>, FormError> {
    let (eps_ctx, shuffled) = shuffle_boundary(ctx, cube, i)?;
    let value = form.eval_in(&eps_ctx, &shuffled)?;
    let eps = Monomial::generator(1, 0);
    Ok(value.iter().map(|v| eps_ctx.coeff(v, &eps)).collect())
}

/// The defining alternating sum Σᵢ (−1)^{i+1} ∫ᵢ(ω, γ) over all directions
/// of the cube. This is the reference route to dω(γ); the form produced by
/// [`exterior_derivative`] must agree with it everywhere.
pub fn boundary_sum<C: RingCtx>(
    ctx: &C,
    form: &DifferentialForm,
    cube: &Microcube<C::Elem>,
) -> Result<Vec<C::Elem>, FormError> {
    let mut acc = vec![ctx.zero(); form.e()];
    for i in 1..=cube.n() {
        let part = integral_i(ctx, form, cube, i)?;
        for (slot, v) in acc.iter_mut().zip(&part) {
            *slot = if i % 2 == 1 {
                ctx.add(slot, v)
            } else {
                ctx.sub(slot, v)
            };
        }
    }
    Ok(acc)
}

/// The derivative of a degree-n form as a validated degree-(n+1) form. The
/// body is the boundary alternating sum; construction runs the homogeneity
/// and alternation validator with the given budget.
pub fn exterior_derivative(
    form: &DifferentialForm,
    trials: usize,
    seed: u64,
) -> Result<DifferentialForm, FormError> {
    DifferentialForm::new(
        form.n() + 1,
        form.m(),
        form.e(),
        FormBody::Exterior(Box::new(form.clone())),
        trials,
        seed,
    )
}

/// The relabeling of the n remaining directions induced by shuffling
/// direction `i` out of a σ-relabeled degree-(n+1) cube: the unique δ with
/// shuffle(γ^σ, i) = shuffle(γ, σ⁻¹(i))^δ, given by collapsing σ around the
/// slot pair (σ⁻¹(i), i).
pub fn residual_permutation(sigma: &Permutation, i: usize) -> Permutation {
    let total = sigma.len();
    assert!(i >= 1 && i <= total, "direction out of range");
    let s = sigma.inverse().apply(i - 1) + 1;
    let images = (1..total)
        .map(|j| {
            let v = if j < s {
                sigma.apply(j - 1) + 1
            } else {
                sigma.apply(j) + 1
            };
            let w = if v < i { v } else { v - 1 };
            w - 1
        })
        .collect();
    Permutation::new(images).expect("collapsing a bijection around a matched pair is a bijection")
}

/// Exhaustive check of the sign carried by the residual relabeling:
/// ε(δ) = (−1)^{σ⁻¹(i)−i}·ε(σ) for every σ and every direction, one report
/// entry per cube degree.
pub fn residual_sign_check(max_total: usize, seed: u64) -> Report {
    let mut report = Report::new("residual permutation signs", seed);
    for total in 1..=max_total {
        let mut witness = None;
        let mut cases = 0usize;
        'outer: for sigma in Permutation::enumerate(total) {
            for i in 1..=total {
                let delta = residual_permutation(&sigma, i);
                let s = sigma.inverse().apply(i - 1) + 1;
                let expected = if (s + i) % 2 == 0 {
                    sigma.sign()
                } else {
                    -sigma.sign()
                };
                cases += 1;
                if delta.sign() != expected {
                    witness = Some(format!(
                        "σ={sigma}, i={i}: δ={delta} has sign {}, expected {expected}",
                        delta.sign()
                    ));
                    break 'outer;
                }
            }
        }
        report.record(
            format!("exterior.residual_sign.total_{total}"),
            "ε(δ) = (−1)^{σ⁻¹(i)−i}·ε(σ)",
            format!("all σ acting on {total} directions, all i ({cases} cases)"),
            witness.is_none(),
            witness,
        );
    }
    report
}

/// The cycle on R × D^total that fixes the scaling parameter and moves the
/// last infinitesimal coordinate into slot `i`.
fn extended_cycle(total: usize, i: usize) -> CarveMap {
    let space = space_product(&space_r(1), &space_d(total));
    let names = space_d(total);
    let names = names.coordinates();
    let mut components = vec![space.coordinates()[0].clone()];
    for u in 1..=total {
        let v = if u < i {
            u
        } else if u == i {
            total
        } else {
            u - 1
        };
        components.push(names[v - 1].clone());
    }
    let refs: Vec<&str> = components.iter().map(String::as_str).collect();
    CarveMap::parse(space.clone(), space, &refs).expect("coordinate relabelings always compile")
}

/// Check, at the level of dual algebra maps, that scaling a direction
/// commutes with the insertion cycle: C∘S_{ins_i(j)} = S_j∘C̃ for every
/// slot i and scaled direction j, where ins_i(j) tracks where the cycle
/// takes direction j from. One report entry per cube degree.
pub fn shuffle_scaling_hom_check(max_total: usize, seed: u64) -> Report {
    let mut report = Report::new("scaling through insertion cycles", seed);
    for total in 1..=max_total {
        let mut witness = None;
        'outer: for i in 1..=total {
            let cycle = map_insert_cycle(total - 1, i);
            let cycle_ext = extended_cycle(total, i);
            for j in 1..=total {
                let j_prime = if j < i {
                    j
                } else if j == i {
                    total
                } else {
                    j - 1
                };
                let scale_jp = map_direction_scale(total, j_prime);
                let scale_j = map_direction_scale(total, j);
                let lhs = cycle.dual_hom().then(scale_jp.dual_hom());
                let rhs = scale_j.dual_hom().then(cycle_ext.dual_hom());
                match (lhs, rhs) {
                    (Ok(lhs), Ok(rhs)) => {
                        if lhs != rhs {
                            witness = Some(format!("i={i}, j={j}: dual composites disagree"));
                            break 'outer;
                        }
                    }
                    (lhs, rhs) => {
                        witness = Some(format!(
                            "i={i}, j={j}: composition failed ({:?} / {:?})",
                            lhs.err(),
                            rhs.err()
                        ));
                        break 'outer;
                    }
                }
            }
        }
        report.record(
            format!("exterior.scaling_cycle.total_{total}"),
            "C∘S_{ins_i(j)} = S_j∘C̃",
            format!("all i, j ≤ {total}"),
            witness.is_none(),
            witness,
        );
    }
    report
}

/// Check that the boundary alternating sum is alternating under every
/// relabeling of the cube directions, on random classical forms and random
/// cubes: Σᵢ(−1)^{i+1}∫ᵢ(ω, γ^σ) = ε(σ)·Σᵢ(−1)^{i+1}∫ᵢ(ω, γ). One report
/// entry per cube degree, exhaustive over σ.
pub fn boundary_alternation_check(max_total: usize, m: usize, trials: usize, seed: u64) -> Report {
    let mut report = Report::new("boundary sum alternation", seed);
    for total in 1..=max_total {
        let id = format!("exterior.boundary_alternation.total_{total}");
        let mut rng = sub_rng(seed, &id);
        let outcome = (|| -> Result<Option<String>, FormError> {
            let field = random_classical_field(&mut rng, total - 1, m, 2);
            let omega = from_classical(&field)?;
            for sigma in Permutation::enumerate(total) {
                for _ in 0..trials {
                    let cube = random_microcube(&mut rng, total, m);
                    let moved = cube.permute(&sigma)?;
                    let lhs = boundary_sum(&RationalCtx, &omega, &moved)?;
                    let raw = boundary_sum(&RationalCtx, &omega, &cube)?;
                    let rhs: Vec<Rational> = if sigma.sign() == 1 {
                        raw
                    } else {
                        raw.iter().map(|v| -v).collect()
                    };
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "σ={sigma}: sum(γ^σ)={}, ε(σ)·sum(γ)={}",
                            render_value(&lhs),
                            render_value(&rhs)
                        )));
                    }
                }
            }
            Ok(None)
        })();
        let (pass, witness) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(w)) => (false, Some(w)),
            Err(err) => (false, Some(format!("evaluation failed: {err}"))),
        };
        report.record(
            id,
            "Σᵢ(−1)^{i+1}∫ᵢ(ω,γ^σ) = ε(σ)·Σᵢ(−1)^{i+1}∫ᵢ(ω,γ)",
            format!("all σ, {trials} cubes each, m={m}"),
            pass,
            witness,
        );
    }
    report
}

/// Cross-check the boundary-sum derivative of a classical form against the
/// symbolic derivative of its coefficient field, and check that both second
/// derivatives vanish. The two routes share no differentiation code.
pub fn classical_derivative_check(
    field: &ClassicalTensorField,
    trials: usize,
    seed: u64,
) -> Result<Report, FormError> {
    let n = field.n();
    let m = field.m();
    let mut report = Report::new(format!("derivative oracle (n={n}, m={m})"), seed);
    let omega = from_classical(field)?;
    let d_form = exterior_derivative(&omega, trials, sub_rng(seed, "exterior.first").gen())?;
    let dd_form = exterior_derivative(&d_form, trials, sub_rng(seed, "exterior.second").gen())?;
    let symbolic = from_classical(&classical_d(field))?;
    let symbolic_dd = classical_d(&classical_d(field));

    let mut run = |id: &str, anchor: &str, body: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> Result<Option<String>, FormError>| {
        let mut rng = sub_rng(seed, id);
        let mut witness = None;
        for _ in 0..trials {
            match body(&mut rng) {
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
            id,
            anchor,
            format!("{trials} cubes, n={n}, m={m}"),
            witness.is_none(),
            witness,
        );
    };

    run(
        "exterior.oracle.sum_route",
        "dω(γ) = Σᵢ(−1)^{i+1}∫ᵢ(ω,γ)",
        &mut |rng| {
            let cube = random_microcube(rng, n + 1, m);
            let via_form = integrate(&cube, &d_form)?;
            let via_sum = boundary_sum(&RationalCtx, &omega, &cube)?;
            Ok((via_form != via_sum).then(|| {
                format!(
                    "form route {}, sum route {}",
                    render_value(&via_form),
                    render_value(&via_sum)
                )
            }))
        },
    );
    run(
        "exterior.oracle.matches_symbolic",
        "d(Â) = (dA)̂",
        &mut |rng| {
            let cube = random_microcube(rng, n + 1, m);
            let boundary = integrate(&cube, &d_form)?;
            let direct = integrate(&cube, &symbolic)?;
            Ok((boundary != direct).then(|| {
                format!(
                    "boundary route {}, symbolic route {}",
                    render_value(&boundary),
                    render_value(&direct)
                )
            }))
        },
    );
    run("exterior.oracle.dd_zero", "d(dω) = 0", &mut |rng| {
        let cube = random_microcube(rng, n + 2, m);
        let value = integrate(&cube, &dd_form)?;
        Ok(value
            .iter()
            .any(|v| !v.is_zero())
            .then(|| format!("d(dω)(γ) = {}", render_value(&value))))
    });
    report.record(
        "exterior.oracle.symbolic_dd_zero",
        "d(dA) = 0",
        format!("symbolic, n={n}, m={m}"),
        symbolic_dd.is_zero(),
        (!symbolic_dd.is_zero()).then(|| "second symbolic derivative has nonzero entries".to_string()),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{coordinate_names, Expr, Poly};
    use crate::scalar::int;

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
    fn derivative_of_a_coordinate_reads_the_direction() {
        // The 0-form x1 on R^1 has derivative dx1: on a tangent cube the
        // value is exactly the direction coefficient.
        let field = ClassicalTensorField::new(0, 1, vec![(vec![], poly(1, "x1"))]).unwrap();
        let omega = from_classical(&field).unwrap();
        let d = exterior_derivative(&omega, 10, 3).unwrap();
        let c = cube(1, 1, &[&[4], &[7]]);
        assert_eq!(integrate(&c, &d).unwrap(), vec![int(7)]);
    }

    #[test]
    fn derivative_of_x_dy_is_the_area_form() {
        let field = ClassicalTensorField::new(1, 2, vec![(vec![2], poly(2, "x1"))]).unwrap();
        let omega = from_classical(&field).unwrap();
        let d = exterior_derivative(&omega, 10, 3).unwrap();
        assert!(d.validated());
        // det((1,2),(3,4)) = -2; the fringe coefficient c12 must not leak in.
        let c = cube(2, 2, &[&[5, -2], &[1, 2], &[3, 4], &[9, 9]]);
        assert_eq!(integrate(&c, &d).unwrap(), vec![int(-2)]);
        let via_sum = boundary_sum(&RationalCtx, &omega, &c).unwrap();
        assert_eq!(via_sum, vec![int(-2)]);
    }

    #[test]
    fn residual_relabeling_matches_the_shuffle() {
        let mut rng = sub_rng(7, "residual");
        for sigma in Permutation::enumerate(3) {
            for i in 1..=3 {
                let s = sigma.inverse().apply(i - 1) + 1;
                let delta = residual_permutation(&sigma, i);
                for _ in 0..3 {
                    let c = random_microcube(&mut rng, 3, 2);
                    let moved = c.permute(&sigma).unwrap();
                    let (_, lhs) = shuffle_boundary(&RationalCtx, &moved, i).unwrap();
                    let (_, base) = shuffle_boundary(&RationalCtx, &c, s).unwrap();
                    let rhs = base.permute(&delta).unwrap();
                    assert_eq!(lhs, rhs, "σ={sigma}, i={i}");
                }
            }
        }
    }

    #[test]
    fn residual_signs_hold_exhaustively() {
        let report = residual_sign_check(4, 0);
        assert!(report.all_passed(), "{}", report.render_text());
    }

    #[test]
    fn scaling_commutes_with_cycles_at_the_hom_level() {
        let report = shuffle_scaling_hom_check(3, 0);
        assert!(report.all_passed(), "{}", report.render_text());
    }

    #[test]
    fn boundary_sums_alternate() {
        let report = boundary_alternation_check(3, 2, 3, 11);
        assert!(report.all_passed(), "{}", report.render_text());
    }

    #[test]
    fn derivative_routes_agree_and_square_to_zero() {
        let field = ClassicalTensorField::new(
            1,
            3,
            vec![
                (vec![1], poly(3, "x2*x3")),
                (vec![2], poly(3, "x1^2")),
                (vec![3], poly(3, "x1 + x2")),
            ],
        )
        .unwrap();
        let report = classical_derivative_check(&field, 6, 13).unwrap();
        assert!(report.all_passed(), "{}", report.render_text());
    }
}
