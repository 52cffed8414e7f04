use weilform::scalar::rat;
use weilform::{prolong_rational, AlgebraCtx, FpAlgebra, Monomial, SmoothMap, WPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The second-order line: k[X]/(X^3).
    let w = FpAlgebra::new(vec!["X".into()], vec![Monomial::new(vec![3])])?;
    let ctx = AlgebraCtx::rational(w.clone());

    // A point of R with coordinate 2 + X + 1/2 X^2.
    let coord = ctx.element([
        (Monomial::unit(1), rat(2, 1)),
        (Monomial::new(vec![1]), rat(1, 1)),
        (Monomial::new(vec![2]), rat(1, 2)),
    ]);
    let p = WPoint::new(w, vec![coord])?;

    // f(x) = x^3, prolonged by substituting the nilpotent coordinate.
    let f = SmoothMap::parse(1, &["x1^3"])?;
    println!("T(f)(p) = {}", prolong_rational(&f, &p)?);
    Ok(())
}
