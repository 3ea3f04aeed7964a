//! Short curves on a flat torus, the systole, markings and the thick-part
//! constants ε, F and the quadratic short-curve bound.

use teich_pingpong::torus_model::{self, Slope};
use teich_pingpong::{mcg, Point};

fn main() -> teich_pingpong::Result<()> {
    let tau = Point::I;
    for r in [1.0, 1.5, 5.0, 10.0, 50.0] {
        let n = torus_model::short_curves(tau, r).len();
        println!("R = {r:5}: {n:5} curves, count/R^2 = {:.4}, bound {}", n as f64 / (r * r), torus_model::short_curve_bound(r));
    }
    let hex = Point::new(0.5, 3f64.sqrt() / 2.0)?;
    // three shortest curves, all of length (4/3)^(1/4)
    println!("curves of length <= 1.1 at the hexagonal torus: {:?}", torus_model::short_curves(hex, 1.1).iter().map(Slope::to_string).collect::<Vec<_>>());

    let far = Point::new(7.3, 0.02)?;
    let reduced = torus_model::reduce_to_fundamental(far);
    println!("{far} reduces to {reduced}; systole {:.6}", torus_model::systole(far));

    let tp = torus_model::default_thick_params();
    println!("epsilon = {:.6}, F = {:.6}, short curve coefficient = {:.6}", tp.epsilon, tp.f, tp.short_curve_coeff);
    let (alpha, beta) = torus_model::marking(Point::new(0.2, 1.3)?, tp.f)?;
    println!("marking at 0.2+1.3i: {alpha}, {beta}, intersection {}", torus_model::intersection_number(alpha, beta));
    println!("thick along the axis of [[2,1],[1,1]]: systole >= {:.6}", torus_model::axis_min_systole(&"2,1,1,1".parse()?)?);
    println!("min translation {:.6}", mcg::min_translation());
    Ok(())
}
