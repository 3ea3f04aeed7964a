//! The constants of the projection machinery: the contraction constant b,
//! the thin-triangle constant and Morse constants for quasi-geodesics.

use std::f64::consts::FRAC_PI_2;

use teich_pingpong::projection::{self, ball_projection_diameter, derive_morse, model_constants};
use teich_pingpong::{Geodesic, Point};

fn main() -> teich_pingpong::Result<()> {
    let c = Geodesic::standard();
    // a ball reaching exactly to the geodesic; the closed form is asinh(cos θ)
    println!("theta    diam(proj B(x, d(x,c)))   asinh(cos theta)");
    for k in 1..=6 {
        let theta = FRAC_PI_2 * k as f64 / 7.0;
        let x = Point::new(theta.cos(), theta.sin())?;
        println!("{theta:.4}   {:.12}            {:.12}", ball_projection_diameter(&c, x), theta.cos().asinh());
    }
    let mc = model_constants();
    println!("b = {:.6} (asinh 1 with a 5% margin)", mc.b);
    println!("delta = {:.6}", projection::thin_triangle_delta());
    for (k, kappa) in [(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (3.0, 2.0)] {
        println!("M({k}, {kappa}) = {:.6}", derive_morse(k, kappa)?);
    }
    Ok(())
}
