//! Points, geodesics and nearest-point projection in the model plane.
//! Distances are half the usual hyperbolic ones: d(i, 2i) = ½ log 2.

use teich_pingpong::hyp2::{self, geodesic_through};
use teich_pingpong::{BoundaryPoint, Geodesic, Mobius, Point};

fn main() -> teich_pingpong::Result<()> {
    let i = Point::I;
    let two_i = Point::new(0.0, 2.0)?;
    println!("d(i, 2i) = {:.12}  (½ log 2 = {:.12})", hyp2::dist(i, two_i), 0.5 * 2f64.ln());

    let c = Geodesic::standard();
    let z = Point::new(3.0, 4.0)?;
    let (foot, t) = c.project(z);
    println!("project 3+4i onto (0, inf): foot {foot}, t = {t:.6}, distance {:.6}", c.dist_to(z));

    // a semicircle, its arclength parametrization and the foot of a point
    let s = Geodesic::from_endpoints(BoundaryPoint::Finite(-1.0), BoundaryPoint::Finite(3.0))?;
    for t in [-1.0, 0.0, 0.5, 2.0] {
        let p = s.point_at(t);
        println!("c({t:4}) = {p}  back to t = {:.12}", s.project_param(p));
    }

    // isometries carry geodesics to geodesics and preserve distance
    let m = Mobius::new(2.0, 1.0, 1.0, 1.0)?;
    let (a, b) = (Point::new(0.3, 0.2)?, Point::new(-1.0, 4.0)?);
    println!("d(a, b) = {:.12}, d(ma, mb) = {:.12}", hyp2::dist(a, b), hyp2::dist(m.apply(a), m.apply(b)));
    let through = geodesic_through(a, b)?;
    println!("geodesic through a, b: {} -> {}", through.endpoint_neg(), through.endpoint_pos());
    Ok(())
}
