//! Teichmüller distance on the torus: the closed form against Kerckhoff's
//! formula over Farey slopes, and Wolpert's length-ratio bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teich_pingpong::torus_model::{self, Slope};
use teich_pingpong::Point;

fn main() -> teich_pingpong::Result<()> {
    let (a, b) = (Point::I, Point::new(0.0, 2.0)?);
    println!("d(i, 2i) = {:.15} at depth 1: {:.15}", torus_model::teich_dist(a, b), torus_model::kerckhoff_dist(a, b, 1)?);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let p = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0))?;
        let q = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0))?;
        let exact = torus_model::teich_dist(p, q);
        print!("{:.4} ", exact);
        for depth in [2, 10, 500] {
            print!(" depth {depth}: {:+.2e}", torus_model::kerckhoff_dist(p, q, depth)? - exact);
        }
        println!();
    }

    let slopes: Vec<Slope> = ["1/0", "0/1", "1/1", "-1/1", "2/1", "3/5"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (x, y) = (Point::new(0.1, 1.1)?, Point::new(0.9, 0.4)?);
    let d = torus_model::teich_dist(x, y);
    println!(
        "max length ratio {:.6} <= e^d = {:.6} <= e^(2d) = {:.6}",
        torus_model::wolpert_check(x, y, &slopes)?,
        d.exp(),
        (2.0 * d).exp()
    );
    Ok(())
}
