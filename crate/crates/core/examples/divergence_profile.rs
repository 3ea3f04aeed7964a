//! How fast the axes of φ and ψ separate: the profile t ↦ min_s d(c(t), c'(s))
//! as CSV, and the fast-divergence thresholds certified on a grid.

use teich_pingpong::projection::{self, ThresholdConfig};
use teich_pingpong::MappingClass;

fn main() -> teich_pingpong::Result<()> {
    let phi: MappingClass = "2,1,1,1".parse()?;
    let psi: MappingClass = "1,1,1,2".parse()?;
    let pg = projection::pair_geometry(&phi, &psi)?;
    println!("D = {} crossing = {} at {}", pg.d, pg.crossing, pg.o);

    let rows = projection::divergence_profile(&phi, &psi, -3.0, 3.0, 0.5)?;
    projection::write_profile_csv(&rows, std::io::stdout().lock())?;

    let (c1, c2) = projection::based_axes(&phi, &psi)?;
    for delta in [1.0, 2.0, 5.0] {
        let t = projection::properness_threshold(&c1, &c2, delta, 20.0, 0.01)?;
        println!("d_min >= {delta} for |t| >= {t:.2}");
    }

    let th = projection::fast_divergence_thresholds(&phi, &psi, &ThresholdConfig::default())?;
    println!(
        "P+ {:.3} P- {:.3} Q+ {:.3} Q- {:.3}; {} random pairs beyond them all satisfy d(x,y) > max(d(O,x), d(O',y))",
        th.p_plus, th.p_minus, th.q_plus, th.q_minus, th.samples_checked
    );
    Ok(())
}
