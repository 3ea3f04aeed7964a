//! Classifying torus mapping classes by trace, their axes and independence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teich_pingpong::mcg::{self, MappingClass};

fn main() -> teich_pingpong::Result<()> {
    for text in ["0,-1,1,0", "1,1,0,1", "2,1,1,1", "-3,1,-1,0"] {
        let m: MappingClass = text.parse()?;
        print!("{text:>10}  {} (|trace| {})", m.classify(), m.abs_trace());
        if let Ok(a) = mcg::axis(&m) {
            print!("  repelling {:.6} attracting {:.6} Tr {:.6}", a.repelling, a.attracting, a.translation);
        }
        println!();
    }

    let phi: MappingClass = "2,1,1,1".parse()?;
    let psi: MappingClass = "1,1,1,2".parse()?;
    println!("phi, psi independent: {}", mcg::independent(&phi, &psi)?);
    println!("phi, phi^3 independent: {}", mcg::independent(&phi, &phi.pow(3))?);
    println!("[phi, psi] = {}", phi.commutator(&psi));

    // translation is additive along powers and a conjugacy invariant
    let tr = mcg::translation_distance(&phi)?;
    println!("Tr(phi^5) / Tr(phi) = {:.12}", mcg::translation_distance(&phi.pow(5))? / tr);
    println!("Tr(psi phi psi^-1) - Tr(phi) = {:.2e}", mcg::translation_distance(&phi.conjugate_by(&psi))? - tr);
    println!("global minimum l_min = log((3+√5)/2) = {:.12}", mcg::min_translation());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let m = mcg::random_pseudo_anosov(&mut rng, 30);
        println!("random pseudo-Anosov {m}, Tr {:.6}", mcg::translation_distance(&m)?);
    }
    Ok(())
}
