//! A ping-pong certificate for ⟨φ^N, ψ^N⟩ in certified-search mode: the
//! radius, the power N and every check that was run, as JSON.

use teich_pingpong::pingpong::{self, CertifyConfig, PiSet, Sign};
use teich_pingpong::{mcg, MappingClass};

fn main() -> teich_pingpong::Result<()> {
    let gens: Vec<MappingClass> = vec!["2,1,1,1".parse()?, "1,1,1,2".parse()?];
    let cert = pingpong::certify(&gens, &CertifyConfig { samples: 10_000, ..Default::default() })?;
    print!("{}", cert.to_json());

    // the four tables at S = R + 6b; a point deep along one axis lies in exactly one
    let s = cert.r_cert + 6.0 * cert.b;
    let axes: Vec<_> = gens.iter().map(|g| mcg::axis(g).map(|a| a.axis)).collect::<Result<_, _>>()?;
    let x = axes[0].point_at(s + 1.0);
    for (i, c) in axes.iter().enumerate() {
        for sign in [Sign::Plus, Sign::Minus] {
            let set = PiSet::new(*c, s, sign)?;
            println!("x in Pi(c{}, {:?}S): {}", i + 1, sign, pingpong::pi_membership(&set, x));
        }
    }

    // the smallest input translation gives the same N here: both are l_min
    let own = CertifyConfig { use_input_translation: true, samples: 1_000, ..Default::default() };
    println!("N with the input translation bound: {}", pingpong::certify(&gens, &own)?.n);
    Ok(())
}
