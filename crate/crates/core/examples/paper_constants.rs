//! The literal constant chain for (φ, ψ): L, F, M, B, then R = max{B!+2, (B!+2)L}
//! and N as exact integers. B! has tens of millions of bits, so build with
//! `--release`; the integers are reported by digit count.

use std::time::Instant;

use teich_pingpong::pingpong::{self, CertifyConfig, Mode};
use teich_pingpong::MappingClass;

fn main() -> teich_pingpong::Result<()> {
    let gens: Vec<MappingClass> = vec!["2,1,1,1".parse()?, "1,1,1,2".parse()?];

    // the synthetic checks first: small B, by hand
    println!("B=3 L=1 -> R = {}", pingpong::paper_radius(3, 1.0));
    println!("B=4 L=2 -> R = {}", pingpong::paper_radius(4, 2.0));
    println!("R=8 b=0.5 l=0.96242 -> N = {}", pingpong::power_bound_f64(8.0, 0.5, 0.96242));

    let start = Instant::now();
    let config = CertifyConfig { mode: Mode::PaperFormula, disjoint_samples: 10_000, ..Default::default() };
    let cert = pingpong::certify(&gens, &config)?;
    let pc = cert.paper.as_ref().expect("paper mode carries its constants");
    println!("L = {:.6}  F = {:.6}  M = {:.6}  D_max = {:.3e}", pc.l, pc.thick.f, pc.m, pc.d_max);
    println!("R_short = e^(2(M+L)) F = {:.3}", pc.r_short);
    println!("B = {}", pc.b_count);
    println!("R_paper: {} digits", pc.r_paper.digits());
    println!("N_paper: {} digits", pc.n_paper.digits());
    println!("R_cert = {:.4} (the literal radius dominates it)", cert.r_cert);
    println!("analytic check passed: {}", cert.verification.passed);
    println!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
