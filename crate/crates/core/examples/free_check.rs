//! Exhaustive search for relations among short words: it finds the ones
//! that exist and none among the certified powers.

use teich_pingpong::oracle::{self, FreeCheckConfig};
use teich_pingpong::pingpong::{self, CertifyConfig};
use teich_pingpong::MappingClass;

fn report(name: &str, gens: &[MappingClass], n: u64, len: usize) -> teich_pingpong::Result<()> {
    let r = oracle::free_check(gens, n, len, FreeCheckConfig::default())?;
    let first = r.violations.first().map(|v| format!(", first {} = {}", v.word, v.reduced)).unwrap_or_default();
    println!("{name:>14}: {} words up to length {len}, {} relations{first}", r.words_checked.0, r.violations.len());
    Ok(())
}

fn main() -> teich_pingpong::Result<()> {
    println!("reduced words on 2 generators of length 1, 2, 3: {} {} {}",
        oracle::count_reduced_words(2, 1), oracle::count_reduced_words(2, 2), oracle::count_reduced_words(2, 3));

    report("rotation", &["0,-1,1,0".parse()?], 1, 2)?;
    report("Sanov pair", &["1,2,0,1".parse()?, "1,0,2,1".parse()?], 1, 8)?;
    let phi: MappingClass = "2,1,1,1".parse()?;
    report("commuting pair", &[phi.clone(), phi.pow(2)], 1, 4)?;

    let gens = vec![phi, "1,1,1,2".parse()?];
    let cert = pingpong::certify(&gens, &CertifyConfig { samples: 2_000, ..Default::default() })?;
    let r = oracle::cross_validate_report(&cert, 6, FreeCheckConfig { parallel: true, ..Default::default() })?;
    print!("{}", r.to_json());
    Ok(())
}
