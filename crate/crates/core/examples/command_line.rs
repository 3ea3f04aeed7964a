//! The command line front end driven in process; each call mirrors
//! `teich-pingpong <args>` and prints the exit code.

use teich_pingpong::cli;

fn main() {
    let cache = std::env::temp_dir().join("teich-pingpong-example-cache.json");
    let cache = cache.to_str().expect("utf-8 temp dir");
    let runs: &[&[&str]] = &[
        &["classify", "--matrix", "2,1,1,1"],
        &["classify", "--matrix", "1,1,0,1"],
        &["axis", "--matrix", "-3,1,-1,0"],
        &["pair", "--m1", "2,1,1,1", "--m2", "1,1,1,2"],
        &["profile", "--m1", "2,1,1,1", "--m2", "1,1,1,2", "--t-min", "-1", "--t-max", "1", "--step", "0.5"],
        &["teich", "--tau1", "0,1", "--tau2", "0,2", "--farey-depth", "1"],
        &["pingpong", "--gen", "1,1,0,1", "--gen", "2,1,1,1"],
        &["certify-free", "--gen", "0,-1,1,0", "--gen", "1,2,0,1", "--power", "1", "--max-word-len", "2"],
        &["certify-free", "--gen", "2,1,1,1", "--gen", "1,1,1,2", "--mode", "paper"],
    ];
    for args in runs {
        println!("$ teich-pingpong {}", args.join(" "));
        let argv: Vec<&str> = ["teich-pingpong", "--cache", cache].into_iter().chain(args.iter().copied()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run_with(argv, &mut out, &mut err);
        // the word report is long; its first lines are enough here
        for line in String::from_utf8_lossy(&out).lines().take(8) {
            println!("{line}");
        }
        print!("{}", String::from_utf8_lossy(&err));
        println!("[exit {code}]\n");
    }
}
