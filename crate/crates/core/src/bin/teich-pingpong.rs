fn main() {
    std::process::exit(teich_pingpong::cli::run(std::env::args_os()));
}
