fn main() {
    std::process::exit(trajquad::cli::run_cli(std::env::args_os()));
}
