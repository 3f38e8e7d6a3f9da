fn main() {
    std::process::exit(arboreal_cli::run_to_stdout(std::env::args().skip(1)));
}
