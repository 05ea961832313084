fn main() {
    std::process::exit(dynbelyi::cli::run(std::env::args_os()));
}
