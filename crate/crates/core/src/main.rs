fn main() {
    std::process::exit(primegraph::cli::run(std::env::args_os()));
}
