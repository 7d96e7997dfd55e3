fn main() {
    std::process::exit(giantring::cli::run(std::env::args_os()));
}
