fn main() {
    std::process::exit(polysparse::cli::run(std::env::args_os()));
}
