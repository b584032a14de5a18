fn main() {
    std::process::exit(gq42::cli::run(std::env::args_os()));
}
