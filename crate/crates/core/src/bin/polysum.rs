fn main() {
    std::process::exit(polysum::cli::run(std::env::args_os()));
}
