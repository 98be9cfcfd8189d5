fn main() {
    std::process::exit(tangentad::cli::run(std::env::args_os()));
}
