fn main() {
    std::process::exit(hallpoly::cli::main_with_args());
}
