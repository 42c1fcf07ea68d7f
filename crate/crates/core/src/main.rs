fn main() {
    std::process::exit(lf_forge::cli::main());
}
