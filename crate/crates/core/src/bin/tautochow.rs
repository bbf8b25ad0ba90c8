fn main() {
    std::process::exit(tautochow::cli::main())
}
