fn main() {
    std::process::exit(homshift::cli::main());
}
