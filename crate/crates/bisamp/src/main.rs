fn main() {
    std::process::exit(bisamp::cli::main());
}
