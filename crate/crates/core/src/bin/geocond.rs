fn main() {
    std::process::exit(geocond::cli::main());
}
