fn main() {
    std::process::exit(cicalc::cli::main());
}
