fn main() {
    std::process::exit(tropjac::cli::main());
}
