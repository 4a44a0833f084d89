fn main() {
    std::process::exit(tmc_forge::cli::main());
}
