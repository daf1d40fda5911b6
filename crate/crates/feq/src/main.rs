fn main() {
    std::process::exit(feq::runner::cli_main());
}
