fn main() {
    std::process::exit(ricciflat_cli::run());
}
