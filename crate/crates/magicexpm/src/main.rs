fn main() {
    std::process::exit(magicexpm::cli::run());
}
