fn main() {
    std::process::exit(orecodes::cli::run(std::env::args_os()));
}
