fn main() {
    std::process::exit(coble_cli::run(std::env::args_os()));
}
