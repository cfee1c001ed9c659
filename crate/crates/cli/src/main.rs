fn main() {
    std::process::exit(fiscalis_cli::run(std::env::args_os()));
}
