fn main() {
    std::process::exit(bter::cli::main_with_args(std::env::args_os().collect()));
}
