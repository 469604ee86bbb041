fn main() {
    std::process::exit(quadlab::cli::main_with_args(std::env::args_os()));
}
