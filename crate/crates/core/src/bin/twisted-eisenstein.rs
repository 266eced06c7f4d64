fn main() {
    std::process::exit(twisted_eisenstein::cli::main_with_args(std::env::args_os()));
}
