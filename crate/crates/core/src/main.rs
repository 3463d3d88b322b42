fn main() {
    std::process::exit(awpoly::cli::main_with_args(std::env::args_os()));
}
