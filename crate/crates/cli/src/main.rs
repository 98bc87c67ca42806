fn main() {
    std::process::exit(epsilon_cli::main_with_args(std::env::args_os()));
}
