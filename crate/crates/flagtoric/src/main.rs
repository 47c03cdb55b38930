fn main() {
    std::process::exit(flagtoric::cli::main_with_args(std::env::args_os()));
}
