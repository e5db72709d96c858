fn main() {
    std::process::exit(rcurves_cli::main_with_args(std::env::args_os()));
}
