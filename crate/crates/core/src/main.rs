fn main() {
    std::process::exit(tangent_prolong::cli::main_with_args(std::env::args_os()));
}
