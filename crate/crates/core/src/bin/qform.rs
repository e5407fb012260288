fn main() {
    std::process::exit(qform::cli::main_with_args(std::env::args_os()));
}
