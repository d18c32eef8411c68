fn main() {
    std::process::exit(pursuit_lab::cli::run_from_args(std::env::args_os()));
}
