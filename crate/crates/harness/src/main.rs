fn main() {
    std::process::exit(moind_harness::cli::main_with_args(std::env::args_os()));
}
