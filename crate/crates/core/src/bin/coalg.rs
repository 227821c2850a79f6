fn main() {
    std::process::exit(coalg_kernel::cli::main_with_args(std::env::args_os()));
}
