fn main() {
    std::process::exit(ldpc_workbench::cli::main_with_args(std::env::args_os()));
}
