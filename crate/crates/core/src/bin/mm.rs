//! The `mm` command-line tool.

fn main() {
    std::process::exit(motivic_milnor::cli::main_with_args(std::env::args_os()));
}
