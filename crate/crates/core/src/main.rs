fn main() {
    std::process::exit(symspace::cli::run(std::env::args_os()));
}
