fn main() {
    std::process::exit(cghz::cli::run(std::env::args_os()));
}
