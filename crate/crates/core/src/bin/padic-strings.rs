fn main() {
    std::process::exit(padic_strings::cli::run(std::env::args_os()));
}
