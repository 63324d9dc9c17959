fn main() {
    std::process::exit(listcolor::cli::run(std::env::args_os()));
}
