fn main() {
    std::process::exit(regulus::cli::run(std::env::args_os()));
}
