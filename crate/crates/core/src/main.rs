fn main() {
    std::process::exit(frucht::cli::run(std::env::args_os()));
}
