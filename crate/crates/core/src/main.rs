fn main() {
    std::process::exit(a2wc::cli::run(std::env::args_os()));
}
