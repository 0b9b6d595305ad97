fn main() {
    std::process::exit(preventkit::cli::run(std::env::args_os()));
}
