fn main() {
    std::process::exit(twistgab::cli::run(std::env::args_os()));
}
