fn main() {
    std::process::exit(rankeq::cli::run(std::env::args_os()));
}
