fn main() {
    std::process::exit(fhtoeplitz::cli::run(std::env::args_os()));
}
