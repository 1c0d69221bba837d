fn main() {
    std::process::exit(mvtcheck::cli::run(std::env::args_os()));
}
