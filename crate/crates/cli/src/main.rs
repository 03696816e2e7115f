fn main() {
    std::process::exit(fuzzmine_cli::run(std::env::args_os()));
}
