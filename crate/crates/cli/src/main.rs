fn main() {
    std::process::exit(torusq_cli::execute(std::env::args_os()));
}
