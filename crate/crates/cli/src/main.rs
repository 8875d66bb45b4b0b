fn main() {
    std::process::exit(spindex_cli::run(std::env::args_os()));
}
