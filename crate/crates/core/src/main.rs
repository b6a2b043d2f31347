fn main() {
    std::process::exit(cubnf::cli::run(std::env::args_os()));
}
