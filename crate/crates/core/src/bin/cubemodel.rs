fn main() {
    std::process::exit(cubemodel::cli::main_with_args(std::env::args_os()));
}
