fn main() {
    std::process::exit(grpforge::cli::run(std::env::args_os()));
}
