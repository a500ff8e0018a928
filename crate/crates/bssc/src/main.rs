fn main() {
    std::process::exit(bssc::cli::run(std::env::args_os()));
}
