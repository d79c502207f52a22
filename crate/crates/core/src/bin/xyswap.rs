fn main() {
    std::process::exit(xyswap_core::cli::run(std::env::args_os()));
}
