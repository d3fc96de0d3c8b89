fn main() {
    std::process::exit(goss_core::cli::run(std::env::args_os()));
}
