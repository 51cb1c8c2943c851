fn main() {
    std::process::exit(tq_core::cli::run(std::env::args_os()));
}
