fn main() {
    std::process::exit(steerscope::cli::run(std::env::args_os()));
}
