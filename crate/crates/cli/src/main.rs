fn main() {
    std::process::exit(gaplab_cli::run(std::env::args_os()));
}
