fn main() {
    std::process::exit(mgt_cli::run(std::env::args_os()));
}
