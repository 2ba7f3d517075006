fn main() {
    std::process::exit(cf_cli::run(std::env::args_os()));
}
