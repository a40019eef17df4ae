fn main() {
    std::process::exit(eopsi_cli::run(std::env::args_os()));
}
