fn main() {
    std::process::exit(fgcert::cli::run_from_env());
}
