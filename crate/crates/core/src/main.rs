fn main() {
    std::process::exit(landau_dpp::cli::run(std::env::args_os()));
}
