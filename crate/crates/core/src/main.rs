fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(artor::cli::run_cli(&argv));
}
