fn main() {
    let code = catbox_cli::run(std::env::args().collect());
    std::process::exit(code);
}
