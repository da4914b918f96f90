fn main() {
    std::process::exit(relayec_cli::run(std::env::args_os()));
}
