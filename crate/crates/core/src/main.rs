fn main() {
    std::process::exit(bubbler::experiment::cli::cli_main(std::env::args_os()));
}
