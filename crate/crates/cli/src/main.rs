fn main() {
    std::process::exit(rrcalc_cli::run(std::env::args_os()));
}
