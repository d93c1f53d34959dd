fn main() {
    std::process::exit(quantaloid::cli::main_entry(std::env::args_os()));
}
