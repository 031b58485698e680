fn main() {
    std::process::exit(bcice::cli::main_entry());
}
