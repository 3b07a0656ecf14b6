fn main() {
    std::process::exit(cubesq::cli::main_entry());
}
