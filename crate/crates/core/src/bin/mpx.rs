fn main() {
    std::process::exit(meixner::cli::main());
}
