fn main() {
    std::process::exit(panharmonia::cli::run(std::env::args()));
}
