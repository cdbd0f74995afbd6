fn main() {
    std::process::exit(tribonacci::cli::run(std::env::args_os()));
}
