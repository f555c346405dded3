fn main() {
    std::process::exit(cwe::run(std::env::args_os()));
}
