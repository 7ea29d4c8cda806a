fn main() {
    std::process::exit(flatfront::run(std::env::args_os()));
}
