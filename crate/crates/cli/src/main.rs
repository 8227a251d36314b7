fn main() {
    std::process::exit(multipoint::run(std::env::args_os()));
}
