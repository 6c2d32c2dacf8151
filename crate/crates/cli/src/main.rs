fn main() {
    std::process::exit(subcodec::run(std::env::args_os()));
}
