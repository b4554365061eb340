fn main() {
    std::process::exit(tnum::report::run(std::env::args_os()));
}
