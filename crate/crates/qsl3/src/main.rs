fn main() {
    std::process::exit(qsl3::cli::main_with(std::env::args_os()));
}
