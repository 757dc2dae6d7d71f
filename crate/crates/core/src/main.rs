fn main() {
    std::process::exit(contactforge::cli::dispatch(std::env::args_os()));
}
