fn main() { std::process::exit(resonlab::cli::run(std::env::args_os())); }
