fn main() {
    std::process::exit(dynlab::runner::cli_main(std::env::args_os()));
}
