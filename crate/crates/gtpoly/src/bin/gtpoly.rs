fn main() {
    std::process::exit(gtpoly::cli::run(std::env::args_os()));
}
