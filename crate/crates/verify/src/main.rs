fn main() {
    std::process::exit(sbl_verify::run_cli(std::env::args_os()));
}
