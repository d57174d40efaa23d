fn main() {
    std::process::exit(cmc_psl2r_cli::run(std::env::args_os()));
}
