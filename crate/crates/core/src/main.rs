fn main() {
    std::process::exit(gdalg::cli::run(std::env::args_os()));
}
