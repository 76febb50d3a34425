fn main() {
    std::process::exit(radii::cli::run(std::env::args_os()));
}
