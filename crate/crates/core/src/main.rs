fn main() {
    std::process::exit(lie_sphere::cli::run(std::env::args_os()));
}
