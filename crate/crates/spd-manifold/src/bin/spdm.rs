fn main() {
    std::process::exit(spd_manifold::cli::run(std::env::args_os()));
}
