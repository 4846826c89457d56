fn main() {
    std::process::exit(dirichlet_core::cli::run(std::env::args_os()));
}
