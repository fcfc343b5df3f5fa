fn main() {
    std::process::exit(congruence_dessins::cli::run(std::env::args_os()));
}
