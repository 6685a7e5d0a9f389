fn main() {
    std::process::exit(fusion_center::cli::main_with_args(std::env::args_os()));
}
