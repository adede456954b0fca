fn main() {
    std::process::exit(udesign::cli::run());
}
