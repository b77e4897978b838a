fn main() -> std::process::ExitCode {
    trailcone::cli::main()
}
