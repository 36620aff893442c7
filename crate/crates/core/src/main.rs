fn main() -> std::process::ExitCode {
    astrap::cli::main()
}
