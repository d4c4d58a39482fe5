fn main() -> std::process::ExitCode {
    operadics::cli::main()
}
