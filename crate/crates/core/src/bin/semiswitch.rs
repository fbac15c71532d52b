fn main() -> std::process::ExitCode {
    semiswitch::cli::main()
}
