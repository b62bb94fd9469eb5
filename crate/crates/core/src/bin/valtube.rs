fn main() -> std::process::ExitCode {
    valtube::cli::main()
}
