fn main() -> std::process::ExitCode {
    xdlab::cli::main()
}
