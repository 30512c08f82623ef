fn main() -> std::process::ExitCode {
    mcgcert::cli::run(std::env::args_os())
}
