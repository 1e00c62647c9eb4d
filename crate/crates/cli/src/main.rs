use std::process::ExitCode;

fn main() -> ExitCode {
    let threads = std::env::var("QRLAB_THREADS").ok();
    if let Err(e) = qrlab_cli::configure_threads(threads.as_deref()) {
        eprintln!("qrlab: {e}");
        return ExitCode::from(e.exit_code());
    }
    let code = qrlab_cli::main_with_args(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
