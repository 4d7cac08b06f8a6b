use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(value) = std::env::var("SEMAP_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("UsageError: SEMAP_THREADS must be a positive integer, got {value:?}");
                return ExitCode::from(2);
            }
        }
    }
    let outcome = semap::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
