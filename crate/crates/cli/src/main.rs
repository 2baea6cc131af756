use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, err) = vardec_cli::commands::main_with(std::env::args(), &mut std::io::stdin().lock());
    // a closed pipe is not worth reporting
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    if let Some(msg) = err {
        eprint!("{msg}");
        if !msg.ends_with('\n') {
            eprintln!();
        }
    }
    ExitCode::from(out.code)
}
