use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let panel = std::env::var(ghostloop_cli::PANEL_ENV).ok();
    let out = ghostloop_cli::run(std::env::args_os(), panel.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
