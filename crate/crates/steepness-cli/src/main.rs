use std::process::ExitCode;

fn main() -> ExitCode {
    let out = steepness_cli::run(std::env::args_os());
    if let Some(msg) = &out.message {
        if out.code == 0 {
            print!("{msg}");
        } else {
            eprintln!("{msg}");
        }
    }
    let mut code = out.code;
    if let Some(report) = &out.report {
        if let Err(e) = steepness_cli::emit(report, report.config.output.as_deref()) {
            eprintln!("error: {e:#}");
            code = 1;
        }
    }
    ExitCode::from(code as u8)
}
