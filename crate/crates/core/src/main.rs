use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = euclid_kernel::cli::main_with_args(std::env::args_os());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(output.as_bytes());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
