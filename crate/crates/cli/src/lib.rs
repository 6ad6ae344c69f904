//! Command-line front end for the twistlab core: parsing of field, curve
//! and polynomial specs, machine-readable reports, and the verification
//! suite.

pub mod commands;
pub mod parse;
pub mod report;
pub mod verify;

use std::io::Write;

/// Exit status contract: 0 success, 1 unparseable input, 2 precondition
/// violation.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;

/// Run the CLI on the given arguments (without the program name), writing
/// the report to `out` and diagnostics to `err`.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match commands::dispatch(args) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Convenience for tests: run and capture output.
pub fn run_capture(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("reports are UTF-8"),
        String::from_utf8(err).expect("diagnostics are UTF-8"),
    )
}
