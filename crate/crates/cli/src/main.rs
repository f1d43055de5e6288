use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use unimodal_cli::{run, Command, Flags, RunConfig, EXIT_MALFORMED};
use unimodal_core::Rational;

/// Exact localization workbench for Hamiltonian circle actions with
/// isolated fixed points.
#[derive(Parser, Debug)]
#[command(name = "unimodal", version)]
struct Args {
    command: Command,

    /// Polytope or fixed-point JSON file (or a directory of them).
    input: PathBuf,

    /// Circle direction, e.g. `1,2,4,8`. Required for polytope input.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    xi: Option<Vec<i64>>,

    /// Class expression for `integrate`, e.g. `omega^4` or `tau:4*canon:v1`.
    #[arg(long)]
    class: Option<String>,

    /// Coefficients for `contradict`, e.g. `1,-1/2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Option<Vec<String>>,

    /// Retry `contradict` with a kernel vector when the claimed combination
    /// does not vanish at index-4 points.
    #[arg(long)]
    solve_kernel: bool,

    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED as u8 } else { 0 });
        }
    };
    let c = match args
        .c
        .map(|v| v.iter().map(|s| s.parse::<Rational>()).collect::<Result<Vec<_>, _>>())
        .transpose()
    {
        Ok(c) => c,
        Err(e) => {
            println!("{}", serde_json::json!({ "error": e.to_string() }));
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    };
    let config = RunConfig {
        command: args.command,
        input_path: args.input,
        xi: args.xi,
        output_path: args.output,
        flags: Flags {
            class: args.class,
            c,
            solve_kernel: args.solve_kernel,
            pretty: args.pretty,
        },
    };
    let outcome = run(&config);
    print!("{}", outcome.json);
    ExitCode::from(outcome.code as u8)
}
