use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use holomorse::algebra::{parse_rat, Rat, Scalar};
use holomorse::cli::{self, Command, Options, EXIT_INPUT};
use holomorse::Execution;

/// Equivariant holomorphic Morse inequalities and localization formulas.
#[derive(Parser, Debug)]
#[command(name = "holomorse", version)]
struct Args {
    /// lefschetz | morse | dual | classical | verify | vanish | chi | nut | rs | oscillator | emit | run
    command: String,

    /// Problem file (JSON). `run` takes the command from the file.
    file: Option<PathBuf>,

    /// Truncation level for chamber expansions.
    #[arg(long = "T", value_name = "RATIONAL", value_parser = parse_rat_arg)]
    cutoff: Option<Rat>,

    /// Rarita-Schwinger parameter.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,

    /// Theta weight assignment, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rat_arg)]
    weights: Option<Vec<Rat>>,

    /// Value substituted for b.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar_arg)]
    b: Option<Scalar>,

    /// Value substituted for y.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar_arg)]
    y: Option<Scalar>,

    /// Oscillator deformation parameters, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    eps: Vec<f64>,

    /// Oscillator grid points.
    #[arg(long, default_value_t = 2000)]
    grid: usize,

    /// Oscillator half-width.
    #[arg(long = "L", default_value_t = 12.0)]
    half_width: f64,

    /// Machine-readable output.
    #[arg(long)]
    json: bool,

    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parse_scalar_arg(s: &str) -> Result<Scalar, String> {
    s.parse().map_err(|e: holomorse::Error| e.to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match real_main(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}

fn real_main(args: &Args) -> holomorse::Result<i32> {
    let file = args.file.as_deref().map(cli::parse_problem).transpose()?;
    let name = if args.command == "run" {
        file.as_ref()
            .and_then(|f| f.task.command.clone())
            .ok_or_else(|| holomorse::Error::Precondition("`run` needs a file with a `command` key".into()))?
    } else {
        args.command.clone()
    };
    let cmd: Command = name.parse()?;
    let opts = Options {
        cutoff: args.cutoff,
        k: args.k,
        weights: args.weights.clone(),
        b: args.b.clone(),
        y: args.y.clone(),
        eps: args.eps.clone(),
        grid: args.grid,
        half_width: args.half_width,
        exec: if args.sequential { Execution::Sequential } else { Execution::auto() },
    };
    let report = cli::run(cmd, file.as_ref(), &opts)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report.json)?);
    } else {
        print!("{}", report.text);
    }
    Ok(report.exit)
}
