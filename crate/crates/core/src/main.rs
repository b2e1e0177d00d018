use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cavity_vdw::cli::{emit_table, parse_config, run_sweep, CliError, Format, SCHEMA};
use cavity_vdw::validation::run_checks;

#[derive(Parser)]
#[command(name = "cavity-vdw", version, about = "Vacuum forces on atoms and slabs in planar cavities")]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Run the distance sweep described by a scenario file.
    Run { config: PathBuf },
    /// Run built-in consistency checks (all when none are named).
    Validate { names: Vec<String> },
    /// Print the scenario file schema.
    Schema,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Human,
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(args: &Args) -> Result<(), CliError> {
    match &args.command {
        Command::Schema => write_output(&args.out, SCHEMA),
        Command::Run { config } => {
            let text = std::fs::read_to_string(config)?;
            let config = parse_config(&text)?;
            let table = run_sweep(&config)?;
            let format = match args.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Human => Format::Human,
            };
            write_output(&args.out, &emit_table(&table, format))?;
            let failed = table.rows().iter().filter(|r| !r.converged).count();
            if failed > 0 {
                return Err(CliError::NotConverged(failed));
            }
            Ok(())
        }
        Command::Validate { names } => {
            let outcomes = run_checks(names)?;
            let mut report = String::new();
            for o in &outcomes {
                report.push_str(&format!(
                    "[{}] {:<21} {}: computed {:.3e}, tolerance {:.1e}\n",
                    if o.pass { "PASS" } else { "FAIL" },
                    o.check,
                    o.target,
                    o.computed,
                    o.tolerance
                ));
            }
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            report.push_str(&format!("{} of {} passed\n", outcomes.len() - failed, outcomes.len()));
            write_output(&args.out, &report)?;
            if failed > 0 {
                return Err(CliError::Config {
                    path: "validate".into(),
                    message: format!("{failed} check(s) failed"),
                });
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match std::panic::catch_unwind(|| execute(&args)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(3),
    }
}
