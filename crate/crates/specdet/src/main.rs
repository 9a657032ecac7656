use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use specdet::cli::{self, Command, JobConfig};
use specdet::zetafuncs::EMParams;

/// Spectral determinants with an explicit branch cut of the logarithm.
#[derive(Parser)]
#[command(name = "specdet", version, about)]
struct Args {
    /// classify | zeta | det | compare | sweep | witness
    command: String,
    /// JSON job description.
    #[arg(long)]
    config: PathBuf,
    /// Output path for CSV commands (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check results against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Branch cut angle, overriding the config.
    #[arg(long)]
    beta: Option<f64>,
    /// Second branch cut angle for compare, overriding the config.
    #[arg(long)]
    beta2: Option<f64>,
}

fn em_params_from_env() -> Result<EMParams, String> {
    match std::env::var("SPECDET_EM_PARAMS") {
        Ok(raw) => {
            let parts: Vec<&str> = raw.split(',').collect();
            let parse = |s: &str| s.trim().parse::<usize>().ok();
            match parts.as_slice() {
                [m, k] => match (parse(m), parse(k)) {
                    (Some(m), Some(k)) => {
                        EMParams::new(m, k).map_err(|e| format!("SPECDET_EM_PARAMS: {e}"))
                    }
                    _ => Err(format!("SPECDET_EM_PARAMS must be \"M,K\", got \"{raw}\"")),
                },
                _ => Err(format!("SPECDET_EM_PARAMS must be \"M,K\", got \"{raw}\"")),
            }
        }
        Err(_) => Ok(EMParams::default()),
    }
}

fn build_job(args: &Args) -> Result<(JobConfig, EMParams), String> {
    let params = em_params_from_env()?;
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    let mut job = cli::parse_config(&text).map_err(|e| e.to_string())?;
    job.command = Some(Command::parse(&args.command).map_err(|e| e.to_string())?);
    if args.beta.is_some() {
        job.cut = args.beta;
    }
    if args.beta2.is_some() {
        job.cut2 = args.beta2;
    }
    if let Some(out) = &args.out {
        job.out = Some(out.clone());
    }
    if args.oracle {
        job.oracle = true;
    }
    Ok((job, params))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (job, params) = match build_job(&args) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("ERROR: {msg}");
            return ExitCode::from(cli::EXIT_ERROR as u8);
        }
    };
    match cli::run(&job, &params) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ERROR: {e}");
            ExitCode::from(cli::EXIT_ERROR as u8)
        }
    }
}
