use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use symdomain::quadrature::SamplingMethod;
use symdomain_verify::config::Settings;
use symdomain_verify::report::{emit_report, Format};
use symdomain_verify::suite::{build_suites, run_suite};
use symdomain_verify::tools::{disk_table, integrate, table_text, IntegrateRequest};
use symdomain_verify::VerifyError;

#[derive(Parser)]
#[command(name = "symdomain", version, about = "Numerical checks on bounded symmetric domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite (`jts`, `calculus`, `hwv`, `quadrature`, `meta`, `potential`,
    /// `threshold`, `monotonicity`), a single check id, or `all`.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted norm of Δ̄_m(q) for one signature.
    Integrate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_method, default_value = "rejection-box")]
        method: SamplingMethod,
        /// Also run the boundary probe.
        #[arg(long)]
        probe: bool,
    },
    /// Norms of q^m on the disk for m = 0..=max-m.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
    },
}

#[derive(Args)]
struct Common {
    /// `ball`, `disk` or `matrix`.
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Comma-separated, non-increasing, e.g. `2,1`.
    #[arg(long)]
    signature: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Overrides every check's tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `json` or `text`.
    #[arg(long)]
    format: Option<String>,
    /// `key = value` file; flags win over it.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn settings(&self) -> Result<Settings, VerifyError> {
        let flags = Settings {
            domain: self.domain.clone(),
            n: self.n,
            p: self.p,
            q: self.q,
            alpha: self.alpha,
            signature: self.signature.clone(),
            seed: self.seed,
            samples: self.samples,
            tol: self.tol,
            out: self.out.clone(),
            format: self.format.clone(),
        };
        Ok(match &self.config {
            Some(path) => Settings::from_file(path)?.overridden_by(flags),
            None => flags,
        })
    }
}

fn parse_method(s: &str) -> Result<SamplingMethod, String> {
    match s {
        "rejection-box" | "mc" => Ok(SamplingMethod::RejectionBox),
        "radial-stratified" | "radial" => Ok(SamplingMethod::RadialStratified),
        other => Err(format!("unknown method {other:?}")),
    }
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), VerifyError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, VerifyError> {
    match cli.command {
        Command::Verify { suite, common } => {
            let s = common.settings()?;
            let format = s.format()?;
            let specs = build_suites(&suite, &s.options()?)?;
            let reports = specs.iter().map(run_suite).collect::<Result<Vec<_>, _>>()?;
            emit_report(&reports, format, s.out.as_deref())?;
            Ok(!reports.iter().any(|r| r.any_failed()))
        }
        Command::Integrate { common, method, probe } => {
            let s = common.settings()?;
            let mut req = IntegrateRequest {
                method,
                probe,
                ..IntegrateRequest::default()
            };
            if let Some(d) = s.domain_config()? {
                req.domain = d;
            }
            if let Some(sig) = s.signature()? {
                req.signature = sig.parts().to_vec();
            }
            req.alpha = s.alpha.unwrap_or(req.alpha);
            req.seed = s.seed.unwrap_or(req.seed);
            req.samples = s.samples.unwrap_or(req.samples);
            let res = integrate(&req)?;
            let text = match s.format()? {
                Format::Json => serde_json::to_string_pretty(&res)? + "\n",
                Format::Text => res.to_text(),
            };
            write_out(&text, s.out.as_ref())?;
            Ok(true)
        }
        Command::Table { common, max_m } => {
            let s = common.settings()?;
            if s.domain_config()?.is_some_and(|d| d.kind != "ball" || d.n != Some(1)) {
                return Err(VerifyError::ConfigInvalid("table runs on the disk only".into()));
            }
            let alpha = s.alpha.unwrap_or(4.0);
            let rows = disk_table(alpha, max_m, s.seed.unwrap_or(42), s.samples.unwrap_or(1_000_000))?;
            let text = match s.format()? {
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
                Format::Text => table_text(alpha, &rows),
            };
            write_out(&text, s.out.as_ref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
