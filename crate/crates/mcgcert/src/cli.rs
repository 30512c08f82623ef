//! Command-line interface. [`run`] returns the process exit code.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use mcgcert_core::certify::certify_all;
use mcgcert_core::chart::{default_chart, CurveChart};
use mcgcert_core::params::SurfaceParams;
use mcgcert_core::suite::symn_sweep;

use crate::cache::CachedEval;
use crate::cert_file::{chart_matches, check_certificates, coverage_problems, CertFile};
use crate::chart_file::{dump_chart, load_chart};
use crate::report::{now, render_symn, render_text, CertReportJson, ReportJson};
use crate::runner;

/// Exit code for a run that completed with a failing verdict.
pub const EXIT_FAIL: u8 = 1;
/// Exit code for bad input: unsupported parameters, unreadable files.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "mcgcert", version, about = "Certify involution generating sets for punctured non-orientable mapping class groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full check suite for N_{g,n}.
    Verify {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// Chart file to use instead of the built-in default.
        #[arg(long)]
        chart: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write certificates for every required generator.
    Certify {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-evaluate a certificate file.
    Check {
        #[arg(long)]
        certs: PathBuf,
        #[arg(long)]
        chart: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep the Sym_n generation lemmas for n = 1..=max.
    Symn {
        #[arg(long)]
        max: usize,
    },
    /// Dump the default chart as JSON.
    Chart {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dump: PathBuf,
    },
}

fn chart_for(g: usize, n: usize, file: Option<&Path>) -> Result<CurveChart> {
    let params = SurfaceParams::new(g, n).with_context(|| format!("unsupported parameters (g={g}, n={n})"))?;
    match file {
        Some(path) => {
            let chart = load_chart(path).with_context(|| format!("loading chart {}", path.display()))?;
            if chart.params != params {
                bail!("chart {} is for (g={}, n={}), not (g={g}, n={n})", path.display(), chart.params.g, chart.params.n);
            }
            Ok(chart)
        }
        None => default_chart(&params).context("building the default chart"),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn verdict_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { g, n, chart, json } => {
            let chart = chart_for(g, n, chart.as_deref())?;
            let outcome = runner::run(&chart);
            print!("{}", render_text(&outcome.report));
            if let Some(path) = json {
                write_file(&path, &ReportJson::new(&outcome.report, outcome.cache, now()).to_json())?;
            }
            Ok(verdict_code(outcome.report.overall))
        }
        Command::Certify { g, n, out } => {
            let chart = chart_for(g, n, None)?;
            let certs = certify_all(&chart).context("certifying")?;
            CertFile::new(&chart.params, &certs).write(&out)?;
            println!("wrote {} certificates to {}", certs.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { certs, chart, json } => {
            let file = CertFile::read(&certs)?;
            let params = file.surface_params()?;
            let chart = chart_for(params.g, params.n, chart.as_deref())?;
            if !chart_matches(&chart, &file) {
                bail!("certificate file and chart disagree on (g, n)");
            }
            let loaded = file.decode()?;
            let ev = CachedEval::new(&chart);
            let verdicts = check_certificates(&ev, &loaded);
            let coverage = coverage_problems(&params, &loaded);
            for v in &verdicts {
                let status = if v.passed() { "ok  " } else { "FAIL" };
                let mut line = format!("{status} {}", v.target);
                if !v.homology {
                    line.push_str(" homology");
                }
                if !v.punctures {
                    line.push_str(" punctures");
                }
                for p in &v.problems {
                    line.push_str(&format!(" ({p})"));
                }
                println!("{line}");
            }
            for c in &coverage {
                println!("FAIL {c}");
            }
            let report = CertReportJson::new(file.params.clone(), &verdicts, coverage, now());
            if let Some(path) = json {
                let mut text = serde_json::to_string_pretty(&report)?;
                text.push('\n');
                write_file(&path, &text)?;
            }
            println!("overall: {}", report.overall);
            Ok(verdict_code(report.passed()))
        }
        Command::Symn { max } => {
            let rows = symn_sweep(max);
            print!("{}", render_symn(&rows));
            Ok(verdict_code(rows.iter().all(|r| r.lemma_generated && r.chart_generated != Some(false))))
        }
        Command::Chart { g, n, dump } => {
            let chart = chart_for(g, n, None)?;
            dump_chart(&chart, &dump)?;
            println!("wrote chart for N_{{{g},{n}}} to {}", dump.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
