use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use renorm_entropy::convergence::{
    trace_binomial, trace_discrete_uniform, trace_poisson, ConvergenceTrace, DEFAULT_NS,
    DEFAULT_RATES,
};
use renorm_entropy::entropy::EntropyReport;
use renorm_entropy::figures::{Figure, DEFAULT_STEPS};
use renorm_entropy::quantiles::{iqnr, quantile};
use renorm_entropy::{parse_law, Law};

/// Classical and renormalized entropies of probability laws.
///
/// Laws are written as `family:key=value,...`, for example
/// `gaussian:a=1`, `gamma:lam=3,a=1`, `binomial:n=100,p=0.5` or
/// `mix:q=0.5,(gaussian:a=1),(uniform:a=2)`, optionally followed by
/// `|std` or `|affine:a=2,b=1`.
#[derive(Debug, Parser)]
#[command(name = "renorm-entropy", version)]
struct Cli {
    /// Output format; defaults to json for single laws and csv for tables.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every entropy that applies to a law.
    Entropy { spec: String },
    /// The quantile Q(p).
    Quantile { spec: String, p: f64 },
    /// The interquantile range Q(1-p) - Q(p), for 0 < p < 1/2.
    Iqnr { spec: String, p: f64 },
    /// Entropies along a sequence of discrete laws.
    Converge {
        #[arg(value_enum)]
        kind: Sequence,
        /// Success probability of the binomial laws.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Width of the discrete uniform laws.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Numbers of trials or points.
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<u64>>,
        /// Poisson rates.
        #[arg(long, value_delimiter = ',')]
        lams: Option<Vec<f64>>,
    },
    /// Curve data for figures 1 to 6.
    Figure {
        id: u8,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sequence {
    Binomial,
    Poisson,
    Duniform,
}

/// Failure modes and their exit codes.
enum Failure {
    /// Bad input; nothing was written.
    Usage(String),
    /// The output was written but is partial.
    Domain,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain) => ExitCode::from(3),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn law(spec: &str) -> Result<Law, Failure> {
    parse_law(spec).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut buf = Vec::new();
    let outcome = render(cli, &mut buf);
    if matches!(outcome, Err(Failure::Usage(_))) {
        return outcome;
    }
    match &cli.out {
        Some(path) => File::create(path)?.write_all(&buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    outcome
}

fn render(cli: &Cli, out: &mut Vec<u8>) -> Result<(), Failure> {
    match &cli.command {
        Command::Entropy { spec } => {
            let report = EntropyReport::new(&law(spec)?);
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(out, &report)?,
                Format::Csv => table(out, [EntropyRow::from(&report)])?,
            }
            if let Some(e) = &report.failure {
                eprintln!("warning: {e}");
                return Err(Failure::Domain);
            }
        }
        Command::Quantile { spec, p } => {
            let law = law(spec)?;
            let value = quantile(&law, *p).map_err(|e| Failure::Usage(e.to_string()))?;
            scalar(out, cli.format, spec, *p, "quantile", value)?;
        }
        Command::Iqnr { spec, p } => {
            let law = law(spec)?;
            let value = iqnr(&law, *p).map_err(|e| Failure::Usage(e.to_string()))?;
            scalar(out, cli.format, spec, *p, "iqnr", value)?;
        }
        Command::Converge {
            kind,
            p,
            a,
            ns,
            lams,
        } => {
            let ns = ns.clone().unwrap_or_else(|| DEFAULT_NS.to_vec());
            let trace = match kind {
                Sequence::Binomial => trace_binomial(*p, &ns),
                Sequence::Poisson => {
                    trace_poisson(&lams.clone().unwrap_or_else(|| DEFAULT_RATES.to_vec()))
                }
                Sequence::Duniform => trace_discrete_uniform(*a, &ns),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Json => json(out, &trace)?,
                Format::Csv => table(out, trace_rows(&trace))?,
            }
        }
        Command::Figure {
            id,
            from,
            to,
            steps,
        } => {
            let figure = Figure::from_id(*id)
                .ok_or_else(|| Failure::Usage(format!("unknown figure `{id}`; expected 1 to 6")))?;
            let (lo, hi) = figure.default_range();
            let curve = figure
                .curve(from.unwrap_or(lo), to.unwrap_or(hi), *steps)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Json => json(
                    out,
                    &FigureData {
                        figure: figure.id(),
                        column: figure.column(),
                        points: curve
                            .iter()
                            .map(|&(lambda, value)| FigurePoint { lambda, value })
                            .collect(),
                    },
                )?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["lambda", figure.column()])?;
                    for (lambda, value) in curve {
                        let cell = value.map(|v| v.to_string()).unwrap_or_default();
                        w.write_record([lambda.to_string(), cell])?;
                    }
                    w.flush()?;
                }
            }
        }
    }
    Ok(())
}

fn json<T: Serialize>(out: &mut Vec<u8>, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.push(b'\n');
    Ok(())
}

fn table<T: Serialize>(
    out: &mut Vec<u8>,
    rows: impl IntoIterator<Item = T>,
) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn scalar(
    out: &mut Vec<u8>,
    format: Option<Format>,
    spec: &str,
    p: f64,
    name: &'static str,
    value: f64,
) -> Result<(), Failure> {
    match format {
        None => writeln!(out, "{value}")?,
        Some(Format::Json) => {
            let mut map = serde_json::Map::new();
            map.insert("law".into(), spec.into());
            map.insert("p".into(), p.into());
            map.insert(name.into(), value.into());
            json(out, &map)?;
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["law", "p", name])?;
            w.write_record([spec.to_string(), p.to_string(), value.to_string()])?;
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct EntropyRow<'a> {
    law: &'a str,
    H: Option<f64>,
    h: Option<f64>,
    H_tilde: Option<f64>,
    h_tilde: Option<f64>,
    h_hat: Option<f64>,
    h_bar: Option<f64>,
    rho_tilde: Option<f64>,
    error: Option<&'static str>,
}

impl<'a> From<&'a EntropyReport> for EntropyRow<'a> {
    fn from(r: &'a EntropyReport) -> Self {
        EntropyRow {
            law: &r.law,
            H: r.shannon,
            h: r.h,
            H_tilde: r.shannon_tilde,
            h_tilde: r.h_tilde,
            h_hat: r.h_hat,
            h_bar: r.h_bar,
            rho_tilde: r.rho_tilde,
            error: r.error,
        }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct TraceRow {
    index: f64,
    H: f64,
    H_tilde: f64,
    target: f64,
    gap: f64,
}

fn trace_rows(trace: &ConvergenceTrace) -> impl Iterator<Item = TraceRow> + '_ {
    trace.points.iter().map(|p| TraceRow {
        index: p.index,
        H: p.H,
        H_tilde: p.H_tilde,
        target: trace.target,
        gap: p.gap,
    })
}

#[derive(Serialize)]
struct FigureData {
    figure: u8,
    column: &'static str,
    points: Vec<FigurePoint>,
}

#[derive(Serialize)]
struct FigurePoint {
    lambda: f64,
    value: Option<f64>,
}
