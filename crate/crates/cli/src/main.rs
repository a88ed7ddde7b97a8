use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use regcert_core::certificate::{
    analyze, Certificate, CorpusSummary, CSV_HEADER, EXIT_ERROR, EXIT_OK,
};
use regcert_core::config::{ExhaustiveLimits, OutputFormat, RunConfig};
use regcert_core::generators::{gen_gd, gen_random_regular};
use regcert_core::selfcheck::run_all;
use regcert_core::{encode_graph6, parse_graph, InputFormat};

#[derive(Parser)]
#[command(name = "regcert", version, about = "Eigenvalue certificates for regular graphs")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// How to read graph input
    #[arg(long, global = true, default_value = "auto")]
    input_format: InputFormat,
    #[arg(long, global = true, default_value_t = 1e-9)]
    epsilon: f64,
    /// Base seed; falls back to CERT_SEED, then 0
    #[arg(long, global = true, env = "CERT_SEED")]
    seed: Option<u64>,
    /// Worker threads for corpus runs (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Either N (toughness enumeration) or tutte=N,toughness=N,pm-family=N
    #[arg(long, global = true, value_parser = parse_limits)]
    exhaustive_limit: Option<ExhaustiveLimits>,
    /// Alternative perfect matchings tried per level while peeling
    #[arg(long, global = true, default_value_t = 200)]
    backtrack_limit: usize,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    CsvSummary,
}

#[derive(Subcommand)]
enum Command {
    /// Certify one graph given as a file, inline text, or - for stdin
    Analyze { input: String },
    /// Generate graphs as graph6 lines
    #[command(subcommand)]
    Gen(GenKind),
    /// Certify every graph6 line of a file
    Corpus { input: PathBuf },
    /// Run the cross-oracle suites
    Selfcheck,
}

#[derive(Subcommand)]
enum GenKind {
    /// The extremal graph G_d
    Gd {
        #[arg(long)]
        d: usize,
    },
    /// Connected random regular graphs; graph i uses seed + i
    RandomRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

fn parse_limits(s: &str) -> Result<ExhaustiveLimits, String> {
    let mut limits = ExhaustiveLimits::default();
    if let Ok(n) = s.parse::<usize>() {
        limits.toughness = n;
        return Ok(limits);
    }
    for item in s.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("invalid limit {value:?}"))?;
        match key.trim() {
            "tutte" => limits.tutte = value,
            "toughness" => limits.toughness = value,
            "pm-family" | "pm_family" => limits.pm_family = value,
            other => return Err(format!("unknown limit {other:?}")),
        }
    }
    Ok(limits)
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

impl GlobalOpts {
    fn config(&self) -> Result<RunConfig, Failure> {
        let cfg = RunConfig {
            epsilon: self.epsilon,
            limits: self.exhaustive_limit.unwrap_or_default(),
            backtrack_limit: self.backtrack_limit,
            seed: self.seed.unwrap_or(0),
            format: match self.format {
                Format::Json => OutputFormat::Json,
                Format::CsvSummary => OutputFormat::CsvSummary,
            },
        };
        cfg.validate().map_err(Failure)?;
        Ok(cfg)
    }

    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
            None => Box::new(io::BufWriter::new(io::stdout())),
        })
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    let path = std::path::Path::new(input);
    if path.is_file() {
        return fs::read_to_string(path).map_err(|e| Failure(format!("{input}: {e}")));
    }
    Ok(input.to_string())
}

fn write_csv(out: &mut dyn Write, certs: &[Certificate]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for c in certs {
        w.write_record(c.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_analyze(opts: &GlobalOpts, input: &str) -> Outcome {
    let cfg = opts.config()?;
    let text = read_input(input)?;
    let g = parse_graph(&text, opts.input_format)?;
    let cert = analyze(&g, &encode_graph6(&g), &cfg)?;
    let mut out = opts.sink()?;
    match cfg.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?,
        OutputFormat::CsvSummary => write_csv(&mut out, std::slice::from_ref(&cert))?,
    }
    out.flush()?;
    Ok(cert.exit_code())
}

fn cmd_gen(opts: &GlobalOpts, kind: &GenKind) -> Outcome {
    let seed = opts.seed.unwrap_or(0);
    let graphs = match *kind {
        GenKind::Gd { d } => vec![gen_gd(d)?],
        GenKind::RandomRegular { n, d, count } => (0..count as u64)
            .map(|i| gen_random_regular(n, d, seed.wrapping_add(i)))
            .collect::<Result<_, _>>()?,
    };
    let mut out = opts.sink()?;
    for g in &graphs {
        writeln!(out, "{}", encode_graph6(g))?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn cmd_corpus(opts: &GlobalOpts, input: &PathBuf) -> Outcome {
    let cfg = opts.config()?;
    let text = fs::read_to_string(input).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
    let mut summary = CorpusSummary::default();
    let mut jobs = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match parse_graph(line, InputFormat::Graph6) {
            Ok(g) => jobs.push((index, line.to_string(), g)),
            Err(e) => {
                eprintln!("line {}: {e}; skipped", index + 1);
                summary.skipped += 1;
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()?;
    let results: Vec<_> = pool.install(|| {
        jobs.par_iter()
            .map(|(index, id, g)| analyze(g, id, &cfg.with_seed(cfg.seed.wrapping_add(*index as u64))))
            .collect()
    });
    let mut certs = Vec::with_capacity(results.len());
    for ((index, _, _), r) in jobs.iter().zip(results) {
        match r {
            Ok(c) => {
                summary.record(&c);
                certs.push(c);
            }
            Err(e) => {
                eprintln!("line {}: {e}; skipped", index + 1);
                summary.skipped += 1;
            }
        }
    }
    let mut out = opts.sink()?;
    match cfg.format {
        OutputFormat::Json => {
            for c in &certs {
                writeln!(out, "{}", serde_json::to_string(c)?)?;
            }
            writeln!(out, "{}", serde_json::json!({ "aggregate": summary }))?;
        }
        OutputFormat::CsvSummary => {
            write_csv(&mut out, &certs)?;
            eprintln!("{}", serde_json::json!({ "aggregate": summary }));
        }
    }
    out.flush()?;
    Ok(summary.exit_code())
}

fn cmd_selfcheck(opts: &GlobalOpts) -> Outcome {
    let cfg = opts.config()?;
    let reports = run_all(cfg.seed);
    let mut out = opts.sink()?;
    match cfg.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        OutputFormat::CsvSummary => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["suite", "passed", "checked", "detail"])?;
            for r in &reports {
                w.write_record([r.name, &r.passed.to_string(), &r.checked.to_string(), &r.detail])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        eprintln!("{status} {} ({} checks) {}", r.name, r.checked, r.detail);
    }
    Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_ERROR })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Analyze { input } => cmd_analyze(&cli.opts, input),
        Command::Gen(kind) => cmd_gen(&cli.opts, kind),
        Command::Corpus { input } => cmd_corpus(&cli.opts, input),
        Command::Selfcheck => cmd_selfcheck(&cli.opts),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
