use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use stiff_cli::jobspec::{parse_jobspec, JobSpec, SCHEMA_VERSION};
use stiff_cli::report::{error_payload, Envelope, Exit, TOOL};
use stiff_cli::run::{meets_expectation, run, run_corpus};
use stiff_cli::{corpus, jobspec};

#[derive(Parser)]
#[command(name = "stiff", version, about = "Audits of finite free complexes over graded quotient rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Output {
    /// Pretty JSON (the default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// One line per report plus scalar result fields.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct JobArgs {
    /// Job file (JSON).
    file: PathBuf,
    /// Object to run on; overrides the file's target.
    #[arg(long)]
    target: Option<String>,
    /// Replaces the job's seeds; repeatable.
    #[arg(long)]
    seed: Vec<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    degree_cap: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory of bundle files; the embedded corpus when absent.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Added to every job seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs only jobs whose name contains this string.
    #[arg(long)]
    filter: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal free resolution of a module.
    Resolve(JobArgs),
    /// Grade of an ideal with a regular-sequence certificate.
    Grade(JobArgs),
    /// Column-ideal grades under the given and random bases.
    Stiffness(JobArgs),
    /// Buchsbaum–Eisenbud acyclicity test against homology.
    BeCheck(JobArgs),
    /// Ideals of minors of a matrix or differential.
    Minors(JobArgs),
    /// Splits a complex into a minimal and a split exact part.
    Split(JobArgs),
    /// Minor-grade table and syzygy generator bounds.
    Thm14(JobArgs),
    /// Order ideals of minimal generators of syzygies.
    OrderIdeal(JobArgs),
    /// Koszul-to-resolution lifts on a system of parameters.
    CecProbe(JobArgs),
    /// Auslander's delta-invariant of a module.
    Delta(JobArgs),
    /// Delta of R/b for annihilator ideals b of a Gorenstein ring.
    Th9Audit(JobArgs),
    /// Runs every job of the corpus and checks its expectation.
    CorpusRun(CorpusArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Resolve(_) => "resolve",
            Command::Grade(_) => "grade",
            Command::Stiffness(_) => "stiffness",
            Command::BeCheck(_) => "be-check",
            Command::Minors(_) => "minors",
            Command::Split(_) => "split",
            Command::Thm14(_) => "thm14",
            Command::OrderIdeal(_) => "order-ideal",
            Command::CecProbe(_) => "cec-probe",
            Command::Delta(_) => "delta",
            Command::Th9Audit(_) => "th9-audit",
            Command::CorpusRun(_) => "corpus-run",
        }
    }
}

fn print(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
}

fn load_job(command: &str, args: &JobArgs) -> Result<JobSpec> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let mut spec = parse_jobspec(&text)?;
    if let Some(c) = &spec.command {
        if c != command {
            bail!("job file names command '{c}' but '{command}' was requested");
        }
    }
    spec.command = Some(command.to_string());
    if let Some(t) = &args.target {
        spec.target = t.clone();
    }
    if !args.seed.is_empty() {
        spec.params.seeds = Some(args.seed.clone());
    }
    spec.params.trials = args.trials.or(spec.params.trials);
    spec.params.max_len = args.max_len.or(spec.params.max_len);
    spec.params.degree_cap = args.degree_cap.or(spec.params.degree_cap);
    Ok(spec)
}

fn run_job(command: &str, args: &JobArgs) -> ExitCode {
    let spec = match load_job(command, args) {
        Ok(s) => s,
        Err(e) => {
            let job = args.file.display().to_string();
            print(&json!({ "payload": error_payload(&job, command, &format!("{e:#}")), "wall_time_ms": 0 }));
            return ExitCode::from(Exit::InputError.code() as u8);
        }
    };
    let env = run(&spec);
    if args.output.table {
        print!("{}", env.to_table());
    } else {
        print(&env.to_value());
    }
    ExitCode::from(env.exit() as u8)
}

fn corpus_run(args: &CorpusArgs) -> Result<ExitCode> {
    let bundles = match &args.dir {
        Some(dir) => corpus::from_dir(dir).with_context(|| format!("loading {}", dir.display()))?,
        None => corpus::bundled()?,
    };
    let bundles: Vec<jobspec::Bundle> = match &args.filter {
        Some(f) => bundles
            .into_iter()
            .map(|mut b| {
                let prefix = b.name.clone();
                b.jobs.retain(|j| format!("{prefix}/{}", j.name).contains(f.as_str()));
                b
            })
            .filter(|b| !b.jobs.is_empty())
            .collect(),
        None => bundles,
    };
    let results = run_corpus(&bundles, args.seed);
    let unmet: Vec<&str> = results
        .iter()
        .filter(|(spec, env)| !meets_expectation(spec.expect, env.exit()))
        .map(|(spec, _)| spec.name.as_str())
        .collect();
    if args.output.table {
        for (_, env) in &results {
            print!("{}", env.to_table());
        }
        println!("{} jobs, {} unmet expectations", results.len(), unmet.len());
        for name in &unmet {
            println!("unmet: {name}");
        }
    } else {
        let reports: Vec<serde_json::Value> = results.iter().map(|(_, env): &(JobSpec, Envelope)| env.to_value()).collect();
        print(&json!({
            "schema": SCHEMA_VERSION,
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": args.seed,
            "jobs": results.len(),
            "unmet": unmet,
            "reports": reports,
        }));
    }
    Ok(if unmet.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(Exit::Negative.code() as u8) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match &cli.command {
        Command::CorpusRun(args) => corpus_run(args).unwrap_or_else(|e| {
            eprintln!("error: {e:#}");
            ExitCode::from(Exit::InputError.code() as u8)
        }),
        Command::Resolve(a)
        | Command::Grade(a)
        | Command::Stiffness(a)
        | Command::BeCheck(a)
        | Command::Minors(a)
        | Command::Split(a)
        | Command::Thm14(a)
        | Command::OrderIdeal(a)
        | Command::CecProbe(a)
        | Command::Delta(a)
        | Command::Th9Audit(a) => run_job(name, a),
    }
}
