//! `basic`: batch scoring of decoded images against references.
//!
//! ```text
//! basic validate --manifest runs/nsd.json
//! basic evaluate --manifest runs/nsd.json --out results/ --workers 8
//! basic evaluate --combine-only table.csv --format markdown
//! basic sweep --manifest runs/nsd.json --out sweep/ --grid tau_sem=0.7,0.8,0.9
//! ```
//!
//! Exit codes: 0 success, 1 validation diagnostics or failed pairs, 2 usage
//! errors (bad flags, unreadable manifest, empty grid).

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use basic_eval::datamodel::{load_config, load_graph, load_manifest, load_masks, AggregationMode};
use basic_eval::pipeline::{Evaluator, Outcome, Roots, Scope};
use basic_eval::report::{
    aggregate, combine, parse_csv, render_csv, render_markdown, run_sweep, GridAxis, ReportRow,
};
use basic_eval::semmatch::{EmbeddingTable, SynonymLexicon};
use basic_eval::{EvalConfig, RunManifest};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "basic",
    version,
    about = "Semantic and structural scoring of decoded images"
)]
struct Cli {
    /// Log progress to stderr
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every file referenced by a manifest loads cleanly
    Validate {
        #[arg(long)]
        manifest: PathBuf,
        /// Overrides the config named in the manifest
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Score every pair and write per-pair records and method tables
    Evaluate {
        #[command(flatten)]
        run: RunArgs,
        /// Recompute BASIC columns from a stored score table instead of scoring pairs
        #[arg(long, value_name = "SCORES_CSV", conflicts_with = "manifest")]
        combine_only: Option<PathBuf>,
    },
    /// Re-run the evaluation over a parameter grid
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// `param=v1,v2,...`; repeat for a multi-axis grid
        #[arg(long = "grid", value_name = "PARAM=VALUES")]
        grid: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Overrides the config named in the manifest
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; defaults to the manifest's output_dir
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict scoring to one half of the metric
    #[arg(long, value_enum)]
    only: Option<Only>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Abort on the first failed pair instead of scoring the rest
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Pool element counts across pairs before computing P/R/F1
    #[arg(long)]
    pooled: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Only {
    Sem,
    Seg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { manifest, config } => validate(&manifest, config.as_deref()),
        Command::Evaluate {
            run,
            combine_only: Some(scores),
        } => combine_scores(&run, &scores),
        Command::Evaluate { run, .. } => evaluate(&run),
        Command::Sweep { run, grid } => sweep(&run, &grid),
    }
}

fn read_manifest(path: &Path) -> Result<RunManifest> {
    load_manifest(path).map_err(|e| usage(format!("cannot read manifest: {e}")))
}

fn resolve_config(manifest: Option<&RunManifest>, flag: Option<&Path>) -> Result<EvalConfig> {
    match flag
        .map(Path::to_path_buf)
        .or_else(|| manifest.and_then(|m| m.config.clone()))
    {
        Some(p) => Ok(load_config(&p)?),
        None => Ok(EvalConfig::default()),
    }
}

fn scope(only: Option<Only>) -> Scope {
    match only {
        Some(Only::Sem) => Scope::Semantic,
        Some(Only::Seg) => Scope::Structural,
        None => Scope::Both,
    }
}

fn render(rows: &[ReportRow], format: Format) -> (String, &'static str) {
    match format {
        Format::Csv => (render_csv(rows), "report.csv"),
        Format::Markdown => (render_markdown(rows), "report.md"),
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// Keeps pair ids usable as file names.
fn file_stem(pair_id: &str) -> String {
    pair_id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn validate(manifest_path: &Path, config: Option<&Path>) -> Result<ExitCode> {
    let manifest = read_manifest(manifest_path)?;
    let mut diagnostics = Vec::new();
    match resolve_config(Some(&manifest), config) {
        Ok(cfg) => {
            if let Some(p) = &cfg.lexicon_path {
                if let Err(e) = SynonymLexicon::load(p) {
                    diagnostics.push(e.to_string());
                }
            }
            if let Some(p) = &cfg.embeddings_path {
                if let Err(e) = EmbeddingTable::load(p) {
                    diagnostics.push(e.to_string());
                }
            }
        }
        Err(e) => diagnostics.push(e.to_string()),
    }
    let mut seen = HashSet::new();
    for pair in &manifest.pairs {
        for rel in [&pair.candidate_graph, &pair.reference_graph] {
            let path = manifest.resolve(rel, None);
            if seen.insert(path.clone()) {
                if let Err(e) = load_graph(&path) {
                    diagnostics.push(e.to_string());
                }
            }
        }
        let cand = manifest.resolve(&pair.candidate_masks, None);
        let refs = manifest.resolve(&pair.reference_masks, None);
        let mut dims = Vec::new();
        for path in [&cand, &refs] {
            match load_masks(path) {
                Ok(m) => dims.push(m.dims()),
                Err(e) => {
                    if seen.insert(path.clone()) {
                        diagnostics.push(e.to_string());
                    }
                }
            }
            seen.insert(path.clone());
        }
        if let [a, b] = dims[..] {
            if a != b {
                diagnostics.push(format!(
                    "{}: pair {}: mask size {a:?} differs from reference size {b:?}",
                    cand.display(),
                    pair.pair_id
                ));
            }
        }
    }
    for d in &diagnostics {
        println!("{d}");
    }
    if diagnostics.is_empty() {
        println!(
            "{}: {} pairs ok",
            manifest_path.display(),
            manifest.pairs.len()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

/// Loads the manifest, config and output directory shared by evaluate and sweep.
fn prepare(run: &RunArgs) -> Result<(RunManifest, Evaluator, PathBuf)> {
    let path = run
        .manifest
        .as_deref()
        .ok_or_else(|| usage("--manifest is required"))?;
    let manifest = read_manifest(path)?;
    let mut cfg = resolve_config(Some(&manifest), run.config.as_deref())?;
    if run.pooled {
        cfg.aggregation = AggregationMode::Pooled;
    }
    let out = run
        .out
        .clone()
        .or_else(|| manifest.output_dir.clone())
        .ok_or_else(|| {
            usage("no output directory: pass --out or set output_dir in the manifest")
        })?;
    fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    let evaluator = Evaluator::from_config(cfg)?;
    Ok((manifest, evaluator, out))
}

fn report_failures(outcome: &Outcome) {
    for f in &outcome.failures {
        eprintln!(
            "failed pair {} ({} / {}): {}",
            f.pair_id, f.method, f.dataset, f.message
        );
    }
}

fn evaluate(run: &RunArgs) -> Result<ExitCode> {
    let (manifest, evaluator, out) = prepare(run)?;
    let outcome =
        evaluator.evaluate_manifest(&manifest, &Roots::default(), scope(run.only), run.workers)?;
    report_failures(&outcome);
    if run.strict && !outcome.failures.is_empty() {
        return Err(anyhow!(
            "{} pairs failed; nothing written (--strict)",
            outcome.failures.len()
        ));
    }
    let scores: Vec<_> = outcome.results.iter().map(|r| r.scores.clone()).collect();
    let summaries = aggregate(&scores, &evaluator.config);
    let rows: Vec<ReportRow> = summaries.iter().map(ReportRow::from).collect();

    write(&out, "pairs.json", &to_json(&scores))?;
    write(&out, "summary.json", &to_json(&summaries))?;
    let (report, name) = render(&rows, run.format);
    write(&out, name, &report)?;
    if !outcome.failures.is_empty() {
        write(&out, "failures.json", &to_json(&outcome.failures))?;
    }
    let matches = out.join("matches");
    if outcome.results.iter().any(|r| r.matches.is_some()) {
        fs::create_dir_all(&matches).with_context(|| format!("creating {}", matches.display()))?;
    }
    for r in &outcome.results {
        if let Some(m) = &r.matches {
            write(
                &matches,
                &format!("{}.json", file_stem(&r.scores.pair_id)),
                &to_json(m),
            )?;
        }
    }
    log::info!(
        "{} pairs scored, {} failed, {} method groups",
        outcome.results.len(),
        outcome.failures.len(),
        rows.len()
    );
    Ok(if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn combine_scores(run: &RunArgs, scores: &Path) -> Result<ExitCode> {
    let cfg = resolve_config(None, run.config.as_deref())?;
    let text =
        fs::read_to_string(scores).with_context(|| format!("reading {}", scores.display()))?;
    let rows = combine(
        &parse_csv(scores, &text)?,
        cfg.normalized_alpha(),
        cfg.normalized_beta(),
    );
    let (report, name) = render(&rows, run.format);
    match &run.out {
        Some(out) => {
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            write(out, name, &report)?;
        }
        None => print!("{report}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(run: &RunArgs, grid: &[String]) -> Result<ExitCode> {
    if grid.is_empty() {
        return Err(usage("empty grid: pass at least one --grid param=values"));
    }
    let axes = grid
        .iter()
        .map(|g| g.parse::<GridAxis>())
        .collect::<basic_eval::Result<Vec<_>>>()
        .map_err(|e| usage(e.to_string()))?;
    if axes.iter().any(|a| a.values.is_empty()) {
        return Err(usage("empty grid: an axis has no values"));
    }
    let (manifest, evaluator, out) = prepare(run)?;
    let result = run_sweep(
        &evaluator,
        &manifest,
        &Roots::default(),
        &axes,
        scope(run.only),
        run.workers,
    )?;
    let failures: usize = result.points.iter().map(|p| p.failures).sum();
    if run.strict && failures > 0 {
        return Err(anyhow!(
            "{failures} pair evaluations failed across the grid (--strict)"
        ));
    }
    write(&out, "sweep.csv", &result.render_csv())?;
    write(&out, "tau.csv", &result.render_tau_csv())?;
    let (base, name) = render(&result.base, run.format);
    write(&out, &format!("base_{name}"), &base)?;
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
