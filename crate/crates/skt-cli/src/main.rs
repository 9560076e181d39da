//! `skt` — verify, construct and search SKT structures on nilpotent Lie
//! algebras from the command line.
//!
//! Exit codes: 0 on success, 1 when a verdict is negative (not SKT, or
//! search did not converge), 2 on input errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use skt_core::bismut;
use skt_core::catalog;
use skt_core::compose::{self, CompositionSpec};
use skt_core::decomp;
use skt_core::exactnum::{parse_rational, Rational};
use skt_core::hermitian::HermitianTriple;
use skt_core::io::{self, ParsedAlgebra};
use skt_core::laws;
use skt_core::report::{
    to_structured, CatalogListReport, ComposeReport, IterateReport, ReportFormat, SearchReport,
    SplitReport, VerifyReport,
};
use skt_core::search::{search_metric, SearchConfig};

#[derive(Parser)]
#[command(
    name = "skt",
    about = "Exact verification and construction of SKT structures on nilpotent Lie algebras",
    version
)]
struct Cli {
    /// Report format for stdout and --report files.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and decide the SKT condition exactly.
    Verify(VerifyArgs),
    /// Browse or export the built-in catalog of known SKT algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Fuse two SKT algebras into one of dimension n1 + n2 + 2.
    Compose(ComposeArgs),
    /// Repeat the composition until a target dimension is reached.
    Iterate(IterateArgs),
    /// Split an algebra along a J-invariant coordinate plane.
    Split(SplitArgs),
    /// Numerically search the cone of compatible metrics for an SKT one.
    Search(SearchArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Algebra file (or catalog entry name).
    input: String,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Table of all entries.
    List,
    /// Print one entry as an algebra file.
    Show {
        name: String,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ComposeArgs {
    /// Left factor: algebra file or catalog entry name.
    left: String,
    /// Right factor: algebra file or catalog entry name.
    right: String,
    /// Basis index (1-based, within the left factor) for the left
    /// transverse vector; defaults to the last echelon vector of
    /// center ∩ derived-complement.
    #[arg(long)]
    x_index: Option<usize>,
    /// Basis index for the right transverse vector.
    #[arg(long)]
    y_index: Option<usize>,
    /// Left scale factor, a rational like "2" or "-5/2".
    #[arg(short, default_value = "1")]
    r: String,
    /// Right scale factor.
    #[arg(short, default_value = "1")]
    s: String,
    /// Where to write the composed algebra file.
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Treat the factors as irreducible when certifying (set to false if
    /// a factor is a known product).
    #[arg(long, default_value_t = true)]
    factors_irreducible: bool,
}

#[derive(Args)]
struct IterateArgs {
    /// Seed algebras: files or catalog entry names.
    #[arg(long, required = true, num_args = 1..)]
    seeds: Vec<String>,
    /// Even target dimension to reach.
    #[arg(long)]
    target_dim: usize,
    /// Where to write the resulting algebra file.
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SplitArgs {
    /// Algebra file (or catalog entry name).
    input: String,
    /// Complement plane as two 1-based indices, e.g. "1,2".
    #[arg(long)]
    complement: String,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Algebra file (or catalog entry name); its bracket table and J are
    /// used, the metric entry only seeds validation.
    input: String,
    #[arg(long, default_value_t = 20)]
    starts: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Loads an algebra from a file path, falling back to a catalog entry
/// name when no such file exists.
fn load_input(input: &str) -> Result<(String, ParsedAlgebra)> {
    let path = Path::new(input);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let parsed =
            io::parse_algebra(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok((input.to_string(), parsed));
    }
    if let Ok(text) = catalog::source(input) {
        let parsed = io::parse_algebra(text).expect("catalog entries parse");
        return Ok((format!("catalog:{input}"), parsed));
    }
    bail!(
        "`{input}` is neither a readable file nor a catalog entry (available: {:?})",
        catalog::names()
    )
}

fn parse_scale(text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| anyhow!("bad rational `{text}`: {e}"))
}

fn basis_choice(triple: &HermitianTriple, index: Option<usize>, side: &str) -> Result<Vec<Rational>> {
    match index {
        None => compose::default_transverse_vector(triple)
            .ok_or_else(|| anyhow!("{side} factor has no transverse direction")),
        Some(i) => {
            if i == 0 || i > triple.dim() {
                bail!("{side} index {i} out of range 1..={}", triple.dim());
            }
            let mut v = vec![skt_core::exactnum::rat_int(0); triple.dim()];
            v[i - 1] = skt_core::exactnum::rat_int(1);
            Ok(v)
        }
    }
}

fn emit(format: ReportFormat, text_render: String, structured: String, report: Option<&Path>) -> Result<()> {
    let body = match format {
        ReportFormat::Text => text_render,
        ReportFormat::Structured => structured,
    };
    print!("{body}");
    if let Some(path) = report {
        std::fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let format: ReportFormat = cli
        .format
        .parse()
        .map_err(|e: String| anyhow!(e))?;
    match cli.command {
        Command::Verify(args) => {
            let (label, parsed) = load_input(&args.input)?;
            let verdict = bismut::is_skt(&parsed.triple)
                .map_err(|e| anyhow!("internal verification failure: {e}"))?;
            let law_report = laws::check_all(&parsed.triple, &verdict);
            let report = VerifyReport::build(&label, &parsed.triple, &verdict, &law_report);
            emit(
                format,
                report.render_text(),
                to_structured(&report),
                args.report.as_deref(),
            )?;
            if !law_report.all_hard_passed() {
                eprintln!("FALSIFICATION EVENT: a structural law failed; see report");
            }
            Ok(u8::from(!report.is_skt))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let report = CatalogListReport::build(&catalog::list());
                emit(format, report.render_text(), to_structured(&report), None)?;
                Ok(0)
            }
            CatalogAction::Show { name, output } => {
                let text = catalog::source(&name).map_err(|e| anyhow!(e.to_string()))?;
                match output {
                    Some(path) => std::fs::write(&path, text)
                        .with_context(|| format!("writing {}", path.display()))?,
                    None => print!("{text}"),
                }
                Ok(0)
            }
        },
        Command::Compose(args) => {
            let (left_label, left) = load_input(&args.left)?;
            let (right_label, right) = load_input(&args.right)?;
            let x_choice = basis_choice(&left.triple, args.x_index, "left")?;
            let y_choice = basis_choice(&right.triple, args.y_index, "right")?;
            let spec = CompositionSpec {
                left: left.triple,
                right: right.triple,
                x_choice,
                y_choice,
                r: parse_scale(&args.r)?,
                s: parse_scale(&args.s)?,
            };
            let predicted = compose::abelian_propagation(&spec);
            let composed = compose::compose(&spec).map_err(|e| anyhow!("{e}"))?;
            let flags = (args.factors_irreducible, args.factors_irreducible);
            let certificate = compose::certify_irreducible(&composed.triple, &spec, flags)
                .map_err(|e| anyhow!("{e}"))?;
            let provenance = io::composition_provenance(&left_label, &right_label, &spec);
            let file_text = io::serialize_algebra(&composed.triple, &provenance, None);
            std::fs::write(&args.output, &file_text)
                .with_context(|| format!("writing {}", args.output.display()))?;
            let report = ComposeReport::build(
                &left_label,
                &right_label,
                &composed,
                &certificate,
                predicted,
                args.output.to_str(),
            );
            emit(
                format,
                report.render_text(),
                to_structured(&report),
                args.report.as_deref(),
            )?;
            Ok(0)
        }
        Command::Iterate(args) => {
            let mut labels = Vec::new();
            let mut seeds = Vec::new();
            for seed in &args.seeds {
                let (label, parsed) = load_input(seed)?;
                labels.push(label);
                seeds.push(parsed.triple);
            }
            let outcome =
                compose::iterate_compose(&seeds, args.target_dim).map_err(|e| anyhow!("{e}"))?;
            let verdict = bismut::is_skt(&outcome.triple)
                .map_err(|e| anyhow!("internal verification failure: {e}"))?;
            let mut provenance = BTreeMap::new();
            provenance.insert("construction".to_string(), "iterated-composition".to_string());
            provenance.insert("seeds".to_string(), labels.join(", "));
            provenance.insert("target_dim".to_string(), args.target_dim.to_string());
            let file_text = io::serialize_algebra(&outcome.triple, &provenance, None);
            std::fs::write(&args.output, &file_text)
                .with_context(|| format!("writing {}", args.output.display()))?;
            let report = IterateReport::build(
                args.target_dim,
                &labels,
                &outcome.plan,
                outcome.triple.dim(),
                verdict.is_skt,
                args.output.to_str(),
            );
            emit(
                format,
                report.render_text(),
                to_structured(&report),
                args.report.as_deref(),
            )?;
            Ok(0)
        }
        Command::Split(args) => {
            let (label, parsed) = load_input(&args.input)?;
            let complement = parse_complement(&args.complement)?;
            let data =
                decomp::split_codim2(&parsed.triple, complement).map_err(|e| anyhow!("{e}"))?;
            let ambient = bismut::is_skt(&parsed.triple)
                .map_err(|e| anyhow!("internal verification failure: {e}"))?;
            let restricted = decomp::restrict_by_complement(&parsed.triple, complement)
                .map_err(|e| anyhow!("{e}"))?;
            let restriction = bismut::is_skt(&restricted)
                .map_err(|e| anyhow!("internal verification failure: {e}"))?;
            let checks = decomp::codim2_checks(&data, &parsed.triple);
            let report = SplitReport::build(
                &label,
                &data,
                ambient.is_skt,
                restriction.is_skt,
                &checks,
            );
            emit(
                format,
                report.render_text(),
                to_structured(&report),
                args.report.as_deref(),
            )?;
            if ambient.is_skt && !checks.all_passed() {
                eprintln!("FALSIFICATION EVENT: codimension-2 structure check failed");
            }
            Ok(0)
        }
        Command::Search(args) => {
            let (label, parsed) = load_input(&args.input)?;
            let config = SearchConfig {
                starts: args.starts,
                max_iters: args.max_iters,
                tol: args.tol,
                rng_seed: args.seed,
                ..SearchConfig::default()
            };
            let result = search_metric(parsed.triple.algebra(), parsed.triple.j(), &config)
                .map_err(|e| anyhow!("{e}"))?;
            let report = SearchReport::build(&label, &config, &result);
            emit(
                format,
                report.render_text(),
                to_structured(&report),
                args.report.as_deref(),
            )?;
            if let Some(f) = &result.falsification {
                eprintln!("FALSIFICATION EVENT: {f}");
            }
            Ok(u8::from(!result.converged))
        }
    }
}

fn parse_complement(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        bail!("complement must be two comma-separated indices, e.g. 1,2");
    }
    let a = parts[0].trim().parse::<usize>().context("bad first index")?;
    let b = parts[1].trim().parse::<usize>().context("bad second index")?;
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
