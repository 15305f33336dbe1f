//! Command-line front end: validate, certify, compose, split, render and
//! inspect chamber links.
//!
//! Exit codes: 0 success (and exact certification for `index`), 1 parse,
//! validation or operation failure, 2 usage error, 3 sound-but-uncertified
//! bounds from `index`.

mod render;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chamber_index::compose::{
    corpus_link, generate_complicated, ComposeError, IndexExpr, IndexFacts, Pattern, CORPUS_NAMES,
};
use chamber_index::dsl::{self, LinkDocument, SourceDocument};
use chamber_index::engine::{geometric_index, separating_torus_conclusions, GeometricIndex};
use chamber_index::link::{ChamberLink, SplitChamberError};

use report::ReportDocument;

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNCERTIFIED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "chamber",
    version,
    about = "Certified geometric-index computation for links in a solid torus"
)]
struct Cli {
    /// Suppress informational output on stdout.
    #[arg(long, global = true)]
    quiet: bool,

    /// Emit machine-readable JSON where the command supports it.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a link description for structural validity.
    Validate {
        /// Path to a .cld file.
        file: PathBuf,
    },
    /// Compute algebraic data and the certified geometric index.
    Index {
        /// Path to a .cld file.
        #[arg(conflicts_with = "corpus", required_unless_present = "corpus")]
        file: Option<PathBuf>,
        /// Use a shipped corpus link instead of a file.
        #[arg(long)]
        corpus: Option<String>,
        /// Eight comma-separated patterns (spans, whitehead, squareknot,
        /// antoine) for `--corpus complicated`.
        #[arg(long, value_delimiter = ',', requires = "corpus")]
        patterns: Option<Vec<String>>,
    },
    /// Nest corpus links and evaluate the multiplied index facts.
    Compose {
        /// Corpus names, innermost first.
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<String>,
    },
    /// Divide an Antoine chamber in two by a middle disc.
    SplitAntoine {
        /// Path to a .cld file.
        file: PathBuf,
        /// Chamber to split (0-based).
        #[arg(long)]
        chamber: usize,
        /// Where to write the canonical split link.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List or show the shipped corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Draw a chamber schematic.
    Render {
        /// Path to a .cld file.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Conclusions about a torus separating a link of the given total
    /// index from the ambient boundary.
    CheckParallel {
        #[arg(long)]
        total: u64,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Print the corpus names.
    List,
    /// Print the canonical text of one entry.
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Validate { ref file } => validate(file, cli.quiet),
        Command::Index {
            ref file,
            ref corpus,
            ref patterns,
        } => index(file.as_deref(), corpus.as_deref(), patterns.as_deref(), &cli),
        Command::Compose { ref chain } => compose(chain, &cli),
        Command::SplitAntoine {
            ref file,
            chamber,
            ref output,
        } => split_antoine(file, chamber, output, cli.quiet),
        Command::Corpus { ref action } => corpus_command(action),
        Command::Render { ref file, format } => render_command(file, format),
        Command::CheckParallel { total } => check_parallel(total, &cli),
    }
}

/// Read and parse a file, printing every diagnostic to stderr.
fn read_document(path: &Path) -> Result<LinkDocument, u8> {
    let text = fs::read_to_string(path).map_err(|err| {
        eprintln!("error: cannot read {}: {err}", path.display());
        EXIT_FAILURE
    })?;
    let doc = SourceDocument::from_file(path.display().to_string(), text);
    let outcome = dsl::parse(&doc);
    for diagnostic in &outcome.diagnostics {
        eprintln!("{}: {diagnostic}", path.display());
    }
    outcome.document.ok_or(EXIT_FAILURE)
}

fn validate(path: &Path, quiet: bool) -> u8 {
    match read_document(path) {
        Ok(document) => {
            if !quiet {
                let report = document.link.validate();
                println!(
                    "ok: {} with {} chambers, discs {:?}{}",
                    document.name,
                    document.link.chamber_count(),
                    report.disc_counts,
                    if report.uniform { " (uniform)" } else { " (non-uniform)" }
                );
            }
            EXIT_OK
        }
        Err(code) => code,
    }
}

fn parse_patterns(names: &[String]) -> Result<[Pattern; 8], u8> {
    if names.len() != 8 {
        eprintln!("error: --patterns needs exactly 8 entries, got {}", names.len());
        return Err(EXIT_USAGE);
    }
    let mut patterns = [Pattern::SpansOnly; 8];
    for (slot, name) in names.iter().enumerate() {
        patterns[slot] = Pattern::from_name(name).ok_or_else(|| {
            eprintln!(
                "error: unknown pattern `{name}`; use spans, whitehead, squareknot or antoine"
            );
            EXIT_USAGE
        })?;
    }
    Ok(patterns)
}

fn resolve_link(
    file: Option<&Path>,
    corpus: Option<&str>,
    patterns: Option<&[String]>,
) -> Result<(String, ChamberLink), u8> {
    match (file, corpus) {
        (Some(path), None) => {
            let document = read_document(path)?;
            Ok((document.name, document.link))
        }
        (None, Some(name)) => {
            if let Some(names) = patterns {
                if name != "complicated" {
                    eprintln!("error: --patterns only applies to --corpus complicated");
                    return Err(EXIT_USAGE);
                }
                let patterns = parse_patterns(names)?;
                return Ok((name.to_string(), generate_complicated(&patterns)));
            }
            match corpus_link(name) {
                Ok(link) => Ok((name.to_string(), link)),
                Err(_) => {
                    eprintln!(
                        "error: unknown corpus name `{name}`; known: {}",
                        CORPUS_NAMES.join(", ")
                    );
                    Err(EXIT_USAGE)
                }
            }
        }
        _ => unreachable!("clap enforces exactly one input source"),
    }
}

fn index(file: Option<&Path>, corpus: Option<&str>, patterns: Option<&[String]>, cli: &Cli) -> u8 {
    let (name, link) = match resolve_link(file, corpus, patterns) {
        Ok(resolved) => resolved,
        Err(code) => return code,
    };
    let report = match geometric_index(&link) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_FAILURE;
        }
    };

    if cli.json {
        println!("{}", ReportDocument::from_report(&name, &report).to_json());
    } else if !cli.quiet {
        print_human_report(&name, &report);
    }

    match report.geometric {
        GeometricIndex::Exact { .. } => EXIT_OK,
        GeometricIndex::Bounds { .. } => EXIT_UNCERTIFIED,
    }
}

fn print_human_report(name: &str, report: &chamber_index::engine::IndexReport) {
    println!("link: {name}");
    println!("discs: {:?}", report.disc_counts);
    println!(
        "components: {} (windings {:?})",
        report.windings.len(),
        report.windings
    );
    println!(
        "algebraic total: {}",
        report.algebraic_total_signed.unsigned_abs()
    );
    match report.geometric {
        GeometricIndex::Exact { value } => {
            println!("geometric index: exact {value}");
            println!("certificates:");
            for c in &report.certificates {
                println!(
                    "  chamber {}: {}, k={}, l={}, n={}",
                    c.chamber, c.rule, c.clasps, c.spanning_arcs, c.disc_intersections
                );
            }
        }
        GeometricIndex::Bounds {
            lower,
            upper,
            parity,
        } => {
            println!(
                "geometric index: bounds [{lower}, {upper}] (parity {})",
                if parity == 0 { "even" } else { "odd" }
            );
            println!("refusals:");
            for refusal in &report.refusals {
                println!("  - {refusal}");
            }
        }
    }
}

#[derive(Serialize)]
struct ComposeDocument {
    chain: Vec<String>,
    geometric: String,
    algebraic_total: u64,
    components: usize,
}

fn compose(chain: &[String], cli: &Cli) -> u8 {
    let mut expr: Option<IndexExpr> = None;
    for name in chain {
        let link = match corpus_link(name) {
            Ok(link) => link,
            Err(ComposeError::UnknownName(name)) => {
                eprintln!(
                    "error: unknown corpus name `{name}`; known: {}",
                    CORPUS_NAMES.join(", ")
                );
                return EXIT_USAGE;
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_FAILURE;
            }
        };
        let report = geometric_index(&link).expect("corpus links are valid");
        let leaf = IndexExpr::leaf(IndexFacts::from_report(name.clone(), &report));
        expr = Some(match expr {
            None => leaf,
            Some(inner) => match IndexExpr::nest(inner, leaf) {
                Ok(nested) => nested,
                Err(err) => {
                    eprintln!("error: {err}");
                    return EXIT_FAILURE;
                }
            },
        });
    }
    let facts = expr
        .expect("clap requires a non-empty chain")
        .evaluate()
        .expect("nesting was validated while folding");

    if cli.json {
        let document = ComposeDocument {
            chain: chain.to_vec(),
            geometric: facts.geometric.to_string(),
            algebraic_total: facts.algebraic_total,
            components: facts.components,
        };
        println!("{}", serde_json::to_string_pretty(&document).unwrap());
    } else if !cli.quiet {
        println!("chain: {}", chain.join(" in "));
        println!("geometric index: {}", facts.geometric);
        println!("algebraic total: {}", facts.algebraic_total);
        println!("components: {}", facts.components);
    }
    EXIT_OK
}

fn split_antoine(path: &Path, chamber: usize, output: &Path, quiet: bool) -> u8 {
    let document = match read_document(path) {
        Ok(document) => document,
        Err(code) => return code,
    };
    let split = match document.link.split_antoine_chamber(chamber) {
        Ok(split) => split,
        Err(err @ SplitChamberError::OutOfRange { .. }) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_FAILURE;
        }
    };
    let text = dsl::emit(&document.name, &split).expect("split of a valid link is valid");
    if let Err(err) = fs::write(output, text) {
        eprintln!("error: cannot write {}: {err}", output.display());
        return EXIT_FAILURE;
    }
    if !quiet {
        println!(
            "split chamber {chamber}: {} now has {} chambers -> {}",
            document.name,
            split.chamber_count(),
            output.display()
        );
    }
    EXIT_OK
}

fn corpus_command(action: &CorpusAction) -> u8 {
    match action {
        CorpusAction::List => {
            for name in CORPUS_NAMES {
                println!("{name}");
            }
            EXIT_OK
        }
        CorpusAction::Show { name } => match dsl::corpus_source(name) {
            Some(source) => {
                print!("{source}");
                EXIT_OK
            }
            None => {
                eprintln!(
                    "error: unknown corpus name `{name}`; known: {}",
                    CORPUS_NAMES.join(", ")
                );
                EXIT_USAGE
            }
        },
    }
}

fn render_command(path: &Path, format: RenderFormat) -> u8 {
    let document = match read_document(path) {
        Ok(document) => document,
        Err(code) => return code,
    };
    match format {
        RenderFormat::Ascii => print!("{}", render::render_ascii(&document.link)),
        RenderFormat::Svg => print!("{}", render::render_svg(&document.link)),
    }
    EXIT_OK
}

#[derive(Serialize)]
struct ParallelDocument {
    total: u64,
    unconstrained: bool,
    pairs: Vec<ParallelPairDocument>,
}

#[derive(Serialize)]
struct ParallelPairDocument {
    inner: u64,
    outer: u64,
    parallel_to_inner: bool,
    parallel_to_outer: bool,
}

fn check_parallel(total: u64, cli: &Cli) -> u8 {
    let conclusions = separating_torus_conclusions(total);
    if cli.json {
        let document = ParallelDocument {
            total: conclusions.total,
            unconstrained: conclusions.unconstrained,
            pairs: conclusions
                .pairs
                .iter()
                .map(|p| ParallelPairDocument {
                    inner: p.inner,
                    outer: p.outer,
                    parallel_to_inner: p.parallel_to_inner,
                    parallel_to_outer: p.parallel_to_outer,
                })
                .collect(),
        };
        println!("{}", serde_json::to_string_pretty(&document).unwrap());
        return EXIT_OK;
    }
    if cli.quiet {
        return EXIT_OK;
    }
    if conclusions.unconstrained {
        println!("total 0: no factorization constraint on a separating torus");
        return EXIT_OK;
    }
    for pair in &conclusions.pairs {
        let conclusion = match (pair.parallel_to_inner, pair.parallel_to_outer) {
            (true, true) => "boundary parallel to both the inner and outer torus",
            (true, false) => "boundary parallel to the inner torus",
            (false, true) => "boundary parallel to the outer torus",
            (false, false) => "no parallelism forced",
        };
        println!("{} x {}: {conclusion}", pair.inner, pair.outer);
    }
    EXIT_OK
}
