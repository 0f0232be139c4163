use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gs_realize::branched::{enumerate_connected, enumeration_bound};
use gs_realize::cli_io::{
    export_dot, gen_random_gs_graph, parse_graph, serialize_graph, GenFlags, ReportDocument,
};
use gs_realize::gs_model::{
    euler_conley, euler_gs, fold_balance, ph_residual, semigraph, validate_graph, LyapunovGraph,
    SingularityType,
};
use gs_realize::realize_global::{realize, RealizationVerdict};
use gs_realize::realize_local::{catalog_counts, local_realizable, minimal_block_catalog};

/// Exit code for usage errors and unreadable input.
const EXIT_USAGE: u8 = 64;
/// Exit code for input that cannot be parsed.
const EXIT_DATA: u8 = 65;
/// Largest search bound accepted on the command line.
const MAX_SEARCH_BOUND: u32 = 7;

#[derive(Parser)]
#[command(name = "gsreal", version, about = "Realizability of Lyapunov graphs as GS flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check structure and per-vertex Poincare-Hopf balance
    Validate { file: PathBuf },
    /// Decide realizability and print a report
    Realize {
        file: PathBuf,
        /// Run the exhaustive assignment search up to this edge weight
        #[arg(long)]
        search_bound: Option<u32>,
    },
    /// Print both Euler characteristics and the fold balance
    Euler { file: PathBuf },
    /// List connected branched 1-manifolds of one weight
    Enumerate {
        #[arg(long)]
        weight: u32,
    },
    /// List the minimal block catalog and per-type totals
    Catalog {
        /// Restrict the listing to one singularity type
        #[arg(long = "type")]
        ty: Option<SingularityType>,
    },
    /// Write the graph in DOT syntax
    ExportDot { file: PathBuf },
    /// Generate a seeded random graph document
    GenRandom {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        fold_balanced: bool,
    },
}

/// A failure that maps to an exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<LyapunovGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| fail(EXIT_DATA, format!("{}:{e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { file } => {
            let g = load(&file)?;
            let report = validate_graph(&g);
            for v in &report.violations {
                println!("violation {v}");
            }
            let mut ok = report.is_valid();
            for &v in g.vertices.keys() {
                let Ok(sg) = semigraph(&g, v) else {
                    continue;
                };
                let verdict = local_realizable(&sg);
                ok &= verdict.is_yes();
                println!(
                    "vertex {v} {} in {:?} out {:?} ph-residual {} {verdict}",
                    sg.label,
                    sg.in_weights,
                    sg.out_weights,
                    ph_residual(&sg)
                );
            }
            println!("{}", if ok { "valid" } else { "invalid" });
            Ok(if ok { 0 } else { 1 })
        }
        Command::Realize { file, search_bound } => {
            if let Some(b) = search_bound {
                if b > MAX_SEARCH_BOUND {
                    return Err(fail(
                        EXIT_USAGE,
                        format!("search bound {b} is too large (at most {MAX_SEARCH_BOUND})"),
                    ));
                }
            }
            let g = load(&file)?;
            let verdict = realize(&g, search_bound);
            print!("{}", ReportDocument::build(&g, &verdict).to_text());
            Ok(match verdict {
                RealizationVerdict::RealizableBy { .. } => 0,
                RealizationVerdict::NotRealizable { .. } => 1,
                RealizationVerdict::Unknown { .. } => 2,
            })
        }
        Command::Euler { file } => {
            let g = load(&file)?;
            let conley = euler_conley(&g).map_err(|e| fail(1, e.to_string()))?;
            let gs = euler_gs(&g).map_err(|e| fail(1, e.to_string()))?;
            let balanced = fold_balance(&g).map_err(|e| fail(1, e.to_string()))?;
            println!("euler-conley {conley}");
            println!("euler-gs {gs}");
            println!("fold-balance {balanced}");
            Ok(0)
        }
        Command::Enumerate { weight } => {
            let forms = enumerate_connected(weight).map_err(|e| {
                fail(
                    EXIT_USAGE,
                    format!("{e} (set GS_ENUM_BOUND to raise the cap, now {})", enumeration_bound()),
                )
            })?;
            for f in &forms {
                println!("{f}");
            }
            println!("count {}", forms.len());
            Ok(0)
        }
        Command::Catalog { ty } => {
            for entry in minimal_block_catalog() {
                if ty.is_none_or(|t| t == entry.label.ty) {
                    let minus: Vec<String> = entry
                        .boundary_pairs
                        .iter()
                        .map(|p| p.minus.to_string())
                        .collect();
                    println!(
                        "{} e+={} e-={} in {:?} out {:?} N+ {} N- {}",
                        entry.label,
                        entry.e_plus,
                        entry.e_minus,
                        entry.beta_in,
                        entry.beta_out,
                        display_form(entry.plus().as_str()),
                        minus
                            .iter()
                            .map(|m| display_form(m))
                            .collect::<Vec<_>>()
                            .join(" ; ")
                    );
                }
            }
            let counts = catalog_counts();
            let total: usize = counts.iter().sum();
            let parts: Vec<String> = counts.iter().map(usize::to_string).collect();
            println!("{} / {total}", parts.join(" "));
            Ok(0)
        }
        Command::ExportDot { file } => {
            let g = load(&file)?;
            print!("{}", export_dot(&g));
            Ok(0)
        }
        Command::GenRandom {
            seed,
            vertices,
            minimal,
            fold_balanced,
        } => {
            let g = gen_random_gs_graph(
                seed,
                vertices,
                GenFlags {
                    minimal,
                    fold_balanced,
                },
            )
            .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            print!("{}", serialize_graph(&g));
            Ok(0)
        }
    }
}

/// Show the empty manifold as `-` so that listings stay one token per form.
fn display_form(s: &str) -> &str {
    if s.is_empty() {
        "-"
    } else {
        s
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
