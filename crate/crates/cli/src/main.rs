use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use zolaw::constructions::{find_strictly_balanced_with_density, make_figure_eight, make_m_cycle};
use zolaw::game::{optimal_transcript, EhrSolver, Strategy, DEFAULT_TREE_CAP};
use zolaw::graph::{max_subgraph_density, Graph};
use zolaw::mc::{run_suite, seed_from_env, SuiteOptions};
use zolaw::thresholds::{interval_basic, interval_strong, refutation_report, strong_improves, LawParams};
use zolaw::Rational;

#[derive(Parser)]
#[command(name = "zol", version, about = "Zero-one k-law toolkit for G(n, n^-alpha)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the Ehrenfeucht game on two edge-list files.
    Ehr {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(short)]
        k: usize,
        /// Write the optimal play and the winner's strategy tree as JSON.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Build a graph and print (or write) its edge list.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// The law interval ending at t/s.
    Interval {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        frac: Rational,
        #[arg(long)]
        strong: bool,
    },
    /// The refutation point alpha for given m and k.
    RefuteAlpha {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
    },
    /// Run a Monte Carlo manifest.
    McRun {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Construction {
    MCycle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    FigureEight {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    Balanced {
        #[arg(long)]
        density: Rational,
        #[arg(long)]
        vmax: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse().with_context(|| format!("parsing {}", path.display()))
}

fn emit_graph(g: &Graph, output: Option<&Path>) -> Result<()> {
    let text = g.to_edge_list();
    match output {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    eprintln!(
        "v = {}, e = {}, max density = {}",
        g.vertex_count(),
        g.edge_count(),
        max_subgraph_density(g)?
    );
    Ok(())
}

fn show(r: &Rational) -> String {
    format!("{r} ({})", r.to_decimal_string(12))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ehr { left, right, k, transcript } => {
            let (g, h) = (read_graph(&left)?, read_graph(&right)?);
            let solver = EhrSolver::new(&g, &h, k)?;
            let winner = solver.winner();
            println!("{}", serde_json::to_value(winner)?.as_str().unwrap_or_default());
            if let Some(path) = transcript {
                let play = optimal_transcript(&solver);
                let tree = Strategy::winning(&solver).tree(DEFAULT_TREE_CAP);
                let doc = json!({
                    "k": k,
                    "winner": winner,
                    "transcript": play,
                    "strategy": tree.as_ref().ok(),
                    "strategy_error": tree.as_ref().err().map(|e| e.to_string()),
                });
                std::fs::write(&path, serde_json::to_string_pretty(&doc)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Construct { what } => match what {
            Construction::MCycle { m, d, output } => emit_graph(&make_m_cycle(m, d)?, output.as_deref())?,
            Construction::FigureEight { m, l1, l2, output } => {
                emit_graph(&make_figure_eight(m, l1, l2)?, output.as_deref())?
            }
            Construction::Balanced { density, vmax, output } => {
                match find_strictly_balanced_with_density(&density, vmax)? {
                    Some(g) => emit_graph(&g, output.as_deref())?,
                    None => bail!("no strictly balanced graph of density {density} on at most {vmax} vertices"),
                }
            }
        },
        Command::Interval { k, frac, strong } => {
            let p = LawParams::from_fraction(&frac, k)?;
            let (lo, hi) = if strong {
                interval_strong(k, p.t, p.s)?
            } else {
                interval_basic(k, p.t, p.s)?
            };
            println!("left  = {}", show(&lo));
            println!("right = {}", show(&hi));
            if strong {
                println!("improves on basic: {}", strong_improves(k, p.t, p.s)?);
            }
        }
        Command::RefuteAlpha { m, k } => {
            let r = refutation_report(m, k)?;
            println!("k1    = {}", r.k1);
            println!("alpha = {}", show(&r.alpha));
            println!("2/m   = {}", r.right_end);
            let describe = |name: &str, iv: &Option<(Rational, Rational)>, inside: Option<bool>| match (iv, inside) {
                (Some((lo, hi)), Some(b)) => println!("{name} interval ({lo}, {hi}): alpha inside = {b}"),
                _ => println!("{name} interval: undefined for 2/m = {}", r.right_end),
            };
            describe("basic", &r.basic_interval, r.inside_basic);
            describe("strong", &r.strong_interval, r.inside_strong);
        }
        Command::McRun { manifest, out, threads } => {
            let options = SuiteOptions {
                out_dir: out,
                seed_override: seed_from_env()?,
                threads,
            };
            let outcome = run_suite(&manifest, &options)?;
            for (i, r) in outcome.records.iter().enumerate() {
                let name = r.config.name.clone().unwrap_or_else(|| format!("#{i}"));
                let flag = match r.threshold_ok {
                    Some(true) => " ok",
                    Some(false) => " BREACH",
                    None => "",
                };
                println!(
                    "{name}: n={} p={:.6} seed={} freq={:.4} ci=[{:.4}, {:.4}] {:.0}ms{flag}",
                    r.config.n, r.p, r.config.seed, r.frequency, r.ci_low, r.ci_high, r.wall_ms
                );
            }
            if !outcome.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
