use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blockpath::coloring::LowerBoundEvidence;
use blockpath::enumerate::{enumerate_digraphs, enumerate_tournaments, DEFAULT_DEDUPE_CAP, DEFAULT_LABELED_CAP};
use blockpath::format::{parse_any, to_digraph6, to_edge_list_inline};
use blockpath::harness::{run_campaign_with, Appended, Campaign, CampaignKind, RunOptions, Store};
use blockpath::proofs::{burr_bound, extreme_index, g, g_extreme, ProofError, ProofTrace};
use blockpath::{
    chromatic_number, find_p1k1, find_p1k1_via_origins, find_p1l1_at_least, find_pattern,
    find_three_block_decomposition, fixture, BlockPattern, Digraph, Direction, Mode, PathWitness,
};
use clap::{Parser, Subcommand, ValueEnum};

const SEED_VAR: &str = "BLOCKPATH_SEED";

const NOT_FOUND: u8 = 1;
const USAGE: u8 = 2;
const INCONSISTENT: u8 = 3;

/// Oriented paths with three blocks in digraphs of large chromatic number.
///
/// INPUT is a file in edge-list or digraph6 form, `-` for stdin, or
/// `fixture:NAME` (c3, regular5, paley7, tt(n), directed_cycle(n),
/// rotational(n; d1,d2,..)).
#[derive(Parser)]
#[command(name = "blockpath", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic number with a colouring and lower-bound evidence.
    Chi { input: String },
    /// Searches for one oriented path given by its block lengths.
    Find {
        /// Block lengths, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        pattern: Vec<usize>,
        /// Direction of the first block.
        #[arg(long, default_value = "fwd")]
        first: Direction,
        input: String,
    },
    /// Runs a constructive finder and prints the verified path.
    Prove {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        k: usize,
        #[arg(long, required_if_eq("theorem", "l23"))]
        m: Option<usize>,
        #[arg(long, required_if_eq("theorem", "l23"))]
        i: Option<usize>,
        /// Print the finder's steps as JSON lines after the path.
        #[arg(long)]
        trace: bool,
        input: String,
    },
    /// Lists tournaments or digraphs of one order, one per line.
    Enum {
        #[arg(long, conflicts_with = "digraphs", required_unless_present = "digraphs")]
        tournaments: bool,
        #[arg(long)]
        digraphs: bool,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "oriented")]
        mode: Mode,
        /// Every labelled digraph instead of one per isomorphism class.
        #[arg(long, requires = "digraphs")]
        labeled: bool,
        #[arg(long, value_enum, default_value = "d6")]
        format: Format,
        /// Print only the number of digraphs.
        #[arg(long)]
        count: bool,
    },
    /// Runs a campaign and prints its JSON report.
    Scan {
        #[arg(long)]
        campaign: CampaignKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value = "oriented")]
        mode: Mode,
        /// Hosts are tournaments instead of all digraphs.
        #[arg(long)]
        tournaments: bool,
        /// Sample this many hosts meeting the chromatic threshold.
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        /// Overridden by the BLOCKPATH_SEED environment variable.
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        /// Probability in thousandths that a sampled pair is empty.
        #[arg(long)]
        absent_per_mille: Option<u32>,
        /// One digraph per isomorphism class (exhaustive digraph scans).
        #[arg(long)]
        dedupe: bool,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        /// Largest tournament order enumerated exhaustively.
        #[arg(long, default_value_t = 8)]
        tournament_cap: usize,
        /// Append the report to this JSONL store.
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Chromatic thresholds for three-block paths on m vertices.
    Bounds {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    T31,
    T33,
    L23,
    Origins,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    D6,
    Edges,
}

struct Fail {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Fail {
    Fail {
        code,
        message: message.into(),
    }
}

fn usage(e: impl std::fmt::Display) -> Fail {
    fail(USAGE, e.to_string())
}

fn read_input(input: &str) -> Result<Digraph, Fail> {
    if let Some(name) = input.strip_prefix("fixture:") {
        return fixture(name).map_err(usage);
    }
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(usage)?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| usage(format!("{input}: {e}")))?
    };
    parse_any(&text).map_err(|e| usage(format!("{input}: {e}")))
}

fn witness_json(w: &PathWitness) -> String {
    serde_json::json!({ "pattern": w.pattern.to_string(), "vertices": w.vertices }).to_string()
}

fn chi(input: &str) -> Result<(), Fail> {
    let g = read_input(input)?;
    let c = chromatic_number(&g).map_err(usage)?;
    println!("chi {}", c.chi);
    let colours: Vec<String> = c.coloring.iter().map(usize::to_string).collect();
    println!("coloring {}", colours.join(" "));
    match c.evidence {
        LowerBoundEvidence::Clique(k) => {
            let k: Vec<String> = k.iter().map(usize::to_string).collect();
            println!("clique {}", k.join(" "));
        }
        LowerBoundEvidence::Infeasible { colors } => println!("infeasible {colors}"),
    }
    Ok(())
}

fn find(blocks: Vec<usize>, first: Direction, input: &str) -> Result<(), Fail> {
    let g = read_input(input)?;
    let p = BlockPattern::new(blocks, first).map_err(usage)?;
    match find_pattern(&g, &p) {
        Ok(Some(w)) => {
            println!("{}", witness_json(&w));
            Ok(())
        }
        Ok(None) => Err(fail(NOT_FOUND, format!("no {p}"))),
        Err(e) => Err(fail(NOT_FOUND, e.to_string())),
    }
}

fn print_trace(trace: &ProofTrace) {
    if !trace.steps.is_empty() {
        println!("{}", trace.to_json_lines());
    }
}

fn prove(
    theorem: Theorem,
    k: usize,
    m: Option<usize>,
    i: Option<usize>,
    show_trace: bool,
    input: &str,
) -> Result<(), Fail> {
    let g = read_input(input)?;
    let found = match theorem {
        Theorem::T31 => find_p1l1_at_least(&g, k),
        Theorem::T33 => find_p1k1(&g, k),
        Theorem::Origins => find_p1k1_via_origins(&g, k),
        Theorem::L23 => find_three_block_decomposition(&g, k, i.unwrap_or(0), m.unwrap_or(0)),
    };
    match found {
        Ok((w, trace)) => {
            println!("{}", witness_json(&w));
            if show_trace {
                print_trace(&trace);
            }
            Ok(())
        }
        Err(ProofError::InternalInconsistency { step, reason, trace }) => {
            if show_trace {
                print_trace(&trace);
            }
            Err(fail(INCONSISTENT, format!("internal inconsistency at {step}: {reason}")))
        }
        Err(e @ ProofError::ChromaticTooSmall { .. }) => Err(fail(NOT_FOUND, e.to_string())),
        Err(e) => Err(usage(e)),
    }
}

fn enumerate(
    tournaments: bool,
    n: usize,
    mode: Mode,
    labeled: bool,
    format: Format,
    count: bool,
) -> Result<(), Fail> {
    let show = |g: &Digraph| match format {
        Format::D6 => to_digraph6(g),
        Format::Edges => to_edge_list_inline(g),
    };
    let all: Box<dyn Iterator<Item = Digraph>> = if tournaments {
        Box::new(enumerate_tournaments(n, 10).map_err(usage)?.into_iter())
    } else {
        let cap = if labeled { DEFAULT_LABELED_CAP } else { DEFAULT_DEDUPE_CAP };
        Box::new(enumerate_digraphs(n, mode, !labeled, cap).map_err(usage)?)
    };
    let io_err = |e: io::Error| fail(1, e.to_string());
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut total = 0u64;
    for g in all {
        total += 1;
        if !count {
            writeln!(out, "{}", show(&g)).map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)?;
    if count {
        println!("{total}");
    }
    Ok(())
}

/// `BLOCKPATH_SEED` wins over `--seed`.
fn effective_seed(flag: Option<u64>) -> Result<Option<u64>, Fail> {
    match std::env::var(SEED_VAR) {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{SEED_VAR}={s} is not an unsigned integer"))),
        _ => Ok(flag),
    }
}

fn bounds(m: usize) -> Result<(), Fail> {
    let ge = g_extreme(m).map_err(usage)?;
    println!("m {m}");
    println!("g_extreme={ge}");
    println!("burr={}", burr_bound(m));
    println!("f_upper={}", ge.min(burr_bound(m)));
    let top = extreme_index(m).map_err(usage)?;
    let row: Vec<String> = (0..=top)
        .map(|i| format!("g({m},{i})={}", g(m, i).expect("index in range")))
        .collect();
    println!("{}", row.join(" "));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Chi { input } => chi(&input),
        Command::Find { pattern, first, input } => find(pattern, first, &input),
        Command::Prove { theorem, k, m, i, trace, input } => prove(theorem, k, m, i, trace, &input),
        Command::Enum { tournaments, n, mode, labeled, format, count, .. } => {
            enumerate(tournaments, n, mode, labeled, format, count)
        }
        Command::Scan {
            campaign,
            k,
            n_max,
            n_min,
            mode,
            tournaments,
            samples,
            seed,
            absent_per_mille,
            dedupe,
            m,
            i,
            tournament_cap,
            store,
        } => {
            let mut c = Campaign::new(campaign, k, n_min.min(n_max), n_max).mode(mode);
            if tournaments {
                c = c.tournaments();
            }
            if let (Some(count), Some(seed)) = (samples, effective_seed(seed)?) {
                c = c.sampled(count, seed);
            }
            if let Some(p) = absent_per_mille {
                c = c.absent_per_mille(p);
            }
            if dedupe {
                c = c.dedupe();
            }
            if m.is_some() || i.is_some() {
                c.m = m;
                c.i = i;
            }
            let opts = RunOptions {
                tournament_cap,
                ..RunOptions::default()
            };
            let report = run_campaign_with(&c, &opts).map_err(usage)?;
            println!("{}", report.to_json_line());
            if let Some(path) = store {
                let s = Store::new(path);
                match s.append(&report).map_err(|e| fail(1, e.to_string()))? {
                    Appended::New => {}
                    Appended::Duplicate => eprintln!(
                        "note: {} already holds campaign {}",
                        s.path().display(),
                        report.campaign_hash
                    ),
                }
            }
            let proved = matches!(
                campaign,
                CampaignKind::TheoremT31
                    | CampaignKind::TheoremT33
                    | CampaignKind::TheoremOrigins
                    | CampaignKind::LemmaL23
            );
            if !report.failures.is_empty() || (proved && !report.counterexamples.is_empty()) {
                return Err(fail(
                    INCONSISTENT,
                    format!(
                        "{} failures, {} counterexamples",
                        report.failures.len(),
                        report.counterexamples.len()
                    ),
                ));
            }
            Ok(())
        }
        Command::Bounds { m } => bounds(m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("blockpath: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
