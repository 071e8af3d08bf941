//! Command-line driver for the two-lane merging engine.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::json;

use mergepath_core::bijections::{phi, phi_inverse, psi, step_map, step_map_inverse, CoinSequence};
use mergepath_core::classes::{partition, ColorBlindClass};
use mergepath_core::counting::{
    m_count_closed, m_count_k_closed, m_count_k_recursive, m_count_recursive,
};
use mergepath_core::expectation::{
    expected_length, expected_length_k, right_lane_sum, right_lane_sum_k, Rational,
};
use mergepath_core::oracle::{monte_carlo_expected, verify_bijections, verify_counts};
use mergepath_core::trails::{longest_trail, rho_image, trail_to_snake};
use mergepath_core::{simulate, ArrivalSequence};

#[derive(Parser)]
#[command(name = "mergepath", version, about = "Exact two-lane traffic-merging combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate an arrival sequence and print the full merge result as JSON
    Simulate {
        /// Arrival sequence as a 0/1 string
        bits: String,
    },
    /// Exact path counts
    Count {
        #[command(subcommand)]
        query: CountQuery,
    },
    /// Emit a reference table
    Table {
        /// Which table: 1 (endpoint counts), 3 (lane sums by zeros),
        /// 4 (endpoint counts by zeros), 5 (table 4 at k=6), 6 (classes)
        which: u8,
        /// Largest coordinate in the table
        #[arg(long)]
        max: Option<u64>,
        /// Zero count for table 4
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact expected right-lane length, or lane sums
    Expect {
        /// Sequence length
        len: u64,
        /// Restrict to sequences with exactly this many zeros
        #[arg(long)]
        k: Option<u64>,
        /// Print a decimal approximation with this many digits instead of p/q
        #[arg(long)]
        digits: Option<usize>,
        /// Print the integer lane sum instead of the expectation
        #[arg(long)]
        sum: bool,
        /// Emit lane sums for lengths 0..=len in OEIS b-file format (offset 0)
        #[arg(long)]
        bfile: bool,
    },
    /// Apply one of the structure-preserving maps
    Bijection {
        #[command(subcommand)]
        map: BijectionMap,
    },
    /// Longest trail in the looped complete graph on the given vertex count
    Trail {
        vertices: usize,
        /// Print the trail as a domino snake
        #[arg(long)]
        snake: bool,
        /// Check that the edge-map images partition the trail's edge set
        #[arg(long)]
        check_partition: bool,
    },
    /// Color-blind equivalence classes of all sequences of one length
    Classes {
        len: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render the merging path of a sequence
    Render {
        bits: String,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the brute-force verification suite and emit a JSON report
    OracleVerify {
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        #[arg(long, default_value_t = 6)]
        m_max: u64,
        #[arg(long, default_value_t = 6)]
        k_max: u64,
        /// Exhaustive bijection checks run for every length up to this
        #[arg(long, default_value_t = 10)]
        len_max: u32,
        /// Also Monte Carlo check this length against the exact formula
        #[arg(long)]
        monte_carlo: Option<u32>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CountQuery {
    /// Paths ending at (n, m)
    Mn {
        n: u64,
        m: u64,
        /// Use the recurrence instead of the closed formula
        #[arg(long)]
        recursive: bool,
    },
    /// Paths ending at (n, m) with exactly k zeros
    Mnk {
        n: u64,
        m: u64,
        k: u64,
        #[arg(long)]
        recursive: bool,
    },
}

#[derive(Subcommand)]
enum BijectionMap {
    /// Coin-flip map: bits to H/T flips (or back with --invert)
    Phi {
        input: String,
        #[arg(long)]
        invert: bool,
    },
    /// Reflection map: split after the s-th bounce, complement the suffix
    Psi {
        bits: String,
        #[arg(long)]
        split: usize,
    },
    /// Step map: trade the last off-origin bounce for two zeros
    Step {
        bits: String,
        #[arg(long)]
        invert: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
}

enum CliError {
    /// Bad input or out-of-range request: exit 2.
    Usage(String),
    /// A checked property failed: exit 1.
    Verification(String),
    Io(std::io::Error),
}

impl From<mergepath_core::Error> for CliError {
    fn from(e: mergepath_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_bits(s: &str) -> Result<ArrivalSequence, CliError> {
    s.parse::<ArrivalSequence>().map_err(CliError::from)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Simulate { bits } => {
            let b = parse_bits(&bits)?;
            let res = simulate(&b);
            let value = json!({
                "sequence": b.to_string(),
                "length": b.len(),
                "zeros": b.zeros(),
                "right_lane": res.right_lane,
                "left_lane": res.left_lane,
                "bounces": res.bounce_positions,
                "touches": res.touch_positions,
                "parity": res.parity.to_string(),
                "endpoint": { "n": res.endpoint.0, "m": res.endpoint.1 },
                "r": res.r(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
            Ok(())
        }
        Command::Count { query } => {
            let value = match query {
                CountQuery::Mn { n, m, recursive } => {
                    if recursive {
                        m_count_recursive(n, m)
                    } else {
                        m_count_closed(n, m)?
                    }
                }
                CountQuery::Mnk { n, m, k, recursive } => {
                    if recursive {
                        m_count_k_recursive(n, m, k)
                    } else {
                        m_count_k_closed(n, m, k)?
                    }
                }
            };
            println!("{value}");
            Ok(())
        }
        Command::Table { which, max, k, format } => print_table(which, max, k, format),
        Command::Expect { len, k, digits, sum, bfile } => print_expect(len, k, digits, sum, bfile),
        Command::Bijection { map } => {
            match map {
                BijectionMap::Phi { input, invert } => {
                    if invert {
                        let c: CoinSequence = input.parse()?;
                        println!("{}", phi_inverse(&c));
                    } else {
                        println!("{}", phi(&parse_bits(&input)?));
                    }
                }
                BijectionMap::Psi { bits, split } => {
                    println!("{}", psi(&parse_bits(&bits)?, split)?);
                }
                BijectionMap::Step { bits, invert } => {
                    let b = parse_bits(&bits)?;
                    let out = if invert { step_map_inverse(&b)? } else { step_map(&b)? };
                    println!("{out}");
                }
            }
            Ok(())
        }
        Command::Trail { vertices, snake, check_partition } => {
            if vertices == 0 {
                return Err(CliError::Usage("the graph needs at least one vertex".into()));
            }
            let t = longest_trail(vertices);
            if snake {
                println!("{}", trail_to_snake(&t));
            } else {
                println!("{t}");
            }
            if check_partition {
                check_edge_partition(vertices)?;
                println!("edge partition: PASS ({} edges)", t.len());
            }
            Ok(())
        }
        Command::Classes { len, format } => print_classes(len, format),
        Command::Render { bits, format: RenderFormat::Svg, output } => {
            let b = parse_bits(&bits)?;
            let svg = svg::render(&b);
            match output {
                Some(path) => fs::write(path, svg)?,
                None => print!("{svg}"),
            }
            Ok(())
        }
        Command::OracleVerify {
            n_max,
            m_max,
            k_max,
            len_max,
            monte_carlo,
            samples,
            seed,
        } => oracle_verify(n_max, m_max, k_max, len_max, monte_carlo, samples, seed),
    }
}

/// The per-position edge-map images must tile the canonical trail's edges.
fn check_edge_partition(vertices: usize) -> Result<(), CliError> {
    let mut union = std::collections::BTreeSet::new();
    let mut total = 0usize;
    for p in 1..=vertices {
        let mut bits = vec![1u8; vertices];
        bits[p - 1] = 0;
        let b = ArrivalSequence::from_bits(bits)?;
        let edges = rho_image(&b)?;
        total += edges.len();
        union.extend(edges);
    }
    let trail_edges = longest_trail(vertices).edge_set();
    if union != trail_edges || total != trail_edges.len() {
        return Err(CliError::Verification(format!(
            "edge-map images do not tile the trail on {vertices} vertices"
        )));
    }
    Ok(())
}

fn rational_string(r: &Rational, digits: Option<usize>) -> String {
    match digits {
        None => format!("{r}"),
        Some(d) => decimal_string(r, d),
    }
}

/// Truncating decimal expansion; all expectations here are nonnegative.
fn decimal_string(r: &Rational, digits: usize) -> String {
    let (int, rem) = r.numer().div_rem(r.denom());
    if digits == 0 {
        return int.to_string();
    }
    let scaled: BigInt = rem * BigInt::from(10u8).pow(digits as u32) / r.denom();
    format!("{int}.{:0>width$}", scaled.to_string(), width = digits)
}

fn print_expect(
    len: u64,
    k: Option<u64>,
    digits: Option<usize>,
    sum: bool,
    bfile: bool,
) -> Result<(), CliError> {
    if bfile {
        if !sum || k.is_some() {
            return Err(CliError::Usage(
                "--bfile emits the lane-sum integer sequence; use it with --sum and no --k".into(),
            ));
        }
        for i in 0..=len {
            println!("{i} {}", right_lane_sum(i));
        }
        return Ok(());
    }
    if sum {
        let value = match k {
            Some(k) => right_lane_sum_k(len, k)?,
            None => right_lane_sum(len),
        };
        println!("{value}");
        return Ok(());
    }
    let e = match k {
        Some(k) => expected_length_k(len, k)?,
        None => expected_length(len),
    };
    println!("{}", rational_string(&e, digits));
    Ok(())
}

fn grid_rows(
    max: u64,
    cell: impl Fn(u64, u64) -> Option<BigUint>,
) -> (Vec<String>, Vec<Vec<String>>) {
    let header: Vec<String> = std::iter::once("m".to_string())
        .chain((0..=max).map(|n| n.to_string()))
        .collect();
    let rows = (0..=max)
        .rev()
        .map(|m| {
            std::iter::once(m.to_string())
                .chain((0..=max).map(|n| cell(n, m).map(|v| v.to_string()).unwrap_or_default()))
                .collect()
        })
        .collect();
    (header, rows)
}

fn emit_grid(header: Vec<String>, rows: Vec<Vec<String>>, format: Format) {
    match format {
        Format::Json => {
            let value = json!({ "header": header, "rows": rows });
            println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
        }
        Format::Csv => {
            println!("{}", header.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        Format::Text => {
            let widths: Vec<usize> = header
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain(std::iter::once(h.len()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut line = String::new();
            for (h, w) in header.iter().zip(&widths) {
                let _ = write!(line, "{h:>w$} ");
            }
            println!("{}", line.trim_end());
            for row in rows {
                let mut line = String::new();
                for (c, w) in row.iter().zip(&widths) {
                    let _ = write!(line, "{c:>w$} ");
                }
                println!("{}", line.trim_end());
            }
        }
    }
}

fn print_table(which: u8, max: Option<u64>, k: Option<u64>, format: Format) -> Result<(), CliError> {
    match which {
        1 => {
            let max = max.unwrap_or(7);
            let (header, rows) = grid_rows(max, |n, m| {
                (m >= n).then(|| m_count_recursive(n, m))
            });
            emit_grid(header, rows, format);
            Ok(())
        }
        3 => {
            let max = max.unwrap_or(8);
            let header: Vec<String> = std::iter::once("l".to_string())
                .chain((0..=max).map(|k| k.to_string()))
                .collect();
            let mut rows = Vec::new();
            for len in 0..=max {
                let mut row = vec![len.to_string()];
                for k in 0..=max {
                    row.push(if k <= len {
                        right_lane_sum_k(len, k)?.to_string()
                    } else {
                        String::new()
                    });
                }
                rows.push(row);
            }
            emit_grid(header, rows, format);
            Ok(())
        }
        4 | 5 => {
            let k = if which == 5 {
                6
            } else {
                k.ok_or_else(|| CliError::Usage("table 4 needs --k".into()))?
            };
            let max = max.unwrap_or(if which == 5 { 11 } else { 6 });
            let (header, rows) = grid_rows(max, |n, m| {
                (m >= n).then(|| m_count_k_recursive(n, m, k))
            });
            emit_grid(header, rows, format);
            Ok(())
        }
        6 => {
            let len = max.unwrap_or(6);
            print_classes(len as usize, format)
        }
        other => Err(CliError::Usage(format!(
            "unknown table {other}; the tables are 1, 3, 4, 5, 6"
        ))),
    }
}

fn class_json(c: &ColorBlindClass) -> serde_json::Value {
    json!({
        "representative": c.representative.to_string(),
        "members": c.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "right_lane": c.right_lane_vector,
        "touches": c.touch_vector,
        "size": c.size(),
    })
}

fn print_classes(len: usize, format: Format) -> Result<(), CliError> {
    let classes = partition(len)?;
    match format {
        Format::Json => {
            let value: Vec<_> = classes.iter().map(class_json).collect();
            println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
        }
        Format::Csv => {
            println!("representative,members,right_lane,touches,size");
            for c in &classes {
                println!(
                    "{},{},{},{},{}",
                    c.representative,
                    c.members
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    c.right_lane_vector
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    c.touch_vector
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    c.size()
                );
            }
        }
        Format::Text => {
            for c in &classes {
                println!(
                    "{} | members {} | right lane ({}) | size {}",
                    c.representative,
                    c.members
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    c.right_lane_vector
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(","),
                    c.size()
                );
            }
        }
    }
    Ok(())
}

fn oracle_verify(
    n_max: u64,
    m_max: u64,
    k_max: u64,
    len_max: u32,
    monte_carlo: Option<u32>,
    samples: u64,
    seed: u64,
) -> Result<(), CliError> {
    let (counts, bijections) = rayon::join(
        || verify_counts(n_max, m_max, k_max),
        || verify_bijections(len_max),
    );
    let mut reports: Vec<_> = counts?;
    reports.extend(bijections?);

    let mut values: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            json!({
                "claim": r.claim,
                "params": r.params,
                "pass": r.pass,
                "counterexample": r.counterexample,
                "compared": r.compared,
            })
        })
        .collect();
    let mut all_pass = reports.iter().all(|r| r.pass);

    if let Some(len) = monte_carlo {
        let est = monte_carlo_expected(len, samples, seed)?;
        let exact = expected_length(len as u64).to_f64().unwrap_or(f64::NAN);
        let sigmas = est.sigmas_from(exact);
        let pass = sigmas < 3.0;
        all_pass &= pass;
        values.push(json!({
            "claim": "monte-carlo-expectation",
            "params": format!("len = {len}, samples = {samples}, seed = {seed}"),
            "pass": pass,
            "counterexample": (!pass).then(|| format!(
                "mean {} vs exact {exact} ({sigmas:.2} standard errors)", est.mean
            )),
            "compared": samples,
        }));
    }

    let report = json!({ "pass": all_pass, "reports": values });
    println!("{}", serde_json::to_string_pretty(&report).expect("valid json"));
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Verification("see the JSON report above".into()))
    }
}
