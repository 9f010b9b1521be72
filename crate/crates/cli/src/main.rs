//! Command-line driver: exact minimum s-t cut under cut-query accounting
//! or a two-party protocol simulation, plus baselines, invariant checks,
//! experiment sweeps and trend tables.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use stcut_core::comm::{CommConfig, TwoPartyInstance};
use stcut_core::graph::{parse_edge_list, Graph};
use stcut_core::harness::{
    baseline_augmenting, baseline_learn_all, generate, generate_two_party, min_cut_comm_driver,
    min_cut_cq_driver, sweep, trend_report, CqConfig, GenKind, RunReport, SweepSpec,
};

#[derive(Parser)]
#[command(name = "stcut", version, about = "minimum s-t cut under restricted access models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SparsifierChoice {
    /// Query-budgeted uniform edge sampling (validity checked post hoc).
    Sampled,
    /// Learn the whole graph; always correct, accounting flagged over-budget.
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineKind {
    Aug,
    Learn,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance through the cut-query oracle.
    SolveCq {
        /// Edge-list file (`n s t` header, `u v` rows).
        #[arg(long, conflicts_with = "gen")]
        input: Option<PathBuf>,
        /// Generator spec, e.g. er:20:0.3 | path:8 | complete:12 | gadget:16:8 | cluster:14:2.
        #[arg(long)]
        gen: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SparsifierChoice::Sampled)]
        sparsifier: SparsifierChoice,
        /// Largest n the witness machinery enumerates cuts at (max 22).
        #[arg(long, default_value_t = 12)]
        witness_cap: usize,
        /// Append the run report row to this CSV file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the per-tag query ledger to this CSV file.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Dump a fully verified growth run (potential gaps, kill
        /// fractions, flow paths) to this CSV file.
        #[arg(long)]
        grow_stats: Option<PathBuf>,
    },
    /// Solve one instance through the two-party protocol simulator.
    SolveComm {
        /// Alice's edge-list file.
        #[arg(long, requires = "input_bob", conflicts_with = "gen")]
        input_alice: Option<PathBuf>,
        /// Bob's edge-list file (same header as Alice's).
        #[arg(long)]
        input_bob: Option<PathBuf>,
        #[arg(long)]
        gen: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        witness_cap: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the message transcript to this CSV file.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Run an exact oracle baseline.
    Baseline {
        #[arg(long, value_enum)]
        kind: BaselineKind,
        #[arg(long, conflicts_with = "gen")]
        input: Option<PathBuf>,
        #[arg(long)]
        gen: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the quick invariant suites and print one line per check.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every (algorithm, instance, seed) combination of a sweep spec.
    Sweep {
        /// Sweep spec file: `alg ...`, `inst ...`, `seeds ...` lines.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        witness_cap: usize,
    },
    /// Query-count trend table on the prescribed-flow family (nu = n/2).
    Trend {
        /// Comma-separated sizes, e.g. 16,32,64,128.
        #[arg(long, default_value = "16,32,64,128")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_gen(spec: &str) -> Result<(GenKind, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let n: usize = parts
        .get(1)
        .context("generator spec needs a size, e.g. path:8")?
        .parse()
        .context("invalid generator size")?;
    let kind = match parts[0] {
        "path" => GenKind::Path,
        "complete" => GenKind::Complete,
        "er" => GenKind::Er {
            p: parts
                .get(2)
                .context("er needs a probability, e.g. er:20:0.3")?
                .parse()
                .context("invalid probability")?,
        },
        "gadget" => GenKind::FlowGadget {
            nu: parts
                .get(2)
                .context("gadget needs a flow value, e.g. gadget:16:8")?
                .parse()
                .context("invalid flow value")?,
        },
        "cluster" => GenKind::TwoCluster {
            bridges: parts
                .get(2)
                .context("cluster needs a bridge count, e.g. cluster:14:2")?
                .parse()
                .context("invalid bridge count")?,
        },
        other => bail!("unknown generator kind `{other}`"),
    };
    Ok((kind, n))
}

fn load_graph(input: &Option<PathBuf>, gen: &Option<String>, seed: u64) -> Result<Graph> {
    match (input, gen) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let mixed = parse_edge_list(&text)?;
            if !mixed.f.is_empty() {
                bail!("the hidden graph must be undirected (no `D` rows)");
            }
            Ok(mixed.g)
        }
        (None, Some(spec)) => {
            let (kind, n) = parse_gen(spec)?;
            Ok(generate(&kind, n, seed)?)
        }
        (None, None) => bail!("provide --input FILE or --gen SPEC"),
    }
}

fn emit_report(report: &RunReport, path: &Option<PathBuf>) -> Result<()> {
    println!(
        "{}: n={} m={} value={} reference={} correct={} sparsifier_ok={} mode={} queries={} bits={}",
        report.algorithm,
        report.n,
        report.m,
        report.value,
        report.nu_reference,
        report.correct,
        report.sparsifier_ok,
        report.mode,
        report.queries_total,
        report.bits_total
    );
    eprintln!("wall time: {} ms", report.wall_ms);
    if let Some(p) = path {
        let mut csv = String::new();
        if !p.exists() {
            csv.push_str(RunReport::csv_header());
            csv.push('\n');
        }
        csv.push_str(&report.csv_row());
        csv.push('\n');
        use std::io::Write;
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(p)
            .with_context(|| format!("opening {}", p.display()))?;
        f.write_all(csv.as_bytes())?;
    }
    Ok(())
}

fn run_verify(seed: u64) -> Result<bool> {
    let rows = stcut_core::harness::verify_suite(seed)?;
    let mut all_ok = true;
    for (name, ok) in rows {
        println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    }
    Ok(all_ok)
}

fn load_instance(
    alice: &Option<PathBuf>,
    bob: &Option<PathBuf>,
    gen: &Option<String>,
    seed: u64,
) -> Result<TwoPartyInstance> {
    match (alice, bob, gen) {
        (Some(a), Some(b), _) => {
            let ga = load_graph(&Some(a.clone()), &None, seed)?;
            let gb = load_graph(&Some(b.clone()), &None, seed)?;
            Ok(TwoPartyInstance::new(ga, gb)?)
        }
        (None, None, Some(spec)) => {
            let (kind, n) = parse_gen(spec)?;
            Ok(generate_two_party(&kind, n, seed)?)
        }
        _ => bail!("provide --input-alice/--input-bob or --gen SPEC"),
    }
}

fn write_or_print(text: &str, path: &Option<PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn real_main() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::SolveCq {
            input,
            gen,
            seed,
            sparsifier,
            witness_cap,
            report,
            ledger,
            grow_stats,
        } => {
            if witness_cap > 22 {
                bail!("--witness-cap is capped at 22");
            }
            let g = load_graph(&input, &gen, seed)?;
            let cfg = CqConfig {
                seed,
                exact_sparsifier: matches!(sparsifier, SparsifierChoice::Exact),
                witness_cap,
            };
            if let Some(p) = &grow_stats {
                let delta = ((g.n() as f64).powf(0.8).ceil() as u64).clamp(1, g.n() as u64);
                let csv = stcut_core::harness::grow_debug_csv(&g, delta, seed, witness_cap)?;
                std::fs::write(p, csv)?;
            }
            let r = min_cut_cq_driver(&g, &cfg)?;
            if let Some(p) = ledger {
                // re-run cheaply is wasteful; the per-tag breakdown is in the report
                let mut csv = String::from("tag,count\n");
                for (k, v) in &r.ledger {
                    csv.push_str(&format!("{k},{v}\n"));
                }
                csv.push_str(&format!("total,{}\n", r.queries_total));
                std::fs::write(&p, csv)?;
            }
            emit_report(&r, &report)?;
            Ok(r.correct)
        }
        Command::SolveComm {
            input_alice,
            input_bob,
            gen,
            seed,
            witness_cap,
            report,
            transcript,
        } => {
            if witness_cap > 22 {
                bail!("--witness-cap is capped at 22");
            }
            let inst = load_instance(&input_alice, &input_bob, &gen, seed)?;
            let cfg = CommConfig {
                witness_cap,
                protocol_seed: seed,
                verify_rounds: false,
            };
            if let Some(p) = &transcript {
                let run = stcut_core::comm::min_cut_comm(&inst, &cfg)?;
                std::fs::write(p, run.transcript.to_csv())?;
            }
            let r = min_cut_comm_driver(&inst, &cfg, seed)?;
            emit_report(&r, &report)?;
            Ok(r.correct)
        }
        Command::Baseline {
            kind,
            input,
            gen,
            seed,
            report,
        } => {
            let g = load_graph(&input, &gen, seed)?;
            let r = match kind {
                BaselineKind::Aug => baseline_augmenting(&g, seed)?,
                BaselineKind::Learn => baseline_learn_all(&g, seed)?,
            };
            emit_report(&r, &report)?;
            Ok(r.correct)
        }
        Command::Verify { seed } => run_verify(seed),
        Command::Sweep {
            spec,
            report,
            witness_cap,
        } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("reading {}", spec.display()))?;
            let parsed = SweepSpec::parse(&text)?;
            let (csv, reports) = sweep(&parsed, witness_cap)?;
            write_or_print(&csv, &report)?;
            let bad = reports.iter().filter(|r| !r.correct).count();
            if bad > 0 {
                eprintln!("{bad} run(s) incorrect");
            }
            Ok(bad == 0)
        }
        Command::Trend {
            sizes,
            seed,
            report,
        } => {
            let sizes: Vec<usize> = sizes
                .split(',')
                .map(|s| s.trim().parse().context("invalid size"))
                .collect::<Result<_>>()?;
            let csv = trend_report(&sizes, seed, 12)?;
            write_or_print(&csv, &report)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

