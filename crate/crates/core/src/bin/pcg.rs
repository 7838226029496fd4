//! Command-line surface: `check`, `family`, `graph`, `nice`.
//!
//! Exit codes: 0 ok, 2 usage/parse, 3 resource cap, 4 cross-check conflict.
//! The factorization budget defaults to 10^7 Pollard-Brent iterations and can
//! be set by `--budget` or the `PCG_BUDGET` environment variable.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pcg_core::cograph::{decompose, Recognition};
use pcg_core::criteria::{family_sweep, simple_verdict_table};
use pcg_core::groups::{build_group, parse_spec, DEFAULT_CAP};
use pcg_core::numtheory::{classify_nice, DEFAULT_BUDGET};
use pcg_core::powergraph::{
    derived_graph, directed_power_graph, p2_restriction, power_graph, DerivedKind,
};
use pcg_core::report::{
    family_records, family_table, run_check, table_records, table_text, Method, RECORDS_HEADER,
};
use pcg_core::PcgError;

#[derive(Parser)]
#[command(
    name = "pcg",
    about = "Power graphs of finite groups: construction, cograph checking, family sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Element cap for explicit group construction.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Pollard-Brent iteration budget per composite (overrides PCG_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
}

impl CommonOpts {
    fn budget(&self) -> u64 {
        self.budget
            .or_else(|| {
                std::env::var("PCG_BUDGET")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(DEFAULT_BUDGET)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a group's power graph is a cograph.
    Check {
        /// Group spec, e.g. "sym:5", "psl2:9", "dp(cyclic:4,cyclic:6)".
        spec: String,
        /// Route(s) to run: brute, criterion, or both (cross-validated).
        #[arg(long, default_value = "both")]
        method: String,
        /// Output format: text or records.
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sweep a family criterion over a parameter range, or print the static
    /// verdict table with `simple-table`.
    Family {
        /// psl2-char2, suzuki, dihedral, cyclic, sym, alt, or simple-table.
        family: String,
        /// Upper bound for the family parameter (alias of the specific ones).
        #[arg(long)]
        max: Option<u64>,
        #[arg(long)]
        max_d: Option<u64>,
        #[arg(long)]
        max_e: Option<u64>,
        #[arg(long)]
        max_m: Option<u64>,
        #[arg(long)]
        max_n: Option<u64>,
        /// Output format: table or records.
        #[arg(long, default_value = "table")]
        format: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Export a graph derived from a group.
    Graph {
        spec: String,
        /// power, directed, reduced, enhanced, gk, p2, or cotree.
        #[arg(long, default_value = "power")]
        kind: String,
        /// dot or hex (ignored for cotree).
        #[arg(long, default_value = "dot")]
        format: String,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify a natural number: prime power, product of two distinct
    /// primes, or neither.
    Nice {
        n: String,
        /// Output format: text or records.
        #[arg(long, default_value = "text")]
        format: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn cmd_check(spec: &str, method: &str, format: &str, common: &CommonOpts) -> Result<i32, PcgError> {
    let method: Method = method.parse()?;
    let report = run_check(spec, method, common.cap, common.budget())?;
    match format {
        "records" => print!("{}", report.to_records()),
        "text" => print!("{}", report.to_text()),
        other => {
            return Err(PcgError::InvalidParameter(format!(
                "unknown format '{other}' (expected text or records)"
            )))
        }
    }
    if report.conflict() {
        eprintln!("error: the brute-force and criterion verdicts disagree on {spec}");
        return Ok(4);
    }
    Ok(0)
}

fn cmd_family(
    family: &str,
    max: Option<u64>,
    format: &str,
    common: &CommonOpts,
) -> Result<i32, PcgError> {
    if family == "simple-table" {
        let rows = simple_verdict_table();
        match format {
            "records" => print!("{}", table_records(rows)),
            "table" => print!("{}", table_text(rows)),
            other => {
                return Err(PcgError::InvalidParameter(format!(
                    "unknown format '{other}' (expected table or records)"
                )))
            }
        }
        return Ok(0);
    }
    let max = max.ok_or_else(|| {
        PcgError::InvalidParameter(format!(
            "family '{family}' needs a range: pass --max (or --max-d/--max-e/--max-m/--max-n)"
        ))
    })?;
    let rows = family_sweep(family, max, common.budget())?;
    match format {
        "records" => print!("{}", family_records(family, &rows)),
        "table" => print!("{}", family_table(family, &rows)),
        other => {
            return Err(PcgError::InvalidParameter(format!(
                "unknown format '{other}' (expected table or records)"
            )))
        }
    }
    Ok(0)
}

fn cmd_graph(
    spec_text: &str,
    kind: &str,
    format: &str,
    output: Option<&std::path::Path>,
    common: &CommonOpts,
) -> Result<i32, PcgError> {
    let spec = parse_spec(spec_text)?;
    let group = build_group(&spec, common.cap)?;
    let render_undirected = |g: &pcg_core::powergraph::Graph| -> Result<String, PcgError> {
        match format {
            "dot" => Ok(g.to_dot()),
            "hex" => Ok(g.to_hex()),
            other => Err(PcgError::InvalidParameter(format!(
                "unknown format '{other}' (expected dot or hex)"
            ))),
        }
    };
    let out = match kind {
        "power" => render_undirected(&power_graph(&group))?,
        "reduced" => render_undirected(&derived_graph(&group, DerivedKind::Reduced))?,
        "enhanced" => render_undirected(&derived_graph(&group, DerivedKind::Enhanced))?,
        "gk" => render_undirected(&derived_graph(&group, DerivedKind::Gk))?,
        "p2" => render_undirected(&p2_restriction(&group))?,
        "directed" => {
            let d = directed_power_graph(&group);
            match format {
                "dot" => d.to_dot(),
                "hex" => d.to_hex(),
                other => {
                    return Err(PcgError::InvalidParameter(format!(
                        "unknown format '{other}' (expected dot or hex)"
                    )))
                }
            }
        }
        "cotree" => match decompose(&power_graph(&group)) {
            Recognition::Cograph(t) => format!("cotree: {}\n", t.to_text()),
            Recognition::NotCograph(w) => {
                let [a, b, c, d] = w.vertices();
                format!("p4: {a} {b} {c} {d}\n")
            }
        },
        other => {
            return Err(PcgError::InvalidParameter(format!(
                "unknown kind '{other}' (expected power, directed, reduced, enhanced, gk, p2 or cotree)"
            )))
        }
    };
    match output {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| PcgError::InvalidParameter(format!("cannot write {path:?}: {e}")))?;
            f.write_all(out.as_bytes())
                .map_err(|e| PcgError::InvalidParameter(format!("cannot write {path:?}: {e}")))?;
        }
        None => print!("{out}"),
    }
    Ok(0)
}

fn cmd_nice(n: &str, format: &str, common: &CommonOpts) -> Result<i32, PcgError> {
    let value: pcg_core::numtheory::Nat = n
        .parse()
        .map_err(|_| PcgError::InvalidParameter(format!("'{n}' is not a natural number")))?;
    if value == 0u32.into() {
        return Err(PcgError::InvalidParameter("nice requires n >= 1".into()));
    }
    let class = classify_nice(&value, common.budget());
    match format {
        "records" => {
            println!("{RECORDS_HEADER}");
            println!("nice\tn={value}\tclass={class}");
        }
        "text" => {
            println!("n = {value}");
            println!("class: {class}");
        }
        other => {
            return Err(PcgError::InvalidParameter(format!(
                "unknown format '{other}' (expected text or records)"
            )))
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, PcgError> {
    match &cli.command {
        Command::Check {
            spec,
            method,
            format,
            common,
        } => cmd_check(spec, method, format, common),
        Command::Family {
            family,
            max,
            max_d,
            max_e,
            max_m,
            max_n,
            format,
            common,
        } => {
            let bound = max.or(*max_d).or(*max_e).or(*max_m).or(*max_n);
            cmd_family(family, bound, format, common)
        }
        Command::Graph {
            spec,
            kind,
            format,
            output,
            common,
        } => cmd_graph(spec, kind, format, output.as_deref(), common),
        Command::Nice { n, format, common } => cmd_nice(n, format, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
