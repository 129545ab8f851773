use clap::{Args, Parser, Subcommand, ValueEnum};
use crosscap::catalog::parse_relations;
use crosscap::engine::{EngineError, EngineOptions};
use crosscap::surface::{Flavor, SurfaceSpec};
use crosscap_cli::output::render_text;
use crosscap_cli::{render_table, run_spec, verify_spec, Check, Fault, InclusiveRange, RunError, RunOptions, RunRecord, TableFormat};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::process::ExitCode;

const EXIT_OTHER: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNSTABLE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_VERIFY: u8 = 5;

/// Twisted first homology of mapping class groups of nonorientable
/// surfaces.
#[derive(Parser)]
#[command(name = "crosscap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H1 for one surface and compare it with the closed form.
    Compute(ComputeArgs),
    /// Compute a range of surfaces and print a table.
    Table(TableArgs),
    /// Run the consistency checks on one surface or the default grid.
    Verify(VerifyArgs),
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: crosscap::surface::SurfaceError| e.to_string())
}

#[derive(Args)]
struct Sampling {
    /// Ambiguity samples, including the all-zero one.
    #[arg(long, default_value_t = 17)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report 0 ms so repeated runs print identical output.
    #[arg(long)]
    no_timing: bool,
}

impl Sampling {
    fn options(&self) -> RunOptions {
        RunOptions { engine: EngineOptions { samples: self.samples.max(1), seed: self.seed }, timing: !self.no_timing, extra: Vec::new() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    boundary: u32,
    #[arg(long)]
    punctures: u32,
    /// pm+, pmk or m
    #[arg(long, value_parser = parse_flavor)]
    flavor: Flavor,
    /// Punctures whose local orientation is preserved (pmk only).
    #[arg(long)]
    k: Option<u32>,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long, value_enum, default_value = "text")]
    format: ComputeFormat,
    /// Extra relations, one `lhs = rhs` per line.
    #[arg(long)]
    relations: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value = "3..9")]
    genus: InclusiveRange,
    #[arg(long, default_value = "0..3")]
    boundary: InclusiveRange,
    #[arg(long, default_value = "0..3")]
    punctures: InclusiveRange,
    /// Defaults to every k from 0 to n.
    #[arg(long)]
    k: Option<InclusiveRange>,
    #[arg(long, value_parser = parse_flavor, default_value = "pmk")]
    flavor: Flavor,
    #[arg(long, value_enum, default_value = "markdown")]
    format: TableFormat,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args)]
struct VerifyArgs {
    /// Every spec of the default grid, all flavors.
    #[arg(long, conflicts_with_all = ["genus", "boundary", "punctures", "flavor", "k"])]
    all: bool,
    #[arg(long, required_unless_present = "all")]
    genus: Option<u32>,
    #[arg(long, required_unless_present = "all")]
    boundary: Option<u32>,
    #[arg(long, required_unless_present = "all")]
    punctures: Option<u32>,
    #[arg(long, value_parser = parse_flavor, required_unless_present = "all")]
    flavor: Option<Flavor>,
    #[arg(long)]
    k: Option<u32>,
    /// Run the suite on a deliberately wrong representation.
    #[arg(long, value_enum)]
    inject_fault: Option<Fault>,
}

fn make_spec(g: u32, s: u32, n: u32, k: Option<u32>, flavor: Flavor) -> Result<SurfaceSpec, crosscap::surface::SurfaceError> {
    SurfaceSpec::new(g, s, n, k.unwrap_or(0), flavor)
}

fn default_grid() -> Vec<SurfaceSpec> {
    let mut out = Vec::new();
    for g in 3..=9 {
        for s in 0..=3 {
            for n in 0..=3 {
                if s + n == 0 {
                    continue;
                }
                out.push(SurfaceSpec::pm_plus(g, s, n).expect("valid"));
                out.extend((0..=n).map(|k| SurfaceSpec::pmk(g, s, n, k).expect("valid")));
                if n >= 2 {
                    out.push(SurfaceSpec::full(g, s, n).expect("valid"));
                }
            }
        }
    }
    out
}

fn compute(args: &ComputeArgs) -> u8 {
    let spec = match make_spec(args.genus, args.boundary, args.punctures, args.k, args.flavor) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let mut opts = args.sampling.options();
    if let Some(path) = &args.relations {
        let parsed = std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| parse_relations(&t).map_err(|e| e.to_string()));
        match parsed {
            Ok(rels) => opts.extra = rels,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_OTHER;
            }
        }
    }
    match run_spec(&spec, &opts) {
        Ok(rec) => {
            match args.format {
                ComputeFormat::Json => println!("{}", serde_json::to_string(&rec).expect("record serializes")),
                ComputeFormat::Text => print!("{}", render_text(&rec)),
            }
            if rec.matches {
                0
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code() as u8
        }
    }
}

fn table(args: &TableArgs) -> u8 {
    let mut specs = Vec::new();
    for g in args.genus.iter() {
        for s in args.boundary.iter() {
            for n in args.punctures.iter() {
                let ks: Vec<u32> = match args.flavor {
                    Flavor::Pmk => args.k.map_or(0..=n, |r| r.lo..=r.hi.min(n)).collect(),
                    _ => vec![0],
                };
                // combinations that are not valid surfaces are skipped
                specs.extend(ks.into_iter().filter_map(|k| SurfaceSpec::new(g, s, n, k, args.flavor).ok()));
            }
        }
    }
    let opts = args.sampling.options();
    let results: Vec<(SurfaceSpec, Result<RunRecord, RunError>)> = specs.par_iter().map(|spec| (*spec, run_spec(spec, &opts))).collect();

    let mut records = Vec::new();
    let mut code = 0;
    for (spec, r) in results {
        match r {
            Ok(rec) => {
                if !rec.matches && code == 0 {
                    code = EXIT_MISMATCH;
                }
                records.push(rec);
            }
            Err(e) => {
                eprintln!("error: {spec}: {e}");
                let c = match e {
                    RunError::Engine(EngineError::UnstableSampling { .. }) => EXIT_UNSTABLE,
                    _ => EXIT_OTHER,
                };
                if code == 0 || code == EXIT_MISMATCH || c == EXIT_UNSTABLE {
                    code = c;
                }
            }
        }
    }
    print!("{}", render_table(&records, args.format));
    let matched = records.iter().filter(|r| r.matches).count();
    let summary = format!("{matched} of {} specs match the closed form", specs.len());
    match args.format {
        TableFormat::Markdown => println!("\n{summary}"),
        _ => eprintln!("{summary}"),
    }
    code
}

fn verify(args: &VerifyArgs) -> u8 {
    let specs = if args.all {
        default_grid()
    } else {
        let flavor = args.flavor.expect("required by clap");
        match make_spec(args.genus.unwrap_or(0), args.boundary.unwrap_or(0), args.punctures.unwrap_or(0), args.k, flavor) {
            Ok(s) => vec![s],
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INVALID;
            }
        }
    };
    let outcomes: Vec<_> = specs.par_iter().map(|s| (*s, verify_spec(s, args.inject_fault))).collect();
    let mut tally: BTreeMap<Check, (usize, usize, Vec<String>)> = BTreeMap::new();
    for (spec, checks) in &outcomes {
        for o in checks {
            let entry = tally.entry(o.check).or_default();
            entry.0 += 1;
            if o.failures.is_empty() {
                entry.1 += 1;
            } else if entry.2.len() < 3 {
                entry.2.push(format!("{spec}: {}", o.failures[0]));
            }
        }
    }
    if let Some(f) = args.inject_fault {
        println!("fault injected: {}", f.to_possible_value().expect("not skipped").get_name());
    }
    let mut failed = false;
    for check in Check::ALL {
        let Some((ran, passed, examples)) = tally.get(&check) else { continue };
        let ok = ran == passed;
        failed |= !ok;
        println!("{} {}: {passed}/{ran}", if ok { "PASS" } else { "FAIL" }, check.name());
        for e in examples {
            println!("    {e}");
        }
    }
    if failed {
        EXIT_VERIFY
    } else {
        0
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify(a),
    };
    ExitCode::from(code)
}
