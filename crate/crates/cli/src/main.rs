use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twisthh_core::catalog::{display_names, resolve};
use twisthh_core::report::{certify, compute, ComputeRequest};
use twisthh_core::{CentralExtension, Error, Fault, SelftestOptions, DEFAULT_ORACLE_CAP};

mod output;

const EXIT_INPUT: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

#[derive(Parser)]
#[command(name = "twisthh", version, about = "First Hochschild cohomology of twisted group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of HH^1(k_αG) for the twists of a central extension.
    Compute(ComputeArgs),
    /// Non-Schur witnesses forcing HH^1(k_αG) to be nonzero for every twist.
    Certify(CertifyArgs),
    /// Untwisted HH^1 and Non-Schur summary for a plain group.
    Group(GroupArgs),
    /// Runs the invariant suite over the catalog.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// builtin:<name>, data:<name>, cover:<path>, perm:<path> or table:<path>
    #[arg(long)]
    cover: String,
    #[arg(long)]
    prime: u64,
    /// Report a single twist i (0 <= i < m).
    #[arg(long, conflicts_with = "all_twists")]
    twist: Option<usize>,
    /// Report every twist (the default).
    #[arg(long)]
    all_twists: bool,
    /// Cross-check against the derivation-space computation.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    cover: String,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    /// Any group spec; for covers the group Ĝ itself is used.
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    CorruptCocycle,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Skip the shipped A7 covers.
    #[arg(long)]
    no_data: bool,
    /// Deliberately break an input to exercise the failure path.
    #[arg(long, value_enum)]
    inject_fault: Option<FaultArg>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Certify(a) => run_certify(a),
        Command::Group(a) => run_group(a),
        Command::Selftest(a) => run_selftest(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load_extension(spec: &str) -> Result<CentralExtension, Error> {
    Ok(resolve(spec)?.into_extension())
}

fn run_compute(a: ComputeArgs) -> Result<u8, Error> {
    let ext = load_extension(&a.cover)?;
    let (group, cover) = display_names(&a.cover);
    let req = ComputeRequest { prime: a.prime, twist: a.twist, oracle_cap: a.oracle.then_some(a.oracle_cap) };
    let out = compute(&ext, &group, &cover, req)?;
    print!("{}", output::compute_table(&out));
    if let Some(path) = &a.json {
        output::write_json(path, &out.report)?;
    }
    if let Some(path) = &a.csv {
        output::write_csv(path, &out.report)?;
    }
    if out.report.consistent() {
        Ok(0)
    } else {
        eprintln!("consistency check failed");
        Ok(EXIT_MISMATCH)
    }
}

fn run_certify(a: CertifyArgs) -> Result<u8, Error> {
    let ext = load_extension(&a.cover)?;
    let (group, cover) = display_names(&a.cover);
    let report = certify(&ext, &group, &cover, a.prime)?;
    print!("{}", output::certify_table(&report, ext.group()));
    if let Some(path) = &a.json {
        output::write_json(path, &report.witnesses)?;
    }
    if report.witnesses.is_empty() {
        eprintln!("no witness found although {} divides |G|", a.prime);
        Ok(EXIT_MISMATCH)
    } else {
        Ok(0)
    }
}

fn run_group(a: GroupArgs) -> Result<u8, Error> {
    let g = resolve(&a.group)?.into_group();
    let (_, name) = display_names(&a.group);
    let summary = output::group_summary(&name, g, a.prime)?;
    print!("{}", summary.render());
    if let Some(path) = &a.json {
        output::write_json(path, &summary)?;
    }
    Ok(0)
}

fn run_selftest(a: SelftestArgs) -> Result<u8, Error> {
    let opts = SelftestOptions {
        oracle_cap: a.oracle_cap,
        include_data: !a.no_data,
        fault: a.inject_fault.map(|FaultArg::CorruptCocycle| Fault::CorruptCocycle),
    };
    let report = twisthh_core::run_selftest(&opts)?;
    print!("{}", output::selftest_table(&report));
    if let Some(path) = &a.json {
        output::write_json(path, &report)?;
    }
    if report.passed() {
        Ok(0)
    } else {
        eprintln!("failure manifest:");
        for f in report.failures() {
            eprintln!("  {:<28} {:<18} {}", f.suite, f.subject, f.detail);
        }
        Ok(EXIT_MISMATCH)
    }
}
