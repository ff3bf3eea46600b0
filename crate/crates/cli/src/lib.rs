//! Command-line driver: exact quantization, numeric verification suites,
//! phase-space dumps and Kochen-Specker colorability.
//!
//! [`run`] does all the work and returns an [`Outcome`]; the binary only
//! prints it. Human-readable text and the JSON report are kept apart so
//! that the JSON stream is byte-for-byte reproducible.

pub mod dump;
pub mod format;
pub mod report;
pub mod verify;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ksquant_core::focknum::{write_csv, FockConfig, FockError};
use ksquant_core::kscolor::{bundled, find_bases, search_valuation, VectorSet, DEFAULT_TOL};
use ksquant_core::{
    canonicalize, change_alphabet, ks2b_report, parse_op_expr, parse_phase_expr, quantize, symbol, Alphabet, OpPoly,
    OrderTag, Scheme,
};

use dump::{Range, StateSpec};
use report::RunReport;
use verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "ksquant", version, about = "Exact quantization maps, phase-space numerics and KS colorability")]
pub struct Cli {
    /// Print the JSON report on stdout; human text goes to stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub hbar: f64,
    /// Length scale of the oscillator basis.
    #[arg(long = "l", global = true, default_value_t = 1.0)]
    pub l: f64,
    /// Number-basis dimension for numeric commands (default depends on the command).
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quantize a phase-space polynomial in x, p.
    Quantize {
        #[arg(long, default_value = "weyl", value_parser = parse_scheme)]
        scheme: Scheme,
        expr: String,
    },
    /// Symbol of an operator polynomial in X, P or a, ad.
    Symbol {
        #[arg(long, default_value = "weyl", value_parser = parse_scheme)]
        scheme: Scheme,
        expr: String,
    },
    /// Compare the symbol of Q(A) Q(B) with the product A B.
    Ks2b {
        #[arg(value_parser = parse_scheme)]
        scheme: Scheme,
        a: String,
        b: String,
    },
    /// Run a numeric verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Decide colorability of a vector-set file or bundled set.
    Kscolor {
        path: PathBuf,
        /// Remove this basis (index in the sorted basis list) before searching.
        #[arg(long)]
        drop_basis: Option<usize>,
        /// Orthogonality tolerance for float sets.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Wigner function on a grid, as CSV.
    WignerDump {
        #[command(flatten)]
        dump: DumpArgs,
        /// Write the Weyl symbol instead of the density.
        #[arg(long)]
        symbol: bool,
    },
    /// Husimi function on a grid, as CSV.
    HusimiDump {
        #[command(flatten)]
        dump: DumpArgs,
    },
}

#[derive(clap::Args, Debug)]
pub struct DumpArgs {
    /// fock:N, coherent:X,P or position-projector:LO,HI
    #[arg(long, default_value = "fock:0", allow_hyphen_values = true)]
    pub state: StateSpec,
    #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
    pub x_range: Range,
    #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
    pub p_range: Range,
    /// Points per axis.
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse()
}

const DUMP_CUTOFF: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Numeric failures caused by the arguments are input errors; the rest are failures.
fn fock(e: FockError) -> CliError {
    match e {
        FockError::InvalidConfig(_)
        | FockError::InvalidGrid(_)
        | FockError::InvalidDensity(_)
        | FockError::EmptyInterval { .. }
        | FockError::NotHermitian { .. }
        | FockError::DimensionMismatch(..) => CliError::Input(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

pub struct Outcome {
    pub report: RunReport,
    pub human: String,
    /// CSV payload destined for stdout.
    pub data: Option<String>,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(report: RunReport, human: String) -> Self {
        Outcome { report, human, data: None, exit_code: 0 }
    }
}

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Quantize { .. } => "quantize",
        Command::Symbol { .. } => "symbol",
        Command::Ks2b { .. } => "ks2b",
        Command::Verify { .. } => "verify",
        Command::Kscolor { .. } => "kscolor",
        Command::WignerDump { .. } => "wigner-dump",
        Command::HusimiDump { .. } => "husimi-dump",
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Quantize { scheme, expr } => cmd_quantize(expr, *scheme),
        Command::Symbol { scheme, expr } => cmd_symbol(expr, *scheme),
        Command::Ks2b { scheme, a, b } => cmd_ks2b(a, b, *scheme),
        Command::Verify { suite } => cmd_verify(*suite, config(cli, suite.default_cutoff())?),
        Command::Kscolor { path, drop_basis, tol } => cmd_kscolor(path, *drop_basis, *tol),
        Command::WignerDump { dump, symbol } => cmd_dump(cli, dump, Some(*symbol)),
        Command::HusimiDump { dump } => cmd_dump(cli, dump, None),
    }
}

fn config(cli: &Cli, default_cutoff: usize) -> Result<FockConfig, CliError> {
    FockConfig::new(cli.cutoff.unwrap_or(default_cutoff), cli.hbar, cli.l).map_err(input)
}

fn report(command: &str, inputs: Value, result: Value) -> RunReport {
    RunReport { command: command.into(), inputs, result, checks: Vec::new() }
}

fn in_order(op: &OpPoly, alphabet: Alphabet, order: OrderTag) -> OpPoly {
    canonicalize(&change_alphabet(op, alphabet), order).expect("order matches alphabet")
}

pub fn cmd_quantize(expr: &str, scheme: Scheme) -> Result<Outcome, CliError> {
    let a = parse_phase_expr(expr).map_err(input)?;
    let op = quantize(&a, scheme);
    let standard = in_order(&op, Alphabet::XP, OrderTag::Standard).to_string();
    let anti_normal = in_order(&op, Alphabet::Ladder, OrderTag::AntiNormal).to_string();
    let symmetrized = match scheme {
        Scheme::Weyl => format::symmetrized(&a),
        Scheme::AntiWick => None,
    };
    let mut human = match &symmetrized {
        Some(s) if *s != standard => format!("{s} = {standard}\n"),
        _ => format!("{standard}\n"),
    };
    human.push_str(&format!("anti-normal: {anti_normal}\n"));
    let mut result = json!({ "standard": standard, "anti_normal": anti_normal });
    if let Some(s) = symmetrized {
        result["symmetrized"] = json!(s);
    }
    let inputs = json!({ "expr": a.to_string(), "scheme": scheme.to_string() });
    Ok(Outcome::ok(report("quantize", inputs, result), human))
}

pub fn cmd_symbol(expr: &str, scheme: Scheme) -> Result<Outcome, CliError> {
    let op = parse_op_expr(expr).map_err(input)?;
    let s = symbol(&op, scheme).to_string();
    let inputs = json!({ "expr": op.to_string(), "scheme": scheme.to_string() });
    Ok(Outcome::ok(report("symbol", inputs, json!({ "symbol": s })), format!("{s}\n")))
}

pub fn cmd_ks2b(a: &str, b: &str, scheme: Scheme) -> Result<Outcome, CliError> {
    let pa = parse_phase_expr(a).map_err(input)?;
    let pb = parse_phase_expr(b).map_err(input)?;
    let r = ks2b_report(&pa, &pb, scheme);
    let zero = r.discrepancy.is_zero();
    let result = json!({
        "product_symbol": r.product_symbol.to_string(),
        "classical_product": r.classical_product.to_string(),
        "discrepancy": r.discrepancy.to_string(),
        "discrepancy_zero": zero,
        "commute": r.commute,
    });
    let human = format!(
        "symbol of Q(A) Q(B): {}\nA B: {}\ndiscrepancy: {}\noperators {}\n",
        r.product_symbol,
        r.classical_product,
        r.discrepancy,
        if r.commute { "commute" } else { "do not commute" },
    );
    let inputs = json!({ "a": pa.to_string(), "b": pb.to_string(), "scheme": scheme.to_string() });
    Ok(Outcome::ok(report("ks2b", inputs, result), human))
}

pub fn cmd_verify(suite: Suite, cfg: FockConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (result, checks) = suite.run(cfg).map_err(fock)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut human = format!("{} (cutoff {}, hbar {}, l {})\n", suite.name(), cfg.cutoff(), cfg.hbar(), cfg.l());
    for c in &checks {
        human.push_str(&c.line());
        human.push('\n');
    }
    if failed == 0 {
        human.push_str(&format!("all {} checks passed in {:.2?}\n", checks.len(), start.elapsed()));
    } else {
        human.push_str(&format!("{failed} of {} checks failed in {:.2?}\n", checks.len(), start.elapsed()));
    }
    let inputs = json!({ "suite": suite.name(), "cutoff": cfg.cutoff(), "hbar": cfg.hbar(), "l": cfg.l() });
    let report = RunReport { command: "verify".into(), inputs, result, checks };
    Ok(Outcome { report, human, data: None, exit_code: if failed == 0 { 0 } else { 1 } })
}

/// Reads `path`, `path.json`, or a bundled set named by the file stem.
fn load_set(path: &Path, tol: f64) -> Result<(VectorSet, String), CliError> {
    let with_ext = path.with_extension("json");
    for candidate in [path, with_ext.as_path()] {
        if candidate.is_file() {
            let text =
                std::fs::read_to_string(candidate).map_err(|e| input(format!("{}: {e}", candidate.display())))?;
            let vs = VectorSet::from_json(&text, tol).map_err(|e| input(format!("{}: {e}", candidate.display())))?;
            return Ok((vs, candidate.display().to_string()));
        }
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    match bundled(stem) {
        Some(vs) if path.extension().is_none_or(|e| e == "json") => Ok((vs, format!("bundled:{stem}"))),
        _ => Err(input(format!("{}: no such file or bundled set", path.display()))),
    }
}

pub fn cmd_kscolor(path: &Path, drop_basis: Option<usize>, tol: f64) -> Result<Outcome, CliError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(input(format!("tolerance {tol} must lie in (0, 1)")));
    }
    let (vs, source) = load_set(path, tol)?;
    let all = find_bases(&vs, tol);
    let bases = match drop_basis {
        Some(k) if k >= all.len() => {
            return Err(input(format!("cannot drop basis {k}: only {} bases", all.len())));
        }
        Some(k) => all.without(k),
        None => all.clone(),
    };
    let start = Instant::now();
    let verdict = search_valuation(&bases);
    let elapsed = start.elapsed();
    let labels = |idx: &[usize]| idx.iter().map(|&i| vs.rays()[i].label.clone()).collect::<Vec<_>>();
    let ones = verdict.witness.as_ref().map(|w| w.ones());
    let result = json!({
        "dim": vs.dim(),
        "field": vs.field().to_string(),
        "vectors": vs.len(),
        "bases_found": all.len(),
        "bases": bases.bases,
        "colorable": verdict.colorable,
        "nodes_explored": verdict.nodes_explored,
        "witness_ones": ones,
        "witness_labels": ones.as_deref().map(labels),
        "contradiction_core": verdict.contradiction_core,
        "warnings": vs.warnings(),
    });
    let mut human = format!("{source}: {} vectors in dimension {}, {} bases\n", vs.len(), vs.dim(), all.len());
    for w in vs.warnings() {
        human.push_str(&format!("warning: {w}\n"));
    }
    if let Some(k) = drop_basis {
        human.push_str(&format!("dropped basis {k}: {:?}\n", labels(&all.bases[k])));
    }
    human.push_str(&format!("{verdict}\n"));
    if let Some(ones) = &ones {
        human.push_str(&format!("value 1 on {}\n", labels(ones).join(" ")));
    }
    human.push_str(&format!("search took {elapsed:.2?}\n"));
    let inputs = json!({ "path": source, "drop_basis": drop_basis, "tol": tol });
    let exit_code = if verdict.colorable { 0 } else { 3 };
    Ok(Outcome { report: report("kscolor", inputs, result), human, data: None, exit_code })
}

/// `wigner` is `Some(symbol)` for the Wigner dump and `None` for Husimi.
fn cmd_dump(cli: &Cli, args: &DumpArgs, wigner: Option<bool>) -> Result<Outcome, CliError> {
    let name = if wigner.is_some() { "wigner-dump" } else { "husimi-dump" };
    if cli.json && args.output.is_none() {
        return Err(input("--json needs --output for CSV dumps"));
    }
    let cfg = config(cli, DUMP_CUTOFF)?;
    if args.points < 2 {
        return Err(input("--points must be at least 2"));
    }
    let m = args.state.matrix(cfg).map_err(fock)?;
    let grid = dump::grid(args.x_range, args.p_range, args.points).map_err(fock)?;
    let rows = match wigner {
        Some(symbol) => dump::wigner_rows(&m, &grid, symbol),
        None => dump::husimi_rows(m, &grid),
    }
    .map_err(fock)?;
    let mut csv = Vec::new();
    write_csv(&mut csv, &rows).expect("writing to memory");
    let csv = String::from_utf8(csv).expect("ascii output");
    let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r.2), b.max(r.2)));
    let quantity = match wigner {
        Some(true) => "weyl symbol",
        Some(false) => "wigner density",
        None => "husimi",
    };
    let result = json!({
        "quantity": quantity,
        "rows": rows.len(),
        "min": lo,
        "max": hi,
        "output": args.output.as_ref().map(|p| p.display().to_string()),
    });
    let inputs = json!({
        "state": format!("{:?}", args.state),
        "x_range": [args.x_range.0, args.x_range.1],
        "p_range": [args.p_range.0, args.p_range.1],
        "points": args.points,
        "cutoff": cfg.cutoff(),
        "hbar": cfg.hbar(),
        "l": cfg.l(),
    });
    let human = format!("{quantity}: {} rows, values in [{lo:.6e}, {hi:.6e}]\n", rows.len());
    let data = match &args.output {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| input(format!("{}: {e}", path.display())))?;
            None
        }
        None => Some(csv),
    };
    Ok(Outcome { report: report(name, inputs, result), human, data, exit_code: 0 })
}
