use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dihedral_nullity::arith::{divisors, totient};
use dihedral_nullity::census::{CensusOutcome, CensusSummary, DEFAULT_MAX_INSTANCES, DEFAULT_SAMPLES_PER_N};
use dihedral_nullity::export::to_dot;
use dihedral_nullity::nullity::Source;
use dihedral_nullity::{
    audit_instance, build_deltas, cyclotomic, divides, null_vector_check, p_power_criterion,
    run_census, Agreement, AuditRecord, CensusFilter, CensusSpec, CirculantMatrix, ConnectingSet,
    Error, Mode, Sampling,
};

const EXIT_PARSE: u8 = 1;
const EXIT_INVALID_SET: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "dnull",
    version,
    about = "Singularity and nullity of Cayley graphs over cyclic and dihedral groups"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled censuses.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Skip the requirement that H generates the group.
    #[arg(long, global = true)]
    allow_disconnected: bool,
    /// Cap on candidates visited by exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INSTANCES)]
    max_instances: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one Cayley graph.
    Analyze(InstanceArgs),
    /// Enumerate connecting sets and compare the formula with the exact oracle.
    Census(CensusArgs),
    /// Census plus spectrum, null-vector and eigensolver checks; fails on any miss.
    Audit(CensusArgs),
    /// Verify the kernel vector certified by one cyclotomic divisibility.
    NullVectorCheck(NullVectorArgs),
    /// Write the graph or its audit record to a file.
    Export(ExportArgs),
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    n: usize,
    /// Rotation exponents R, comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    rot: Vec<usize>,
    /// Reflection exponents S, comma-separated (dihedral mode only).
    #[arg(long = "ref", value_delimiter = ',', num_args = 0..)]
    refl: Vec<usize>,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Single order; shorthand for --n-min N --n-max N.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long)]
    n_max: Option<usize>,
    /// Enumerate every candidate regardless of n.
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Draw this many instances per n instead of enumerating.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, value_enum, default_value_t = FilterArg::All)]
    filter: FilterArg,
    /// Print one line per audited instance.
    #[arg(long)]
    records: bool,
    /// Also write the records as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct NullVectorArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    d: usize,
    /// delta_plus, delta_minus or psi_prime.
    #[arg(long)]
    source: Source,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum)]
    format: FormatArg,
    /// Destination file; `-` writes to stdout.
    #[arg(long, short, default_value = "-")]
    output: PathBuf,
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Cyclic,
    Dihedral,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Cyclic => Mode::Cyclic,
            ModeArg::Dihedral => Mode::Dihedral,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum FilterArg {
    All,
    PPower,
    Balanced,
}

impl From<FilterArg> for CensusFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => CensusFilter::All,
            FilterArg::PPower => CensusFilter::PPowerCriterion,
            FilterArg::Balanced => CensusFilter::Balanced,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Dot,
    Json,
    Csv,
}

/// A failure carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Self::new(EXIT_IO, format!("cannot write {}: {err}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidConnectingSet(_)
            | Error::OrderTooSmall(_)
            | Error::ExponentOutOfRange { .. } => EXIT_INVALID_SET,
            _ => EXIT_PARSE,
        };
        Self::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze(args) => analyze(cli, args),
        Command::Census(args) => census(cli, args, false),
        Command::Audit(args) => census(cli, args, true),
        Command::NullVectorCheck(args) => null_vector(cli, args),
        Command::Export(args) => export(cli, args),
    }
}

fn instance(args: &InstanceArgs) -> Result<(ConnectingSet, Mode), Failure> {
    let cs = ConnectingSet::new(args.n, args.rot.iter().copied(), args.refl.iter().copied())?;
    Ok((cs, args.mode.into()))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn analyze(cli: &Cli, args: &InstanceArgs) -> Result<(), Failure> {
    let (cs, mode) = instance(args)?;
    let record = audit_instance(&cs, mode, !cli.allow_disconnected)?;
    if cli.json {
        print_json(&record);
        return Ok(());
    }
    print!("{}", render_analysis(&cs, &record));
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_analysis(cs: &ConnectingSet, record: &AuditRecord) -> String {
    let n = cs.n();
    let mode = record.mode;
    let deltas = build_deltas(cs);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "instance: {mode} {cs}  (|V| = {}, valency {})",
        mode.group_order(n),
        cs.len()
    );
    let _ = writeln!(out, "Ψ'(x)  = {}", deltas.psi_prime);
    match mode {
        Mode::Cyclic => {
            let _ = writeln!(out, "\n   d  φ(d)  Φ_d | Ψ'");
            for d in divisors(n) {
                let hit = divides(&cyclotomic(d), &deltas.psi_prime).expect("monic");
                let _ = writeln!(out, "{d:>4}  {:>4}  {:>7}", totient(d), yes_no(hit));
            }
            let row = (0..n).map(|k| i64::from(cs.rotations().contains(&k))).collect();
            let _ = writeln!(out, "\neigenvalues Ψ'(ω^j), ω = e^(2πi/{n}):");
            for (j, z) in CirculantMatrix::new(row).eigenvalues().iter().enumerate() {
                let d = n / num_gcd(n, j);
                let _ = writeln!(out, "  j={j:<3} order {d:<3} {:>12.6}", z.re);
            }
        }
        Mode::Dihedral => {
            let _ = writeln!(out, "Ψ''(x) = {}", deltas.psi_double_prime);
            let _ = writeln!(out, "Δ+(x)  = {}", deltas.delta_plus);
            let _ = writeln!(out, "Δ-(x)  = {}", deltas.delta_minus);
            let _ = writeln!(out, "\n   d  φ(d)  Φ_d | Δ+  Φ_d | Δ-");
            for d in divisors(n) {
                let phi = cyclotomic(d);
                let plus = divides(&phi, &deltas.delta_plus).expect("monic");
                let minus = divides(&phi, &deltas.delta_minus).expect("monic");
                let _ = writeln!(
                    out,
                    "{d:>4}  {:>4}  {:>8}  {:>8}",
                    totient(d),
                    yes_no(plus),
                    yes_no(minus)
                );
            }
            if let Ok(c) = p_power_criterion(cs) {
                let _ = writeln!(
                    out,
                    "\nD_{{{}^{}}} criterion: |R| != |S|: {}, |H| < {}: {}  => predicts non-singular: {}",
                    c.p,
                    c.s,
                    yes_no(c.size_unbalanced),
                    c.p,
                    yes_no(c.small),
                    yes_no(c.criterion_met)
                );
            }
        }
    }
    let verdict = |null: usize| if null > 0 { "singular" } else { "nonsingular" };
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "paper nullity:  {} ({})",
        record.paper.total,
        verdict(record.paper.total)
    );
    if mode == Mode::Dihedral {
        let _ = writeln!(
            out,
            "  note: φ(d) is counted once per polynomial Φ_d divides, so a d dividing both Δ+ and Δ- counts twice"
        );
    }
    let _ = writeln!(
        out,
        "oracle nullity: {} ({}, rank {})",
        record.oracle.nullity,
        verdict(record.oracle.nullity),
        record.oracle.rank
    );
    let _ = writeln!(out, "agreement: {}", record.agreement);
    if let Some(w) = record.witness {
        let _ = writeln!(
            out,
            "witness: null(M+N) = {}, null(M-N) = {}",
            w.nullity_plus, w.nullity_minus
        );
    }
    out
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn census_spec(cli: &Cli, args: &CensusArgs) -> CensusSpec {
    let (n_min, n_max) = match args.n {
        Some(n) => (n, n),
        None => (args.n_min, args.n_max.unwrap_or(args.n_min)),
    };
    let sampling = match (args.exhaustive, args.sample) {
        (true, _) => Sampling::Exhaustive,
        (false, Some(per_n)) => Sampling::Sample { per_n },
        (false, None) => Sampling::Auto {
            per_n: DEFAULT_SAMPLES_PER_N,
        },
    };
    CensusSpec {
        mode: args.mode.into(),
        n_min,
        n_max,
        sampling,
        seed: cli.seed,
        max_instances: cli.max_instances,
        allow_disconnected: cli.allow_disconnected,
        filter: args.filter.into(),
    }
}

fn census(cli: &Cli, args: &CensusArgs, deep: bool) -> Result<(), Failure> {
    let spec = census_spec(cli, args);
    let outcome = run_census(&spec, deep)?;
    if let Some(path) = &args.csv {
        write_output(path, &csv_text(&outcome.records))?;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if cli.json {
        for r in &outcome.records {
            let _ = writeln!(out, "{}", serde_json::to_string(r).expect("serializable"));
        }
        let _ = writeln!(
            out,
            "{}",
            serde_json::json!({ "summary": outcome.summary })
        );
    } else {
        if args.records {
            for r in &outcome.records {
                let _ = writeln!(out, "{}", r.csv_row());
            }
        }
        let _ = write!(out, "{}", render_summary(&spec, &outcome.summary));
    }
    drop(out);
    check_outcome(&outcome, deep)
}

fn check_outcome(outcome: &CensusOutcome, deep: bool) -> Result<(), Failure> {
    let s = &outcome.summary;
    if s.violations > 0 {
        let first = outcome
            .records
            .iter()
            .find(|r| r.agreement == Agreement::Violation)
            .map(|r| r.csv_row())
            .unwrap_or_default();
        return Err(Failure::new(
            EXIT_VIOLATION,
            format!("{} instances where the formula exceeds the oracle, first: {first}", s.violations),
        ));
    }
    if deep && !s.passes() {
        return Err(Failure::new(EXIT_VIOLATION, "audit checks failed, see summary"));
    }
    Ok(())
}

fn render_summary(spec: &CensusSpec, s: &CensusSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "census: {} n={}..={} sampling={:?} seed={} filter={:?}",
        spec.mode, spec.n_min, spec.n_max, spec.sampling, spec.seed, spec.filter
    );
    let _ = writeln!(out, "instances:         {}", s.instances);
    let _ = writeln!(out, "equal:             {}", s.equal);
    let _ = writeln!(out, "paper_undercounts: {}", s.paper_undercounts);
    let _ = writeln!(out, "violations:        {}", s.violations);
    let _ = writeln!(out, "singular:          {}", s.singular);
    if let (Some(lo), Some(hi)) = (s.min_nullity, s.max_nullity) {
        let _ = writeln!(out, "nullity range:     {lo}..={hi}");
    }
    if !s.p_power.is_empty() {
        let _ = writeln!(out, "\nprime-power orders (criterion: |R| != |S| and |H| < p):");
        let _ = writeln!(out, "     n   p  s  met  nonsingular  balanced  singular  ok");
        for r in &s.p_power {
            let _ = writeln!(
                out,
                "  {:>4} {:>3} {:>2} {:>4} {:>12} {:>9} {:>9}  {}",
                r.n,
                r.p,
                r.s,
                r.criterion_met,
                r.criterion_met_nonsingular,
                r.balanced,
                r.balanced_singular,
                yes_no(r.conforms())
            );
        }
    }
    if let Some(d) = &s.deep {
        let _ = writeln!(out, "\nchecks:");
        let _ = writeln!(out, "  definition mismatches:   {}", d.definition_failures);
        let _ = writeln!(out, "  spectrum split failures: {}", d.spectrum_failures);
        let _ = writeln!(
            out,
            "  null vectors:            {} checked, {} failed",
            d.null_vector_checks, d.null_vector_failures
        );
        let _ = writeln!(
            out,
            "  eigensolver consistency: {} checked, {} failed",
            d.consistency_checks, d.consistency_failures
        );
    }
    let _ = writeln!(out, "result: {}", if s.passes() { "PASS" } else { "FAIL" });
    out
}

fn csv_text(records: &[AuditRecord]) -> String {
    let mut text = String::from(AuditRecord::csv_header());
    text.push('\n');
    for r in records {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    text
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| Failure::io(path, e))
    }
}

fn null_vector(cli: &Cli, args: &NullVectorArgs) -> Result<(), Failure> {
    let (cs, mode) = instance(&args.instance)?;
    cs.validate(mode, !cli.allow_disconnected)?;
    let check = null_vector_check(&cs, mode, args.d, args.source)?;
    if cli.json {
        print_json(&serde_json::json!({
            "d": check.d,
            "source": check.source,
            "residual": check.residual,
            "norm": check.norm,
            "passes": check.passes(),
        }));
    } else {
        println!(
            "d={} source={}: |Av| = {:.3e}, |v| = {:.6}, kernel vector: {}",
            check.d,
            check.source,
            check.residual,
            check.norm,
            yes_no(check.passes())
        );
    }
    if check.passes() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VIOLATION, "certificate vector is not in the kernel"))
    }
}

fn export(cli: &Cli, args: &ExportArgs) -> Result<(), Failure> {
    let (cs, mode) = instance(&args.instance)?;
    let record = audit_instance(&cs, mode, !cli.allow_disconnected)?;
    let text = match args.format {
        FormatArg::Dot => to_dot(&cs, mode),
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&record).expect("serializable");
            s.push('\n');
            s
        }
        FormatArg::Csv => csv_text(std::slice::from_ref(&record)),
    };
    write_output(&args.output, &text)
}
