use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use lincode_core::classify::{self, RunOptions};
use lincode_core::code::{macwilliams_rational, power_moments};
use lincode_core::extender::{self, BUDGET_ENV};
use lincode_core::tables::{self, Suite};
use lincode_core::{
    canon, galois, ArchiveError, Budget, CanonError, ClassificationTask, ClassifyError, CodeArchive, CodeError,
    ExtensionError, ExtensionProblem, WeightSet, WeightSpec,
};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Archive(#[from] ArchiveError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Code(CodeError::InconsistentInput { .. }) => 2,
            CliError::Classify(ClassifyError::InvalidTask(_)) => 2,
            CliError::Extension(ExtensionError::InvalidWeights(_) | ExtensionError::InvalidMultiplicity) => 2,
            _ => 1,
        }
    }
}

/// How a successful command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Mismatch,
    Partial,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::Partial => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "lincode", version, about = "Classify linear codes over small finite fields up to isometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all codes of the given parameters, dimension by dimension.
    Classify(ClassifyArgs),
    /// Extend every code of an archive by one dimension.
    Extend(ExtendArgs),
    /// Print invariants of every code of an archive.
    Invariants(InvariantsArgs),
    /// Dual weight distribution via the MacWilliams identities.
    Macwilliams(MacwilliamsArgs),
    /// Rerun classifications and compare them with the shipped counts.
    VerifyTables(VerifyArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("weight_spec").required(true).args(["d", "weights"])))]
struct ClassifyArgs {
    #[arg(long)]
    q: u32,
    /// Minimum distance.
    #[arg(long)]
    d: Option<u32>,
    /// Allowed nonzero weights, comma separated.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    /// Only even weights (with --d).
    #[arg(long)]
    even: bool,
    #[arg(long)]
    nmax: u32,
    #[arg(long)]
    kmax: usize,
    /// Only codes without repeated columns.
    #[arg(long)]
    projective: bool,
    /// Cap on column multiplicities of reported codes.
    #[arg(long)]
    max_mult: Option<u32>,
    /// Cap on the redundancy n - k.
    #[arg(long)]
    max_redundancy: Option<u32>,
    #[arg(long, default_value_t = 1)]
    shards: usize,
    /// Directory for per-cell archives and counts.tsv; reruns resume from it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep counts only, no archives.
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Print counts of codes of length at most n.
    #[arg(long)]
    cumulative: bool,
    #[arg(long)]
    no_canonical: bool,
    #[arg(long)]
    no_lex: bool,
}

#[derive(Args)]
struct ExtendArgs {
    #[arg(long)]
    input: PathBuf,
    /// Multiplicity of the new point.
    #[arg(long)]
    r: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u32>,
    #[arg(long)]
    no_canonical: bool,
    #[arg(long)]
    no_lex: bool,
    /// Output archive; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget_nodes: Option<u64>,
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(long)]
    input: PathBuf,
    /// Report divisibility by this number.
    #[arg(long)]
    delta: Option<u32>,
    /// Also compute the automorphism group order.
    #[arg(long)]
    aut: bool,
}

#[derive(Args)]
struct MacwilliamsArgs {
    /// Weight distribution, either `A_0,A_1,...` or sparse `i:A_i,...`.
    #[arg(long)]
    a: String,
    /// Code length; defaults to the last listed weight.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: usize,
    /// Also check the first four power moment identities.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// table1-small, formula-k2, table4-k2 or table5-small.
    suite: String,
    /// Largest length for formula-k2.
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, default_value_t = 1)]
    shards: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Extend(a) => cmd_extend(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Macwilliams(a) => cmd_macwilliams(a),
        Command::VerifyTables(a) => cmd_verify_tables(a),
    };
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map_or_else(Budget::from_env, Budget::nodes)
}

fn cmd_classify(a: ClassifyArgs) -> Result<Status, CliError> {
    if a.even && a.d.is_none() {
        return Err(CliError::Usage("--even needs --d".into()));
    }
    let weights = match (a.d, a.weights) {
        (Some(d), None) => WeightSpec::MinDistance {
            d,
            delta: if a.even { 2 } else { 1 },
        },
        (None, Some(w)) => WeightSpec::Explicit(w),
        _ => return Err(CliError::Usage("give exactly one of --d and --weights".into())),
    };
    let mut task = ClassificationTask::new(a.q, weights, a.nmax, a.kmax)
        .with_shards(a.shards)
        .with_filters(!a.no_canonical, !a.no_lex)
        .with_budget(budget(a.budget_nodes))
        .with_max_redundancy(a.max_redundancy);
    task.projective = a.projective;
    task.max_mult = a.max_mult;
    let options = RunOptions {
        out_dir: a.out,
        count_only: a.count_only,
    };
    let result = classify::classify_with(&task, &options)?;
    let cumulative = result.cumulative();
    let first = result.cells.iter().filter(|(_, c)| c.count > 0).map(|(&(n, _), _)| n).min();
    let mut out = io::stdout().lock();
    if let Some(first) = first {
        for n in first..=a.nmax as usize {
            let cells: Vec<String> = (1..=a.kmax)
                .map(|k| {
                    let count = if a.cumulative {
                        cumulative.get(&(n, k)).copied().unwrap_or(0)
                    } else {
                        result.count(n, k).unwrap_or(0)
                    };
                    let partial = result.cells.get(&(n, k)).is_some_and(|c| !c.complete);
                    format!("{count}{}", if partial { "*" } else { "" })
                })
                .collect();
            writeln!(out, "{n}: {}", cells.join(" "))?;
        }
    }
    if result.is_complete() {
        Ok(Status::Ok)
    } else {
        eprintln!("counts marked * are lower bounds: the node budget ran out (raise it with --budget-nodes or {BUDGET_ENV})");
        Ok(Status::Partial)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => lincode_core::archive::write_atomic(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_extend(a: ExtendArgs) -> Result<Status, CliError> {
    let input = CodeArchive::read(&a.input)?;
    let weights = WeightSet::new(a.weights)?;
    let budget = budget(a.budget_nodes);
    let mut children = Vec::new();
    let mut complete = true;
    for parent in input.to_codes()? {
        let problem = ExtensionProblem::new(parent, a.r, weights.clone()).with_filters(!a.no_canonical, !a.no_lex);
        let outcome = extender::extend(&problem, budget)?;
        complete &= outcome.complete;
        children.extend(outcome.children);
    }
    let children = canon::dedupe(children)?;
    let archive = CodeArchive::from_codes(input.q, input.n + a.r as usize, input.k + 1, &children, complete, None);
    write_output(a.out.as_deref(), &archive.to_string())?;
    eprintln!("{} children", children.len());
    Ok(if complete { Status::Ok } else { Status::Partial })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_invariants(a: InvariantsArgs) -> Result<Status, CliError> {
    let archive = CodeArchive::read(&a.input)?;
    let mut out = io::stdout().lock();
    for (i, code) in archive.to_codes()?.iter().enumerate() {
        writeln!(out, "code {}: [{},{}]_{}", i + 1, code.length(), code.k(), code.q())?;
        writeln!(out, "  weight enumerator: {}", code.weight_enumerator())?;
        writeln!(out, "  column multiplicity: min {}, max {}", code.min_col_mult(), code.max_col_mult())?;
        writeln!(out, "  projective: {}", yes_no(code.is_projective()))?;
        if let Some(delta) = a.delta {
            writeln!(out, "  divisible by {delta}: {}", yes_no(code.is_divisible(delta)))?;
        }
        match code.minimal_codewords_count() {
            Ok(m) => writeln!(out, "  minimal codewords: {m}")?,
            Err(e) => eprintln!("warning: code {}: minimal codewords: {e}", i + 1),
        }
        if a.aut {
            match canon::automorphism_order(code) {
                Ok(order) => writeln!(out, "  automorphism order: {order}")?,
                Err(e) => eprintln!("warning: code {}: automorphism order: {e}", i + 1),
            }
        }
    }
    Ok(Status::Ok)
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("not an integer: {s:?}")))
}

fn parse_distribution(spec: &str, n: Option<usize>) -> Result<Vec<BigRational>, CliError> {
    let mut entries: Vec<(usize, BigInt)> = Vec::new();
    for (pos, item) in spec.split(',').enumerate() {
        match item.split_once(':') {
            Some((i, v)) => {
                let i = i.trim().parse().map_err(|_| CliError::Usage(format!("bad index in {item:?}")))?;
                entries.push((i, parse_int(v)?));
            }
            None => entries.push((pos, parse_int(item)?)),
        }
    }
    let last = entries.iter().map(|e| e.0).max().unwrap_or(0);
    let n = n.unwrap_or(last);
    if last > n {
        return Err(CliError::Usage(format!("weight {last} above length {n}")));
    }
    let mut a = vec![BigRational::zero(); n + 1];
    for (i, v) in entries {
        a[i] += BigRational::from_integer(v);
    }
    Ok(a)
}

fn format_distribution(b: &[BigRational]) -> String {
    let terms: Vec<String> = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let coef = if c.is_integer() { c.to_integer().to_string() } else { format!("({c})") };
            let power = if i == 1 { "x".to_string() } else { format!("x^{i}") };
            match i {
                0 => coef,
                _ if c.is_one() => power,
                _ => format!("{coef}{power}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_macwilliams(a: MacwilliamsArgs) -> Result<Status, CliError> {
    galois::field(a.q).map_err(|e| CliError::Usage(e.to_string()))?;
    let dist = parse_distribution(&a.a, a.n)?;
    let b = macwilliams_rational(&dist, a.q, a.k)?;
    let mut out = io::stdout().lock();
    writeln!(out, "B = {}", format_distribution(b.coeffs()))?;
    let mut status = Status::Ok;
    if b.to_integers().is_none() {
        writeln!(out, "note: some B_j is not an integer, so no such code exists")?;
    }
    if a.check {
        for m in power_moments(&dist, b.coeffs(), a.q, a.k, 4) {
            let verdict = if m.holds() { "ok" } else { "FAILED" };
            writeln!(out, "moment {}: {} = {} {verdict}", m.nu, m.lhs, m.rhs)?;
            if !m.holds() {
                status = Status::Mismatch;
            }
        }
    }
    Ok(status)
}

fn cmd_verify_tables(a: VerifyArgs) -> Result<Status, CliError> {
    let mut suite: Suite = a.suite.parse().map_err(CliError::Usage)?;
    if let (Suite::FormulaK2 { n_max }, Some(n)) = (&mut suite, a.nmax) {
        *n_max = n;
    }
    let report = tables::run_suite(suite, a.shards)?;
    let mut out = io::stdout().lock();
    for c in &report.checks {
        let verdict = if c.ok() { "ok" } else { "MISMATCH" };
        writeln!(out, "n={} k={}: expected {} got {} {verdict}", c.n, c.k, c.expected, c.actual)?;
    }
    let bad = report.mismatches().count();
    writeln!(out, "{suite}: {} checks, {bad} mismatches", report.checks.len())?;
    Ok(if bad > 0 {
        Status::Mismatch
    } else if !report.complete {
        Status::Partial
    } else {
        Status::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dense_and_sparse_distributions() {
        let dense = parse_distribution("1,0,0,7,7,0,0,1", None).unwrap();
        assert_eq!(dense.len(), 8);
        let sparse = parse_distribution("0:1,3:7,4:7,7:1", None).unwrap();
        assert_eq!(dense, sparse);
        assert_eq!(parse_distribution("0:1", Some(3)).unwrap().len(), 4);
        assert!(parse_distribution("0:1,5:2", Some(3)).is_err());
        assert!(parse_distribution("1,x", None).is_err());
    }

    #[test]
    fn formats_distributions() {
        let b: Vec<BigRational> = [1, 0, 0, 0, 7].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(format_distribution(&b), "1 + 7x^4");
        let b: Vec<BigRational> = [1, 3, 3, 1].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(format_distribution(&b), "1 + 3x + 3x^2 + x^3");
        let half = vec![BigRational::new(1.into(), 2.into())];
        assert_eq!(format_distribution(&half), "(1/2)");
    }
}
