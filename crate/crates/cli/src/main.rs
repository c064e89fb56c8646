//! `schmidt-locc`: entanglement-transformation queries on Schmidt vectors.
//!
//! Exit codes: 0 success, 1 property failure, 2 input error, 3 infeasible
//! request.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schmidt_locc::format::sig17;
use schmidt_locc::suites::{self, Suite, SuiteReport};
use schmidt_locc::{
    classify, complete_partner, entropy, family_sweep, find_partner, incomparable_rank3_fast, lift,
    reduce_all_shared, reduce_shared, ComparisonResult, Error, FamilySweep, PartnerResult, SchmidtVector,
    SearchConfig,
};

#[derive(Parser)]
#[command(name = "schmidt-locc", version, about = "LOCC convertibility of pure bipartite states")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Entropy residual accepted as equal, in bits
    #[arg(long, global = true, default_value_t = 1e-12)]
    entropy_tol: f64,
    /// Coefficients closer than this count as equal
    #[arg(long, global = true, default_value_t = 1e-9)]
    coeff_tol: f64,
    /// Bisection iteration cap
    #[arg(long, global = true, default_value_t = 200)]
    max_iters: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Seed for property runs
    #[arg(long, global = true, env = "SCHMIDT_LOCC_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement entropy in bits
    Entropy(OneState),
    /// Majorization relation between two states
    Classify {
        #[command(flatten)]
        pair: TwoStates,
        /// Compare the rank-3 shortcut with the general test (always on in debug builds)
        #[arg(long)]
        cross_check: bool,
    },
    /// Equal-entropy partner with a prescribed top coefficient
    FindPartner {
        #[command(flatten)]
        state: OneState,
        /// Top coefficient of the partner (rank 3)
        #[arg(long, conflicts_with = "prefix", required_unless_present = "prefix")]
        beta1: Option<f64>,
        /// Leading d-2 coefficients of the partner, comma separated (any rank)
        #[arg(long, value_delimiter = ',')]
        prefix: Option<Vec<f64>>,
    },
    /// Partners over a grid of top coefficients, as CSV
    Family {
        #[command(flatten)]
        state: OneState,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Append a common coefficient kappa to both states
    Lift {
        #[command(flatten)]
        pair: TwoStates,
        #[arg(long)]
        kappa: f64,
    },
    /// Remove shared coefficients and renormalize
    Reduce {
        #[command(flatten)]
        pair: TwoStates,
        /// 1-based shared index; all shared coefficients if omitted
        #[arg(long)]
        index: Option<usize>,
    },
    /// Run property suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Trial count, or `grid` for the exhaustive rank-3 suite
        #[arg(long, default_value = "1000")]
        trials: Trials,
    },
}

#[derive(Args)]
struct OneState {
    /// State as JSON, e.g. '{"coeffs":[0.45,0.39,0.16]}'
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    state: Option<String>,
    /// Read the state from a JSON file
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct TwoStates {
    #[arg(required_unless_present = "a_file", conflicts_with = "a_file")]
    a: Option<String>,
    #[arg(required_unless_present = "b_file", conflicts_with = "b_file")]
    b: Option<String>,
    #[arg(long)]
    a_file: Option<PathBuf>,
    #[arg(long)]
    b_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Theorem1,
    Theorem2,
    Schur,
    Eq5,
    Reduction,
    All,
}

#[derive(Clone, Copy)]
enum Trials {
    Count(usize),
    Grid,
}

impl FromStr for Trials {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "grid" {
            return Ok(Trials::Grid);
        }
        s.parse()
            .map(Trials::Count)
            .map_err(|_| format!("expected a trial count or `grid`, got `{s}`"))
    }
}

struct Failure {
    code: u8,
    name: &'static str,
    message: String,
}

impl Failure {
    fn input(e: Error) -> Self {
        Failure {
            code: 2,
            name: e.name(),
            message: e.to_string(),
        }
    }

    /// Infeasible requests get 3; anything else from the library is bad input.
    fn from_search(e: Error) -> Self {
        match e {
            Error::Infeasible { .. }
            | Error::OutOfDomain { .. }
            | Error::SharedTopCoefficient { .. }
            | Error::EmptyRange { .. } => Failure {
                code: 3,
                name: e.name(),
                message: e.to_string(),
            },
            Error::NoSolution(_) | Error::ConvergenceFailure { .. } => Failure {
                code: 1,
                name: e.name(),
                message: e.to_string(),
            },
            e => Failure::input(e),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_state(inline: Option<&str>, file: Option<&PathBuf>) -> Result<SchmidtVector, Failure> {
    let text = match (inline, file) {
        (Some(s), _) => s.to_owned(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Failure {
            code: 2,
            name: "Io",
            message: format!("{}: {e}", path.display()),
        })?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    SchmidtVector::from_json(&text).map_err(Failure::input)
}

impl OneState {
    fn load(&self) -> Result<SchmidtVector, Failure> {
        read_state(self.state.as_deref(), self.file.as_ref())
    }
}

impl TwoStates {
    fn load(&self) -> Result<(SchmidtVector, SchmidtVector), Failure> {
        Ok((
            read_state(self.a.as_deref(), self.a_file.as_ref())?,
            read_state(self.b.as_deref(), self.b_file.as_ref())?,
        ))
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json_opt(x: Option<usize>) -> String {
    x.map_or("null".into(), |k| k.to_string())
}

fn cmd_entropy(state: &OneState, fmt: Format, out: &mut String) -> CmdResult {
    let e = entropy(&state.load()?).bits();
    match fmt {
        Format::Plain => writeln!(out, "{e:.12}").unwrap(),
        Format::Json => writeln!(out, "{{\"entropy_bits\":{}}}", sig17(e)).unwrap(),
        Format::Csv => out.push_str(&csv_text(&["entropy_bits"], &[vec![sig17(e)]])),
    }
    Ok(0)
}

fn cmd_classify(pair: &TwoStates, cross_check: bool, cfg: &SearchConfig, fmt: Format, out: &mut String) -> CmdResult {
    let (a, b) = pair.load()?;
    let c: ComparisonResult = classify(&a, &b, cfg.coeff_tol);
    if a.effective_rank() == 3 && b.effective_rank() == 3 && (cross_check || cfg!(debug_assertions)) {
        let fast = incomparable_rank3_fast(&a, &b, cfg.coeff_tol).map_err(Failure::input)?;
        if fast != (c.relation == schmidt_locc::Relation::Incomparable) {
            writeln!(
                out,
                "{{\"a\":{},\"b\":{},\"reason\":\"rank-3 shortcut says incomparable={fast}, general test says {}\"}}",
                a.to_json(),
                b.to_json(),
                c.relation
            )
            .unwrap();
            return Ok(1);
        }
    }
    match fmt {
        Format::Plain => {
            write!(out, "{}", c.relation).unwrap();
            if let Some(k) = c.a_to_b_witness {
                write!(out, " a->b fails at k={k}").unwrap();
            }
            if let Some(k) = c.b_to_a_witness {
                write!(out, " b->a fails at k={k}").unwrap();
            }
            out.push('\n');
        }
        Format::Json => writeln!(
            out,
            "{{\"relation\":\"{}\",\"a_to_b_witness\":{},\"b_to_a_witness\":{}}}",
            c.relation,
            json_opt(c.a_to_b_witness),
            json_opt(c.b_to_a_witness)
        )
        .unwrap(),
        Format::Csv => out.push_str(&csv_text(
            &["relation", "a_to_b_witness", "b_to_a_witness"],
            &[vec![
                c.relation.to_string(),
                c.a_to_b_witness.map_or(String::new(), |k| k.to_string()),
                c.b_to_a_witness.map_or(String::new(), |k| k.to_string()),
            ]],
        )),
    }
    Ok(0)
}

fn cmd_find_partner(
    state: &OneState,
    beta1: Option<f64>,
    prefix: Option<&[f64]>,
    cfg: &SearchConfig,
    fmt: Format,
    out: &mut String,
) -> CmdResult {
    let v = state.load()?;
    let r: PartnerResult = match (beta1, prefix) {
        (Some(beta1), _) => find_partner(&v, beta1, cfg),
        (None, Some(prefix)) => complete_partner(&v, prefix, cfg),
        (None, None) => unreachable!("clap requires --beta1 or --prefix"),
    }
    .map_err(Failure::from_search)?;
    let coeffs = r.partner.coeffs();
    match fmt {
        Format::Plain => {
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(out, "beta{} {}", i + 1, sig17(*c)).unwrap();
            }
            writeln!(out, "entropy_residual_bits {}", sig17(r.entropy_residual)).unwrap();
            writeln!(out, "classification {}", r.classification).unwrap();
            writeln!(out, "iterations {}", r.iterations).unwrap();
        }
        Format::Json => writeln!(
            out,
            "{{\"partner\":{},\"entropy_residual_bits\":{},\"classification\":\"{}\",\"iterations\":{}}}",
            r.partner.to_json(),
            sig17(r.entropy_residual),
            r.classification,
            r.iterations
        )
        .unwrap(),
        Format::Csv => {
            let names: Vec<String> = (1..=coeffs.len()).map(|i| format!("beta{i}")).collect();
            let mut header: Vec<&str> = names.iter().map(String::as_str).collect();
            header.extend(["entropy_residual_bits", "classification", "iterations"]);
            let mut row: Vec<String> = coeffs.iter().map(|c| sig17(*c)).collect();
            row.extend([sig17(r.entropy_residual), r.classification.to_string(), r.iterations.to_string()]);
            out.push_str(&csv_text(&header, &[row]));
        }
    }
    Ok(0)
}

const FAMILY_HEADER: [&str; 6] = [
    "beta1",
    "beta2",
    "beta3",
    "entropy_residual_bits",
    "differing_coeffs",
    "classification",
];

fn cmd_family(
    state: &OneState,
    lo: f64,
    hi: f64,
    steps: usize,
    cfg: &SearchConfig,
    fmt: Format,
    out: &mut String,
) -> CmdResult {
    let v = state.load()?;
    let sweep: FamilySweep = family_sweep(&v, lo, hi, steps, cfg).map_err(Failure::from_search)?;
    if fmt == Format::Json {
        let records: Vec<String> = sweep
            .records
            .iter()
            .map(|r| {
                format!(
                    "{{\"beta1\":{},\"partner\":{},\"entropy_residual_bits\":{},\"differing_coeffs\":{},\"classification\":\"{}\"}}",
                    sig17(r.beta1),
                    r.partner.to_json(),
                    sig17(r.entropy_residual),
                    r.differing_coeffs,
                    r.classification
                )
            })
            .collect();
        let gaps: Vec<String> = sweep.gaps.iter().map(|g| sig17(*g)).collect();
        writeln!(out, "{{\"records\":[{}],\"gaps\":[{}]}}", records.join(","), gaps.join(",")).unwrap();
        return Ok(0);
    }
    let rows: Vec<Vec<String>> = sweep
        .records
        .iter()
        .map(|r| {
            let c = r.partner.coeffs();
            vec![
                sig17(c[0]),
                sig17(c[1]),
                sig17(c[2]),
                sig17(r.entropy_residual),
                r.differing_coeffs.to_string(),
                r.classification.to_string(),
            ]
        })
        .collect();
    out.push_str(&csv_text(&FAMILY_HEADER, &rows));
    if !sweep.gaps.is_empty() {
        eprintln!("{} grid points skipped: target entropy unreachable", sweep.gaps.len());
    }
    Ok(0)
}

fn write_pair(a: &SchmidtVector, b: &SchmidtVector, fmt: Format, out: &mut String) {
    match fmt {
        Format::Plain => writeln!(out, "a {}\nb {}", a.to_json(), b.to_json()).unwrap(),
        Format::Json => writeln!(out, "{{\"a\":{},\"b\":{}}}", a.to_json(), b.to_json()).unwrap(),
        Format::Csv => {
            let rows: Vec<Vec<String>> = a
                .coeffs()
                .iter()
                .zip(b.coeffs())
                .enumerate()
                .map(|(i, (x, y))| vec![(i + 1).to_string(), sig17(*x), sig17(*y)])
                .collect();
            out.push_str(&csv_text(&["index", "a", "b"], &rows));
        }
    }
}

fn cmd_lift(pair: &TwoStates, kappa: f64, fmt: Format, out: &mut String) -> CmdResult {
    let (a, b) = pair.load()?;
    let (la, lb) = lift(&a, &b, kappa).map_err(Failure::input)?;
    write_pair(&la, &lb, fmt, out);
    Ok(0)
}

fn cmd_reduce(pair: &TwoStates, index: Option<usize>, cfg: &SearchConfig, fmt: Format, out: &mut String) -> CmdResult {
    let (a, b) = pair.load()?;
    let (ra, rb) = match index {
        Some(j) => reduce_shared(&a, &b, j, cfg.coeff_tol),
        None => reduce_all_shared(&a, &b, cfg.coeff_tol),
    }
    .map_err(Failure::input)?;
    write_pair(&ra, &rb, fmt, out);
    Ok(0)
}

fn cmd_verify(suite: SuiteArg, trials: Trials, seed: u64, cfg: &SearchConfig, fmt: Format, out: &mut String) -> CmdResult {
    let selected: Vec<Suite> = match suite {
        SuiteArg::Theorem1 => vec![Suite::Theorem1],
        SuiteArg::Theorem2 => vec![Suite::Theorem2],
        SuiteArg::Schur => vec![Suite::Schur],
        SuiteArg::Eq5 => vec![Suite::Eq5],
        SuiteArg::Reduction => vec![Suite::Reduction],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let count = match trials {
        Trials::Count(n) => n,
        Trials::Grid if selected == [Suite::Eq5] => 0,
        Trials::Grid => {
            return Err(Failure {
                code: 2,
                name: "InvalidTrials",
                message: "`--trials grid` applies only to the eq5 suite".into(),
            })
        }
    };
    let reports: Vec<SuiteReport> = selected.iter().map(|&s| suites::run(s, count, seed, cfg)).collect();

    match fmt {
        Format::Plain => {
            for r in &reports {
                writeln!(out, "{r}").unwrap();
                if let Some(case) = &r.first_counterexample {
                    writeln!(out, "{case}").unwrap();
                }
            }
        }
        Format::Json => {
            let items: Vec<String> = reports
                .iter()
                .map(|r| {
                    format!(
                        "{{\"suite\":\"{}\",\"checked\":{},\"failed\":{},\"counterexample\":{}}}",
                        r.suite.name(),
                        r.checked,
                        r.failures,
                        r.first_counterexample.as_deref().unwrap_or("null")
                    )
                })
                .collect();
            writeln!(out, "[{}]", items.join(",")).unwrap();
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.suite.name().to_string(),
                        r.checked.to_string(),
                        (r.checked - r.failures).to_string(),
                        r.failures.to_string(),
                        r.first_counterexample.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            out.push_str(&csv_text(&["suite", "checked", "passed", "failed", "counterexample"], &rows));
        }
    }
    Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { 1 })
}

fn run(cli: &Cli, out: &mut String) -> CmdResult {
    let g = &cli.global;
    let cfg = SearchConfig {
        entropy_tol: g.entropy_tol,
        coeff_tol: g.coeff_tol,
        max_bisection_iters: g.max_iters,
        ..SearchConfig::default()
    };
    cfg.validate().map_err(Failure::input)?;
    let fmt = g.format;
    match &cli.command {
        Command::Entropy(state) => cmd_entropy(state, fmt, out),
        Command::Classify { pair, cross_check } => cmd_classify(pair, *cross_check, &cfg, fmt, out),
        Command::FindPartner { state, beta1, prefix } => {
            cmd_find_partner(state, *beta1, prefix.as_deref(), &cfg, fmt, out)
        }
        Command::Family { state, lo, hi, steps } => cmd_family(state, *lo, *hi, *steps, &cfg, fmt, out),
        Command::Lift { pair, kappa } => cmd_lift(pair, *kappa, fmt, out),
        Command::Reduce { pair, index } => cmd_reduce(pair, *index, &cfg, fmt, out),
        Command::Verify { suite, trials } => cmd_verify(*suite, *trials, g.seed, &cfg, fmt, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}: {}", f.name, f.message);
            f.code
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
