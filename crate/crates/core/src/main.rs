use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use classnum::arith::{class_number, hurwitz, lambda, sigma};
use classnum::cohen::{check_relation, verify_theorem, RelationContext, RelationId};
use classnum::gamma04::identify;
use classnum::nonhol::{self, CheckKind, NumericConfig, Tau};
use classnum::qseries::{delta4_series, f2_series, hurwitz_series, lambda_odd_series, theta_series};
use classnum::{Error, QSeries, ReportEnvelope, ResidualRecord, VerificationReport};

/// Ranges at most this long get a per-n table in human output.
const TABLE_LIMIT: u64 = 20;

#[derive(Parser)]
#[command(name = "classnum", version, about = "Hurwitz class numbers, Cohen's series and related identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hurwitz class number H(n)
    Hurwitz { n: u64 },
    /// Divisor power sum σ_k(n)
    Sigma { k: u32, n: u64 },
    /// λ_k(n) = ½ Σ_{d|n} min(d, n/d)^k for odd k
    Lambda { k: u32, n: u64 },
    /// Class number h(-d)
    Classno {
        #[arg(allow_hyphen_values = true)]
        d: i64,
    },
    /// Write a q-expansion in the text interchange format
    Series {
        kind: SeriesKind,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        prec: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a class number relation exactly over a range of n
    Check {
        relation: RelationArg,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        json: bool,
    },
    /// Certify the Cohen series identities and cusp-form decompositions for k ≤ k-max
    VerifyTheorem {
        #[arg(long)]
        k_max: u32,
        #[arg(long)]
        prec: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a series file in the monomial basis of M_k(Γ₀(4)) or S_k(Γ₀(4))
    Identify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        cusp: bool,
    },
    /// Numerical residual checks of the non-holomorphic identities
    NonholCheck {
        kind: NonholKind,
        /// τ as RE,IM
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        /// u as RE,IM (heat check only)
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, default_value_t = 30)]
        trunc: usize,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// m for eqfin1 (0 or 1), r_max for difftheta, m_max for binom
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Theta,
    Hurwitz,
    F2,
    Delta4,
    LambdaOdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Eq1,
    Eq3,
    Cc1,
    Cc2,
    Cc3,
    Cc4,
}

impl From<RelationArg> for RelationId {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Eq1 => RelationId::Eq1,
            RelationArg::Eq3 => RelationId::Eq3,
            RelationArg::Cc1 => RelationId::Cc1,
            RelationArg::Cc2 => RelationId::Cc2,
            RelationArg::Cc3 => RelationId::Cc3,
            RelationArg::Cc4 => RelationId::Cc4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NonholKind {
    Rid,
    Heat,
    Eqfin1,
    Appell,
    Difftheta,
    Binom,
}

impl From<NonholKind> for CheckKind {
    fn from(k: NonholKind) -> Self {
        match k {
            NonholKind::Rid => CheckKind::Rid,
            NonholKind::Heat => CheckKind::Heat,
            NonholKind::Eqfin1 => CheckKind::Eqfin1,
            NonholKind::Appell => CheckKind::Appell,
            NonholKind::Difftheta => CheckKind::Difftheta,
            NonholKind::Binom => CheckKind::Binom,
        }
    }
}

/// Outcome of a subcommand: `Ok(true)` all checks passed, `Ok(false)` a
/// mathematical check failed, `Err` usage or domain problems.
type Outcome = std::result::Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn describe(e: Error) -> String {
    match e {
        Error::InsufficientPrecision { required, available } => {
            format!("insufficient precision: need at least {required} coefficients, got {available}")
        }
        other => other.to_string(),
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Hurwitz { n } => {
            println!("{}", hurwitz(n));
            Ok(true)
        }
        Command::Sigma { k, n } => {
            if k == 0 || n == 0 {
                return Err("sigma needs k >= 1 and n >= 1".into());
            }
            println!("{}", sigma(k, n));
            Ok(true)
        }
        Command::Lambda { k, n } => {
            if k % 2 == 0 || n == 0 {
                return Err("lambda needs odd k and n >= 1".into());
            }
            println!("{}", lambda(k, n));
            Ok(true)
        }
        Command::Classno { d } => {
            println!("{}", class_number(d).map_err(describe)?);
            Ok(true)
        }
        Command::Series { kind, ell, prec, out } => {
            let s = build_series(kind, ell, prec)?;
            match out {
                Some(path) => fs::write(&path, s.to_text()).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{}", s.to_text()),
            }
            Ok(true)
        }
        Command::Check { relation, from, to, json } => run_check(relation.into(), from, to, json),
        Command::VerifyTheorem { k_max, prec, json } => {
            let reports = verify_theorem(k_max, prec).map_err(describe)?;
            if json {
                emit_json(reports, Vec::new())
            } else {
                for r in &reports {
                    print_report(r);
                    if let Some(d) = &r.decomposition {
                        println!("    decomposition {d}  =  {}", d.combination());
                    }
                }
                Ok(reports.iter().all(VerificationReport::passed))
            }
        }
        Command::Identify { input, weight, cusp } => {
            let text = fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let f = QSeries::from_text(&text).map_err(describe)?;
            match identify(&f, weight, cusp) {
                Ok(d) => {
                    println!("{d}");
                    Ok(true)
                }
                Err(Error::NotInSpace { index }) => {
                    match index {
                        Some(n) => println!("not in the span of the basis: mismatch at q^{n}"),
                        None => println!("not in the span of the basis: leading coefficients inconsistent"),
                    }
                    Ok(false)
                }
                Err(e) => Err(describe(e)),
            }
        }
        Command::NonholCheck { kind, tau, u, trunc, h, m, json } => run_nonhol(kind, tau, u, trunc, h, m, json),
    }
}

fn build_series(kind: SeriesKind, ell: Option<u32>, prec: usize) -> std::result::Result<QSeries, String> {
    if ell.is_some() && !matches!(kind, SeriesKind::LambdaOdd) {
        return Err("--ell only applies to lambda-odd".into());
    }
    Ok(match kind {
        SeriesKind::Theta => theta_series(prec),
        SeriesKind::Hurwitz => hurwitz_series(prec),
        SeriesKind::F2 => f2_series(prec),
        SeriesKind::Delta4 => delta4_series(prec),
        SeriesKind::LambdaOdd => {
            let ell = ell.ok_or("lambda-odd needs --ell")?;
            lambda_odd_series(ell, prec).map_err(describe)?
        }
    })
}

fn run_check(id: RelationId, from: u64, to: u64, json: bool) -> Outcome {
    if from == 0 || from > to {
        return Err(format!("need 1 <= --from <= --to, got {from}..{to}"));
    }
    let report = check_relation(id, from, to);
    if json {
        return emit_json(vec![report], Vec::new());
    }
    if to - from < TABLE_LIMIT {
        let ctx = RelationContext::new(id, to);
        println!("{:>6}  {:>16}  {:>16}", "n", "lhs", "rhs");
        for n in (from..=to).filter(|&n| ctx.applies(n)) {
            let (lhs, rhs) = ctx.sides(n);
            let mark = if lhs == rhs { "=" } else { "!=" };
            println!("{n:>6}  {lhs:>16}  {rhs:>16}  {mark}");
        }
    }
    print_report(&report);
    Ok(report.passed())
}

fn print_report(r: &VerificationReport) {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let status = if r.passed() { "pass" } else { "FAIL" };
    println!("{} [{}, {}] {}: {status}", r.check_id, r.range.0, r.range.1, params.join(" "));
    if let Some(f) = &r.first_failure {
        println!("    first failure at n = {}: lhs = {}, rhs = {}", f.n, f.lhs, f.rhs);
        if let Some(c) = &f.context {
            println!("    {c}");
        }
    }
}

fn print_residuals(records: &[ResidualRecord]) {
    println!("{:<24} {:>18} {:>12} {:>10}  result", "check", "tau", "residual", "tolerance");
    for r in records {
        let tau = format!("{}+{}i", r.tau[0], r.tau[1]);
        let status = if r.pass { "pass" } else { "FAIL" };
        println!("{:<24} {:>18} {:>12.3e} {:>10.0e}  {status}", r.check, tau, r.residual, r.tolerance);
    }
}

fn emit_json(reports: Vec<VerificationReport>, residuals: Vec<ResidualRecord>) -> Outcome {
    let env = ReportEnvelope::stamped(std::env::args().skip(1).collect(), reports, residuals);
    println!("{}", serde_json::to_string_pretty(&env).map_err(|e| e.to_string())?);
    Ok(env.pass)
}

fn parse_point(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {s:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {s:?}"))?;
    Ok(Complex64::new(re, im))
}

fn run_nonhol(
    kind: NonholKind,
    tau: Option<String>,
    u: Option<String>,
    trunc: usize,
    h: f64,
    m: Option<u32>,
    json: bool,
) -> Outcome {
    let tau: Tau = match tau {
        Some(s) => s.parse().map_err(describe)?,
        None => Tau::new(0.0, 1.0).expect("i is in the upper half-plane"),
    };
    let u = u.as_deref().map(parse_point).transpose()?;
    let cfg = NumericConfig::new(trunc, h, NumericConfig::default().tol).map_err(describe)?;
    let out = nonhol::run_check(kind.into(), tau, u, m, &cfg).map_err(describe)?;
    if json {
        return emit_json(out.reports, out.residuals);
    }
    if !out.residuals.is_empty() {
        print_residuals(&out.residuals);
    }
    for r in &out.reports {
        print_report(r);
    }
    for line in &out.notes {
        println!("{line}");
    }
    Ok(out.passed())
}
