use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bimac::cache::DiskCache;
use bimac::evalsym::{eval_both, evaluate};
use bimac::macdonald::{bisym_p, nonsym_e};
use bimac::pieri::{pieri_bruteforce, pieri_expand, same_expansion, PieriTerm, Variant};
use bimac::sparts::{Sign, SuperPartition};
use bimac::verify::{run_suite, Bounds, Suite};
use bimac::{Error, QTScalar};

#[derive(Parser)]
#[command(name = "bimac", version, about = "Exact non-symmetric and bisymmetric Macdonald polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum VariantArg {
    Upper,
    Lower,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Upper => Variant::Upper,
            VariantArg::Lower => Variant::Lower,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Hecke,
    Eigen,
    Symmetry,
    Evaluation,
    Pieri,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// The non-symmetric polynomial E_eta.
    #[command(name = "E")]
    E {
        #[arg(long, value_delimiter = ',', required = true)]
        eta: Vec<u32>,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// The bisymmetric polynomial P_Lambda.
    #[command(name = "P")]
    P {
        #[arg(long)]
        spart: String,
        #[arg(long = "N")]
        n: usize,
    },
    /// u^sign at Lambda_0 of P_Lambda by both routes, or u_Omega^sign(P_Lambda) with --at.
    Eval {
        #[arg(long)]
        spart: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        /// Evaluate at this superpartition instead of Lambda_0.
        #[arg(long)]
        at: Option<String>,
    },
    /// The Pieri expansion of e_r P_Lambda.
    Pieri {
        #[arg(long)]
        spart: String,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long = "N")]
        n: usize,
        /// Also expand by brute force and fail on any difference.
        #[arg(long)]
        check: bool,
    },
    /// Runs invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Domain(_) | Error::Shape { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn scalar_text(c: &QTScalar, f: Format) -> String {
    match f {
        Format::Latex => c.to_latex(),
        _ => c.to_text(),
    }
}

fn emit(format: Format, value: Value, text: String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
        _ => text,
    };
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{out}");
}

fn terms_text(terms: &[PieriTerm], format: Format) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let lines: Vec<String> = terms
        .iter()
        .map(|t| match format {
            Format::Latex => format!("\\left({}\\right) P_{{({})}}", t.coeff.to_latex(), t.omega.to_text()),
            _ => format!("{}: {}", t.omega.to_text(), t.coeff.to_text()),
        })
        .collect();
    match format {
        Format::Latex => lines.join("\n+ "),
        _ => lines.join("\n"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cache = DiskCache::from_env()?;
    let fmt = cli.format;
    let verdict = match cli.cmd {
        Cmd::E { eta, n } => {
            if let Some(n) = n.filter(|&n| n != eta.len()) {
                return Err(Failure::Usage(format!("eta has {} entries but N = {n}", eta.len())));
            }
            let e = nonsym_e(&eta)?;
            let text = match fmt {
                Format::Latex => e.poly.to_latex(),
                _ => e.poly.to_text(),
            };
            let value = json!({
                "eta": eta,
                "poly": e.poly.to_json(),
                "eigenvalues": e.eigenvalues.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            });
            emit(fmt, value, text);
            Ok(())
        }
        Cmd::P { spart, n } => {
            let lam = SuperPartition::parse(&spart, n)?;
            let p = bisym_p(&lam)?;
            let text = match fmt {
                Format::Latex => p.poly.to_latex(),
                _ => p.poly.to_text(),
            };
            emit(fmt, p.to_json(), text);
            Ok(())
        }
        Cmd::Eval { spart, n, sign, at } => {
            let lam = SuperPartition::parse(&spart, n)?;
            let sign = Sign::from(sign);
            let point = at.clone().unwrap_or_else(|| SuperPartition::lambda0(lam.m(), n).to_text());
            let value = match at {
                Some(at) => {
                    let omg = SuperPartition::parse(&at, n)?;
                    if omg.m() != lam.m() {
                        return Err(Failure::Usage(format!("{omg} and {lam} differ in m")));
                    }
                    evaluate(&omg, sign, &bisym_p(&lam)?.poly)?
                }
                None => eval_both(&lam, sign)?.1.value,
            };
            let out = json!({
                "lam": lam.to_text(),
                "N": n,
                "at": point,
                "sign": if sign == Sign::Plus { "+" } else { "-" },
                "value": value.to_json(),
            });
            emit(fmt, out, scalar_text(&value, fmt));
            Ok(())
        }
        Cmd::Pieri {
            spart,
            r,
            variant,
            n,
            check,
        } => {
            let lam = SuperPartition::parse(&spart, n)?;
            let variant = Variant::from(variant);
            let terms = pieri_expand(&lam, r, variant)?;
            let mut out = json!({
                "lam": lam.to_text(),
                "N": n,
                "r": r,
                "variant": if variant == Variant::Upper { "upper" } else { "lower" },
                "terms": terms.iter().map(PieriTerm::to_json).collect::<Vec<_>>(),
            });
            let mut verdict = Ok(());
            if check {
                let brute = pieri_bruteforce(&lam, r, variant)?;
                let agree = same_expansion(&terms, &brute);
                out["check"] = json!(agree);
                if !agree {
                    verdict = Err(Failure::Check(format!(
                        "formula:\n{}\nbrute force:\n{}",
                        terms_text(&terms, Format::Text),
                        terms_text(&brute, Format::Text)
                    )));
                }
            }
            emit(fmt, out, terms_text(&terms, fmt));
            verdict
        }
        Cmd::Verify { suite, n, deg } => {
            let bounds = Bounds::new(n, deg)?;
            let suites: Vec<Suite> = match suite {
                SuiteArg::Hecke => vec![Suite::Hecke],
                SuiteArg::Eigen => vec![Suite::Eigen],
                SuiteArg::Symmetry => vec![Suite::Symmetry],
                SuiteArg::Evaluation => vec![Suite::Evaluation],
                SuiteArg::Pieri => vec![Suite::Pieri],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let reports: Vec<_> = suites.into_iter().map(|s| run_suite(s, bounds)).collect();
            let text = reports
                .iter()
                .map(|r| {
                    let status = if r.passed() { "pass" } else { "FAIL" };
                    let mut line = format!("{:<10} {status} ({} checks)", r.suite.name(), r.checks);
                    if let Some(f) = &r.failure {
                        line.push_str(&format!("\n  {}: {}", f.check, f.case));
                        if let Some(e) = &f.error {
                            line.push_str(&format!("\n  error: {e}"));
                        }
                    }
                    line
                })
                .collect::<Vec<_>>()
                .join("\n");
            let all = reports.iter().all(|r| r.passed());
            let value = json!({
                "passed": all,
                "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            emit(fmt, value, text);
            if all {
                Ok(())
            } else {
                Err(Failure::Check("verification failed".into()))
            }
        }
    };
    if let Some(c) = cache.as_mut() {
        c.persist()?;
    }
    verdict
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
