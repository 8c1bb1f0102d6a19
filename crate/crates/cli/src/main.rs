use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ktate_cli::report::parse_window;
use ktate_cli::{verify_all, Payload, Report, Request, VerifyOptions};
use ktate_core::bg::bg_report;
use ktate_core::borel::{
    borel_cohomology_closed, borel_cohomology_recursive, borel_homology_closed,
    borel_homology_recursive, homology_coefficients,
};
use ktate_core::grmod::{check_prime, ModuleSymbol};
use ktate_core::resolve::tor;
use ktate_core::tate::{tate_decomposition, tate_homotopy};
use ktate_core::Error;

/// Exact Borel and Tate cohomology of connective K-theory over (Z/p)^n.
#[derive(Parser)]
#[command(name = "ktate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Of {
    Tate,
    BorelHomology,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition of k ∧ B(Z/p)^n_+.
    BorelHomology {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Decomposition of the reduced F(B(Z/p)^n_+, k).
    BorelCohomology {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Tate decomposition 𝒬_n·q(w) ∨ H̃·f(w).
    Tate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Homotopy groups degree by degree.
    Homotopy {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Window lo:hi.
        #[arg(long, default_value = "-10:10", allow_hyphen_values = true)]
        degrees: String,
        #[arg(long, value_enum, default_value = "tate")]
        of: Of,
        /// Drop the k summand (Borel homology only).
        #[arg(long)]
        reduced: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Tor over Z[β] from explicit resolutions.
    Tor {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value = "0:20", allow_hyphen_values = true)]
        degrees: String,
        #[command(flatten)]
        common: Common,
    },
    /// Bruner–Greenlees reconciliation identities.
    BgCheck {
        #[arg(long, conflicts_with = "r_max")]
        r: Option<u32>,
        #[arg(long)]
        r_max: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Every identity suite.
    VerifyAll {
        #[arg(long, default_value_t = 5)]
        p_max: u32,
        /// Largest rank for every prime (default 6 at p = 2, 4 otherwise).
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, default_value = "-20:40", allow_hyphen_values = true)]
        degrees: String,
        #[arg(long, default_value_t = 10)]
        r_max: u32,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPrime(_)
            | Error::InvalidWindow { .. }
            | Error::IndexOutOfRange { .. }
            | Error::UnsupportedSymbol(_)
            | Error::UnsupportedPair { .. }
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn window(s: &str) -> Result<(i64, i64), Failure> {
    let (lo, hi) = parse_window(s).map_err(Failure::Usage)?;
    if lo > hi {
        return Err(Failure::Usage(format!("reversed window {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn symbol(s: &str) -> Result<ModuleSymbol, Failure> {
    ModuleSymbol::from_code(s).map_err(|e| Failure::Usage(e.to_string()))
}

/// The report and whether every check in it passed.
fn run(command: Command) -> Result<(Report, bool, Format), Failure> {
    let mut q = Request::default();
    let (payload, ok, format) = match command {
        Command::BorelHomology { p, n, method, common } => {
            check_prime(p)?;
            q.command = "borel-homology".into();
            q.p = Some(p);
            q.n = Some(n);
            let r = match method {
                MethodArg::Closed => borel_homology_closed(p, n)?,
                MethodArg::Recursive => borel_homology_recursive(p, n)?,
            };
            q.method = Some(method_name(method).into());
            (Payload::Borel(r), true, common.format)
        }
        Command::BorelCohomology { p, n, method, common } => {
            check_prime(p)?;
            q.command = "borel-cohomology".into();
            q.p = Some(p);
            q.n = Some(n);
            let r = match method {
                MethodArg::Closed => borel_cohomology_closed(p, n)?,
                MethodArg::Recursive => borel_cohomology_recursive(p, n)?,
            };
            q.method = Some(method_name(method).into());
            (Payload::Borel(r), true, common.format)
        }
        Command::Tate { p, n, common } => {
            check_prime(p)?;
            q.command = "tate".into();
            q.p = Some(p);
            q.n = Some(n);
            (Payload::Tate(tate_decomposition(p, n)?), true, common.format)
        }
        Command::Homotopy { p, n, degrees, of, reduced, common } => {
            check_prime(p)?;
            let (lo, hi) = window(&degrees)?;
            q.command = "homotopy".into();
            q.p = Some(p);
            q.n = Some(n);
            q.degrees = Some((lo, hi));
            let g = match of {
                Of::Tate => {
                    q.of = Some("tate".into());
                    tate_homotopy(p, n, lo, hi)?
                }
                Of::BorelHomology => {
                    q.of = Some("borel-homology".into());
                    q.reduced = Some(reduced);
                    homology_coefficients(p, n, lo, hi, reduced)?
                }
            };
            (Payload::Groups(g), true, common.format)
        }
        Command::Tor { a, b, j, p, degrees, common } => {
            check_prime(p)?;
            let (lo, hi) = window(&degrees)?;
            let (a, b) = (symbol(&a)?, symbol(&b)?);
            q.command = "tor".into();
            q.p = Some(p);
            q.a = Some(a);
            q.b = Some(b);
            q.j = Some(j);
            q.degrees = Some((lo, hi));
            (Payload::Groups(tor(a, b, j, p, lo, hi)?), true, common.format)
        }
        Command::BgCheck { r, r_max, common } => {
            q.command = "bg-check".into();
            let ranks: Vec<u32> = match (r, r_max) {
                (Some(r), _) => {
                    q.r = Some(r);
                    vec![r]
                }
                (None, m) => {
                    let m = m.unwrap_or(10);
                    q.r_max = Some(m);
                    (2..=m).collect()
                }
            };
            let reports = ranks.into_iter().map(bg_report).collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.holds());
            (Payload::Bg(reports), ok, common.format)
        }
        Command::VerifyAll { p_max, n_max, degrees, r_max, common } => {
            let (lo, hi) = window(&degrees)?;
            q.command = "verify-all".into();
            q.p_max = Some(p_max);
            q.n_max = n_max;
            q.degrees = Some((lo, hi));
            q.r_max = Some(r_max);
            let defaults = VerifyOptions::default();
            let opts = VerifyOptions {
                p_max,
                n_max_two: n_max.unwrap_or(defaults.n_max_two),
                n_max_odd: n_max.unwrap_or(defaults.n_max_odd),
                lo,
                hi,
                r_max,
            };
            let v = verify_all(&opts);
            let ok = v.passed();
            (Payload::Verify(v), ok, common.format)
        }
    };
    Ok((Report::new(q, payload), ok, format))
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Closed => "closed",
        MethodArg::Recursive => "recursive",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, ok, format)) => {
            let text = match format {
                Format::Json => match report.to_json() {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                },
                Format::Text => report.to_text(),
            };
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
