//! Command-line front end for `cremona-core`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the exit code together with the captured output, so the binary and the
//! tests share one code path.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict or
//! validation failure, 2 usage or parse error, 3 inconclusive (nilpotency cap
//! exhausted).

pub mod parse;
pub mod report;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};

use cremona_core::ahmodel::{AdDerivationSpec, AhError, SimplexModel};
use cremona_core::classify::{self, root_vector_for_character};
use cremona_core::grading::{is_homogeneous, normalize_char, parse_int_tuple, Homogeneity, MVec};
use cremona_core::poly::{rat, Rat};
use cremona_core::{Automorphism, Derivation, LndVerdict, NotRootReason, RootCheckResult};

use crate::parse::{parse_derivation, parse_poly_list, parse_rat};
use crate::report::{RootsDocument, VerifyDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable overriding the default nilpotency cap.
pub const CAP_ENV: &str = "CREMONA_CAP";

#[derive(Debug, Parser)]
#[command(name = "cremona", version, about = "Root vectors of the volume-preserving Cremona group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DimArg {
    /// Number of variables (2..=8)
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify local nilpotency on generators
    Lnd {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long)]
        cap: Option<usize>,
        derivation: String,
    },
    /// Homogeneity of each generator image and of the derivation
    Homog {
        #[command(flatten)]
        dim: DimArg,
        derivation: String,
    },
    /// Degree of a homogeneous derivation
    Degree {
        #[command(flatten)]
        dim: DimArg,
        derivation: String,
    },
    /// Decide whether a derivation is a root vector
    RootCheck {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long)]
        cap: Option<usize>,
        derivation: String,
    },
    /// exp(t·d) of a locally nilpotent derivation
    Exp {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        cap: Option<usize>,
        derivation: String,
    },
    /// Jacobian determinant of x_j -> g_j
    Jac {
        #[command(flatten)]
        dim: DimArg,
        maps: String,
    },
    /// Enumerate root vectors and roots up to a degree bound
    Roots {
        #[command(flatten)]
        dim: DimArg,
        /// Bound on Σα (0..=12)
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        json: bool,
    },
    /// Test whether a character is a root
    Char {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Operations in the polyhedral-divisor model
    Ah {
        #[command(subcommand)]
        op: AhCommand,
    },
    /// Cross-validate the classification and run the oracle search
    Verify {
        #[command(flatten)]
        dim: DimArg,
        /// Bound on Σα for the enumerated entries (0..=12)
        #[arg(long)]
        max_deg: u32,
        /// Box |e_k| <= ebox of model degrees to scan (0..=6)
        #[arg(long, default_value_t = 5)]
        ebox: i64,
        /// Oracle candidates; the oracle runs only for n <= 3, max_deg <= 4
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print {tested, violations, pass} as JSON
        #[arg(long)]
        json: bool,
        /// Worker threads (0 = one per core); output does not depend on it
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AhCommand {
    /// Evaluate D(m)
    Eval {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// Test t^r·chi^m for membership in A[D]
    Member {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// Translate an admissible (lambda, i, e) into a monomial derivation
    Translate {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long)]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
    },
    /// Test v_j(e) >= v_i(e) + 1 for all j != i
    Admissible {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long)]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() + "\n" }
    }

    fn negative(stdout: String, stderr: impl Into<String>) -> Self {
        Outcome { code: EXIT_NEGATIVE, stdout, stderr: stderr.into() + "\n" }
    }
}

/// Parses and runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return if err.use_stderr() {
                Outcome::usage(rendered.trim_end())
            } else {
                Outcome::new(EXIT_OK, rendered)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(message) => Outcome::usage(message),
    }
}

type Dispatch = Result<Outcome, String>;

fn check_n(n: usize) -> Result<usize, String> {
    if (2..=8).contains(&n) {
        Ok(n)
    } else {
        Err(format!("--n must be in 2..=8, got {n}"))
    }
}

fn parse_d(src: &str, n: usize) -> Result<Derivation, String> {
    parse_derivation(src, n).map_err(|e| format!("cannot parse derivation: {e}"))
}

fn parse_mvec(src: &str, n: usize, name: &str) -> Result<MVec, String> {
    let v = parse_int_tuple(src).map_err(|e| format!("--{name}: {e}"))?;
    if v.len() != n - 1 {
        return Err(format!("--{name} needs {} entries, got {}", n - 1, v.len()));
    }
    Ok(MVec(v))
}

fn resolve_cap(flag: Option<usize>, d: &Derivation) -> Result<usize, String> {
    if let Some(cap) = flag {
        return if cap == 0 { Err("--cap must be positive".into()) } else { Ok(cap) };
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(format!("{CAP_ENV} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(d.default_cap()),
    }
}

fn vertex_index(i: usize, n: usize) -> Result<usize, String> {
    if (1..=n).contains(&i) {
        Ok(i - 1)
    } else {
        Err(format!("--i must be in 1..={n}, got {i}"))
    }
}

fn dispatch(command: Command) -> Dispatch {
    match command {
        Command::Lnd { dim, cap, derivation } => {
            let n = check_n(dim.n)?;
            let d = parse_d(&derivation, n)?;
            let cap = resolve_cap(cap, &d)?;
            Ok(lnd(&d, cap))
        }
        Command::Homog { dim, derivation } => {
            let n = check_n(dim.n)?;
            let d = parse_d(&derivation, n)?;
            Ok(homog(&d))
        }
        Command::Degree { dim, derivation } => {
            let n = check_n(dim.n)?;
            let d = parse_d(&derivation, n)?;
            Ok(match d.degree() {
                Ok(Some(e)) => Outcome::new(EXIT_OK, format!("{e}\n")),
                Ok(None) => Outcome::negative("not homogeneous\n".into(), "derivation is not homogeneous"),
                Err(err) => Outcome::negative(String::new(), err.to_string()),
            })
        }
        Command::RootCheck { dim, cap, derivation } => {
            let n = check_n(dim.n)?;
            let d = parse_d(&derivation, n)?;
            let cap = resolve_cap(cap, &d)?;
            Ok(root_check(&d, cap))
        }
        Command::Exp { dim, t, cap, derivation } => {
            let n = check_n(dim.n)?;
            let t = parse_rat(&t).map_err(|e| format!("--t: {e}"))?;
            let d = parse_d(&derivation, n)?;
            let cap = resolve_cap(cap, &d)?;
            Ok(match d.exp(&t, cap) {
                Ok(a) => {
                    let mut out = String::new();
                    for (j, img) in a.images().iter().enumerate() {
                        writeln!(out, "x{} -> {img}", j + 1).unwrap();
                    }
                    writeln!(out, "jacobian determinant: {}", a.jacobian_det()).unwrap();
                    Outcome::new(EXIT_OK, out)
                }
                Err(err) => Outcome {
                    code: EXIT_INCONCLUSIVE,
                    stdout: String::new(),
                    stderr: format!("{err}\n"),
                },
            })
        }
        Command::Jac { dim, maps } => {
            let n = check_n(dim.n)?;
            let images = parse_poly_list(&maps, n).map_err(|e| format!("cannot parse map: {e}"))?;
            let a = Automorphism::new(images).map_err(|e| e.to_string())?;
            let det = a.jacobian_det();
            let out = format!("{det}\n");
            Ok(if det.is_one() {
                Outcome::new(EXIT_OK, out)
            } else {
                Outcome::negative(out, "jacobian determinant is not 1")
            })
        }
        Command::Roots { dim, max_deg, json } => {
            let n = check_n(dim.n)?;
            let entries = classify::enumerate_root_vectors(n, max_deg).map_err(|e| e.to_string())?;
            let doc = RootsDocument::new(n, max_deg, &entries);
            Ok(Outcome::new(EXIT_OK, if json { doc.to_json() } else { doc.to_text() }))
        }
        Command::Char { dim, beta } => {
            let n = check_n(dim.n)?;
            let beta = parse_int_tuple(&beta).map_err(|e| format!("--beta: {e}"))?;
            if beta.len() != n {
                return Err(format!("--beta needs {n} entries, got {}", beta.len()));
            }
            let class = normalize_char(&beta).map_err(|e| e.to_string())?;
            Ok(match root_vector_for_character(&beta).map_err(|e| e.to_string())? {
                Some(en) => {
                    let d = en.derivation(rat(1));
                    Outcome::new(
                        EXIT_OK,
                        format!("root {class}\nroot vector: {}\nmvec: {}\n", d.operator_form(), en.mvec),
                    )
                }
                None => Outcome::new(EXIT_NEGATIVE, format!("not a root {class}\n")),
            })
        }
        Command::Ah { op } => ah(op),
        Command::Verify { dim, max_deg, ebox, budget, seed, json, jobs } => {
            let n = check_n(dim.n)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| e.to_string())?;
            let doc = pool.install(|| VerifyDocument::run(n, max_deg, ebox, budget, seed))?;
            let code = if doc.pass { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::new(code, if json { doc.to_json() } else { doc.to_text() }))
        }
    }
}

fn lnd(d: &Derivation, cap: usize) -> Outcome {
    match d.lnd_check(cap) {
        LndVerdict::Proven { orders } => {
            let list: Vec<String> = orders.iter().map(ToString::to_string).collect();
            Outcome::new(EXIT_OK, format!("proven LND, orders ({})\n", list.join(",")))
        }
        LndVerdict::ExhaustedCap { cap, status } => {
            let list: Vec<String> = status
                .iter()
                .map(|s| s.map_or_else(|| "?".to_string(), |k| k.to_string()))
                .collect();
            Outcome {
                code: EXIT_INCONCLUSIVE,
                stdout: format!("inconclusive: cap {cap} exhausted, orders ({})\n", list.join(",")),
                stderr: String::new(),
            }
        }
    }
}

fn homog(d: &Derivation) -> Outcome {
    let mut out = String::new();
    for (j, img) in d.images().iter().enumerate() {
        let verdict = match is_homogeneous(img) {
            Homogeneity::Zero => "zero".to_string(),
            Homogeneity::Homogeneous(m) => format!("degree {m}"),
            Homogeneity::Mixed(ms) => {
                let list: Vec<String> = ms.iter().map(ToString::to_string).collect();
                format!("mixed {}", list.join(" "))
            }
        };
        writeln!(out, "d(x{}) = {img}: {verdict}", j + 1).unwrap();
    }
    match d.degree() {
        Ok(Some(e)) => {
            writeln!(out, "homogeneous of degree {e}").unwrap();
            Outcome::new(EXIT_OK, out)
        }
        Ok(None) => {
            writeln!(out, "not homogeneous").unwrap();
            Outcome::new(EXIT_NEGATIVE, out)
        }
        Err(err) => Outcome::negative(out, err.to_string()),
    }
}

fn root_check(d: &Derivation, cap: usize) -> Outcome {
    match d.root_check(cap) {
        Ok(RootCheckResult::IsRoot { root, normal_form }) => {
            let class = cremona_core::grading::mvec_to_char(&root);
            let monomial = Derivation::monomial(Rat::from_integer(1.into()), normal_form.alpha.clone(), normal_form.index);
            Outcome::new(
                EXIT_OK,
                format!(
                    "root vector: lambda={} times {}\nroot: mvec={root} character={class}\n",
                    normal_form.lambda,
                    monomial.operator_form()
                ),
            )
        }
        Ok(RootCheckResult::NotRoot(NotRootReason::ZeroDerivation)) => {
            Outcome::new(EXIT_NEGATIVE, "not a root: zero derivation\n".into())
        }
        Ok(RootCheckResult::NotRoot(NotRootReason::NotHomogeneous)) => {
            Outcome::new(EXIT_NEGATIVE, "not a root: not homogeneous\n".into())
        }
        Ok(RootCheckResult::NotRoot(NotRootReason::NotLndWithinCap(verdict))) => {
            let cap = match verdict {
                LndVerdict::ExhaustedCap { cap, .. } => cap,
                LndVerdict::Proven { .. } => cap,
            };
            Outcome {
                code: EXIT_INCONCLUSIVE,
                stdout: format!("inconclusive: homogeneous, not proven LND within cap {cap}\n"),
                stderr: String::new(),
            }
        }
        Err(err) => Outcome::negative(String::new(), err.to_string()),
    }
}

fn ah(op: AhCommand) -> Dispatch {
    let bool_outcome = |yes: bool, t: &str, f: &str| {
        if yes {
            Outcome::new(EXIT_OK, format!("{t}\n"))
        } else {
            Outcome::new(EXIT_NEGATIVE, format!("{f}\n"))
        }
    };
    match op {
        AhCommand::Eval { dim, m } => {
            let n = check_n(dim.n)?;
            let m = parse_mvec(&m, n, "m")?;
            Ok(Outcome::new(EXIT_OK, format!("{}\n", SimplexModel::new(n).dd_eval(&m))))
        }
        AhCommand::Member { dim, r, m } => {
            let n = check_n(dim.n)?;
            let m = parse_mvec(&m, n, "m")?;
            Ok(bool_outcome(SimplexModel::new(n).membership(r, &m), "member", "not a member"))
        }
        AhCommand::Admissible { dim, i, e } => {
            let n = check_n(dim.n)?;
            let index = vertex_index(i, n)?;
            let e = parse_mvec(&e, n, "e")?;
            let ok = SimplexModel::new(n).admissible(index, &e).map_err(|e| e.to_string())?;
            Ok(bool_outcome(ok, "admissible", "not admissible"))
        }
        AhCommand::Translate { dim, i, e, lambda } => {
            let n = check_n(dim.n)?;
            let index = vertex_index(i, n)?;
            let e = parse_mvec(&e, n, "e")?;
            let lambda = parse_rat(&lambda).map_err(|e| format!("--lambda: {e}"))?;
            let spec = AdDerivationSpec { lambda, index, e };
            Ok(match SimplexModel::new(n).translate_spec(&spec) {
                Ok(d) => Outcome::new(EXIT_OK, format!("{spec}\n{}\n", d.operator_form())),
                Err(err @ (AhError::Inadmissible { .. } | AhError::ZeroLambda)) => {
                    Outcome::negative(String::new(), err.to_string())
                }
                Err(err) => return Err(err.to_string()),
            })
        }
    }
}
