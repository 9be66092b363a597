//! `padic-mult`: command-line front end for the `padic-mult` library.
//!
//! Exit status: 0 success, 1 a property check failed, 2 usage or parse
//! error, 3 a mathematical precondition was violated.

mod commands;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use padic_mult::verify::{Suite, VerifyConfig};
use padic_mult::{Error, Result};
use serde_json::json;

use commands::CommandResult;

#[derive(Parser)]
#[command(name = "padic-mult", version, about = "Exact computations for p-adic multiplication crossed products")]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

/// Prime and multiplier, shared by most subcommands.
#[derive(clap::Args)]
struct PR {
    #[arg(short)]
    p: u64,
    /// Signed integer, `teich(i)`, `-teich(i)` or `digits:[d0,d1,...]`.
    #[arg(short, allow_hyphen_values = true)]
    r: String,
}

#[derive(Subcommand)]
enum Command {
    /// Case, threshold N_r and supernatural order of r.
    Classify {
        #[command(flatten)]
        pr: PR,
        #[arg(long, default_value_t = 8)]
        precision: u32,
    },
    /// Multiplicative order of r modulo p^N.
    Order {
        #[command(flatten)]
        pr: PR,
        #[arg(short = 'N')]
        n: u32,
    },
    /// The threshold N_r for a Case I multiplier.
    Nr {
        #[command(flatten)]
        pr: PR,
        #[arg(long, default_value_t = 64)]
        cap: u32,
    },
    /// The finite quotient Z_p^x / G_r with its multiplication table.
    Quotient {
        #[command(flatten)]
        pr: PR,
        #[arg(long, default_value_t = 64)]
        cap: u32,
    },
    /// Teichmüller lift omega(i) modulo p^N.
    Teich {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        i: u64,
        #[arg(short = 'N')]
        n: u32,
    },
    /// Orbit decomposition of a nonzero integer x.
    Decompose {
        #[command(flatten)]
        pr: PR,
        #[arg(short, allow_hyphen_values = true)]
        x: i128,
        #[arg(long, default_value_t = 3)]
        precision: u32,
    },
    /// K-groups of the crossed product, its primed variant, or the ideal.
    Ktheory {
        #[command(flatten)]
        pr: PR,
        #[arg(long)]
        primed: bool,
        #[arg(long)]
        ideal: bool,
    },
    /// Supernatural order S, optionally testing whether q lies in H_S.
    Snumber {
        #[command(flatten)]
        pr: PR,
        #[arg(long, default_value_t = 64)]
        cap: u32,
        /// A rational such as `7/9`.
        #[arg(long, allow_hyphen_values = true)]
        contains: Option<String>,
    },
    /// Run the property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        max_p: u64,
        #[arg(long = "max-N", default_value_t = 5)]
        max_n: u32,
        #[arg(long, default_value_t = 4)]
        max_len: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        window: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Prime for the digits suite (with -r).
        #[arg(short)]
        p: Option<u64>,
        #[arg(short, allow_hyphen_values = true, requires = "p")]
        r: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Digit expansion x = sum x_i r^i (Case III, integer r).
    Expand {
        #[command(flatten)]
        pr: PR,
        #[arg(short, allow_hyphen_values = true)]
        x: i128,
        #[arg(long, default_value_t = 12)]
        max_len: u32,
    },
    /// Apply alpha or beta to a function file.
    Endo {
        #[arg(value_enum)]
        which: EndoArg,
        #[arg(short, allow_hyphen_values = true)]
        r: String,
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Write one operator of a truncated representation as JSON.
    Rep {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(short)]
        p: u64,
        #[arg(short, allow_hyphen_values = true)]
        r: Option<String>,
        /// Function file (required except for the intertwiner).
        #[arg(long = "fn")]
        function: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "v")]
        part: PartArg,
        #[arg(short, allow_hyphen_values = true, default_value_t = 1)]
        x: i128,
        #[arg(long, default_value_t = 8)]
        window: u64,
        #[arg(long, default_value_t = 3)]
        max_len: u32,
        /// Valuation N for the HS family (s = p^N).
        #[arg(short = 'N', default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        cutoff: u64,
    },
    /// Check v m_f v* = m_(alpha f) on the interior of the truncation.
    Covariance {
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        m_alpha: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EndoArg {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Orbit,
    Cyclic,
    Digit,
    Hs,
    Intertwiner,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartArg {
    V,
    M,
    /// `m` on the codomain of `v` (the shape needed for `m_(alpha f)`).
    MOut,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Result<CommandResult> {
    use commands::*;
    match cmd {
        Command::Classify { pr, precision } => {
            let p = prime(pr.p)?;
            cmd_classify(p, &multiplier(p, &pr.r)?, precision)
        }
        Command::Order { pr, n } => {
            let p = prime(pr.p)?;
            cmd_order(p, &multiplier(p, &pr.r)?, n)
        }
        Command::Nr { pr, cap } => {
            let p = prime(pr.p)?;
            cmd_nr(p, &multiplier(p, &pr.r)?, cap)
        }
        Command::Quotient { pr, cap } => {
            let p = prime(pr.p)?;
            cmd_quotient(p, &multiplier(p, &pr.r)?, cap)
        }
        Command::Teich { p, i, n } => cmd_teich(prime(p)?, i, n),
        Command::Decompose { pr, x, precision } => {
            let p = prime(pr.p)?;
            cmd_decompose(p, &multiplier(p, &pr.r)?, x, precision)
        }
        Command::Ktheory { pr, primed, ideal } => {
            let p = prime(pr.p)?;
            cmd_ktheory(p, &multiplier(p, &pr.r)?, primed, ideal)
        }
        Command::Snumber { pr, cap, contains } => {
            let p = prime(pr.p)?;
            cmd_snumber(p, &multiplier(p, &pr.r)?, cap, contains.as_deref())
        }
        Command::Verify { suite, max_p, max_n, max_len, seed, window, samples, p, r, inject_fault } => {
            let suite: Suite = suite.parse()?;
            let digits = match (p, r) {
                (Some(p), Some(r)) => {
                    let p = prime(p)?;
                    Some((p, multiplier(p, &r)?))
                }
                _ => None,
            };
            let config = VerifyConfig { max_p, max_n, max_len, window, seed, samples, digits, inject_fault };
            cmd_verify(&VerifyArgs { suite, config })
        }
        Command::Expand { pr, x, max_len } => {
            let p = prime(pr.p)?;
            cmd_expand(p, &multiplier(p, &pr.r)?, x, max_len)
        }
        Command::Endo { which, r, function } => {
            let f = load_function(&read(&function)?)?;
            let r = multiplier(f.prime(), &r)?;
            let which = match which {
                EndoArg::Alpha => Endo::Alpha,
                EndoArg::Beta => Endo::Beta,
            };
            cmd_endo(&f, &r, which)
        }
        Command::Rep { family, p, r, function, part, x, window, max_len, n, cutoff } => {
            let p = prime(p)?;
            let r = r.map(|r| multiplier(p, &r)).transpose()?;
            let f = function.map(|path| load_function(&read(&path)?)).transpose()?;
            if let Some(f) = &f {
                if f.prime() != p {
                    return Err(Error::InvalidArgument(format!("function is over Z_{}, not Z_{p}", f.prime())));
                }
            }
            let family = match family {
                FamilyArg::Orbit => Family::Orbit,
                FamilyArg::Cyclic => Family::Cyclic,
                FamilyArg::Digit => Family::Digit,
                FamilyArg::Hs => Family::Hs,
                FamilyArg::Intertwiner => Family::Intertwiner,
            };
            let part = match part {
                PartArg::V => Part::V,
                PartArg::M => Part::M,
                PartArg::MOut => Part::MOut,
            };
            cmd_rep(&RepArgs { family, part, p, r: r.as_ref(), f: f.as_ref(), x, window, max_len, n, cutoff })
        }
        Command::Covariance { v, m, m_alpha } => {
            let v = load_operator(&read(&v)?)?;
            let m = load_operator(&read(&m)?)?;
            let ma = load_operator(&read(&m_alpha)?)?;
            cmd_covariance(&v, &m, &ma)
        }
    }
}

/// Print to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::NotOddPrime(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(res) => {
            if json {
                let mut env = json!({"status": "ok", "payload": res.payload, "humanText": res.human});
                if !res.ok {
                    env["status"] = json!("error");
                    env["code"] = json!("property_failure");
                }
                emit(&serde_json::to_string_pretty(&env).expect("envelope serializes"));
            } else {
                emit(&res.human);
            }
            ExitCode::from(if res.ok { 0 } else { 1 })
        }
        Err(e) => {
            if json {
                let env = json!({"status": "error", "code": e.code(), "message": e.to_string()});
                emit(&serde_json::to_string_pretty(&env).expect("envelope serializes"));
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(exit_code_for(&e))
        }
    }
}
