use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hlverify_cli::verify::{self, VerificationReport};
use hlverify_cli::*;
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "hlverify", version, about = "Verify prime-factor, irreducibility and diophantine claims")]
struct Cli {
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greatest prime factor of m(m+d)...(m+(k-1)d) against its threshold.
    Gpf { m: u64, d: u64, k: u64 },

    /// All windows with 2 ≤ k ≤ k_max, dk < m ≤ m_max whose gpf misses the threshold.
    SearchExceptions {
        d: u64,
        #[arg(value_parser = parse_number)]
        k_max: u64,
        #[arg(value_parser = parse_number)]
        m_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },

    /// Newton polygon edges of a polynomial read from a coefficient file.
    Np {
        /// One integer per line, constant term first.
        coeffs: PathBuf,
        p: u64,
    },

    /// Factor-degree exclusion table for a generalized Hermite-Laguerre polynomial.
    Irred {
        n: u64,
        u: u64,
        alpha: u64,
        d: u64,
        #[arg(allow_negative_numbers = true)]
        a0: BigInt,
        #[arg(allow_negative_numbers = true)]
        an: BigInt,
        /// Full coefficient list a_0..a_n, one per line.
        #[arg(long)]
        all_coeffs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },

    /// Run a named verification suite (or `all`) and print a JSON report.
    Verify {
        /// Suite id, `all`, or `list` to show the registry.
        suite: String,
        /// Override a suite bound, e.g. --bound m_max=1e5.
        #[arg(long = "bound", value_parser = parse_bound)]
        bounds: Vec<(String, u64)>,
    },

    /// Exact prime counts at x against the closed-form estimates.
    Bounds {
        #[arg(value_parser = parse_number)]
        x: u64,
        /// Start of the validity range for the residue-class bounds.
        #[arg(long, default_value = "6450", value_parser = parse_number)]
        nu0: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },

    /// Bounded search for X^3 + A Y^3 = B.
    Thue {
        a: u64,
        b: u64,
        #[arg(long = "box", default_value = "1000000", value_parser = parse_number)]
        box_: u64,
    },

    /// Integers up to a bound composed only of the given primes.
    Smooth {
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        basis: Vec<u64>,
        #[arg(long, value_parser = parse_number)]
        bound: u64,
        #[arg(long)]
        count_only: bool,
    },
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// Returns the text to emit and the exit code that goes with it.
fn run(command: Command) -> CliResult<(String, i32)> {
    Ok(match command {
        Command::Gpf { m, d, k } => (gpf_line(m, d, k)? + "\n", 0),
        Command::SearchExceptions { d, k_max, m_max, format } => {
            (render_rows(&search_findings(d, k_max, m_max)?, format, finding_text)?, 0)
        }
        Command::Np { coeffs, p } => (np_lines(&parse_coefficients(&read(&coeffs)?)?, p)?, 0),
        Command::Irred { n, u, alpha, d, a0, an, all_coeffs, format } => {
            let all = all_coeffs.map(|p| read(&p).and_then(|t| parse_coefficients(&t))).transpose()?;
            let spec = irred_spec(n, u, alpha, d, a0, an, all)?;
            let rows = irred_rows(&spec)?;
            let body = render_rows(&rows, format, irred_text)?;
            let out = if format == Format::Text { irred_header(&spec) + &body } else { body };
            (out, 0)
        }
        Command::Verify { suite, bounds } => {
            if suite == "list" {
                let mut out = String::new();
                for s in verify::registry() {
                    let claims: Vec<&str> = s.claims.iter().map(|c| c.id.as_str()).collect();
                    out += &format!("{:<18} {} [{}]\n", s.id, s.description, claims.join(", "));
                }
                return Ok((out, 0));
            }
            let overrides: BTreeMap<String, u64> = bounds.into_iter().collect();
            if suite == "all" {
                // an override applies to every suite that has the key
                let mut reports: Vec<VerificationReport> = Vec::new();
                for key in overrides.keys() {
                    if !verify::registry().iter().any(|s| s.bounds.contains_key(key)) {
                        return Err(CliError::usage(format!("no suite has a bound named '{key}'")));
                    }
                }
                for s in verify::registry() {
                    let own = overrides
                        .iter()
                        .filter(|(k, _)| s.bounds.contains_key(*k))
                        .map(|(k, v)| (k.clone(), *v))
                        .collect();
                    reports.push(verify::run_suite(&s.id, &own)?);
                }
                (to_json(&reports), verify::exit_code(&reports))
            } else {
                let report = verify::run_suite(&suite, &overrides)?;
                let code = report.exit_code();
                (to_json(&report), code)
            }
        }
        Command::Bounds { x, nu0, format } => {
            let limit = table_limit_from(std::env::var("HL_PRIME_TABLE_LIMIT").ok().as_deref())?;
            (render_rows(&bounds_rows(x, nu0, limit)?, format, bound_text)?, 0)
        }
        Command::Thue { a, b, box_ } => {
            let box_ = i64::try_from(box_).map_err(|_| CliError::usage("box too large"))?;
            (thue_lines(a, b, box_)?, 0)
        }
        Command::Smooth { basis, bound, count_only } => (smooth_lines(&basis, bound as u128, count_only)?, 0),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output;
    let command = cli.command;
    let result = match cli.jobs {
        Some(0) => Err(CliError::usage("--jobs must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(command)),
            Err(e) => Err(CliError { code: 1, message: e.to_string() }),
        },
        None => run(command),
    };
    let (text, code) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code as u8);
        }
    };
    let written = match &output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
