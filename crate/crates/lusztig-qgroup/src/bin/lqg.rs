//! Command-line interface: normal forms, coefficient tables, the
//! verification suites, and the triangular-decomposition pairings.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lusztig_qgroup::cartan::CartanMatrix;
use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::suites::{self, SuiteConfig};
use lusztig_qgroup::uq::UqContext;

#[derive(Parser)]
#[command(
    name = "lqg",
    about = "Exact computations in Lusztig's divided-power quantum groups at roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Params {
    /// The order of the root of unity (l >= 2).
    #[arg(long, default_value_t = 3)]
    ell: i64,
    /// Cartan type (A1, A1xA1, A2, A3) or the path of a matrix file.
    #[arg(long, default_value = "A2")]
    cartan: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an expression (triangular normal form, or the PBW torus
    /// basis in generic mode).
    Nf {
        #[command(flatten)]
        params: Params,
        /// Work in the generic torus model over Q(v) (torus atoms only).
        #[arg(long)]
        generic: bool,
        /// Number of indices in generic mode.
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// The expression, e.g. "(v^-2 - 1)*k[1;2]*K[1]^2" or "E[1;2]*F[1;1]".
        expr: String,
    },
    /// Emit coefficient tables (p, q, b, h).
    Tables {
        /// Which table: p, q, b or h.
        table: String,
        /// Bound for the p/q/h tables.
        #[arg(long, default_value_t = 3)]
        n: i64,
        /// Order of the root of unity for the b table.
        #[arg(long, default_value_t = 3)]
        ell: i64,
    },
    /// Run a verification suite; exit code 0 iff every check passes.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Suite: torus, iso, commutators, td, multi or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Scaling exponents for the multi suite, e.g. "1,2".
        #[arg(long)]
        d: Option<String>,
        /// Degree bound for relation instances.
        #[arg(long, default_value_t = 6)]
        bound: i64,
        /// Seed for the randomized sweeps (embedded in the report).
        #[arg(long, default_value_t = 20260809)]
        seed: u64,
    },
    /// Evaluate the triangular-decomposition actions and pairing.
    Pairing {
        #[command(flatten)]
        params: Params,
        /// Minus-side argument, e.g. "F[1;1]".
        #[arg(long)]
        left: String,
        /// Plus-side argument, e.g. "E[1;4]".
        #[arg(long)]
        right: String,
        /// Operation: left, right or sharp.
        #[arg(long, default_value = "left")]
        op: String,
    },
}

fn context(ell: i64, cartan: &str) -> Result<Arc<UqContext>, lusztig_qgroup::Error> {
    Ok(UqContext::new(CartanMatrix::from_name_or_file(cartan)?, CycParams::new(ell)?))
}

fn run() -> Result<bool, lusztig_qgroup::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Nf { params, generic, rank, expr } => {
            let nf = if generic {
                suites::normal_form(&expr, true, rank, None)?
            } else {
                let ctx = context(params.ell, &params.cartan)?;
                suites::normal_form(&expr, false, ctx.rank(), Some(&ctx))?
            };
            match params.format {
                Format::Text => println!("{}", nf),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "input": expr,
                        "generic": generic,
                        "normal_form": nf,
                    }))
                    .expect("serialization")
                ),
            }
            Ok(true)
        }
        Command::Tables { table, n, ell } => {
            let out = match table.as_str() {
                "p" => suites::render_p_table(n)?,
                "q" => suites::render_q_table(n)?,
                "b" => suites::render_b_table(ell)?,
                "h" => suites::render_h_table(n)?,
                other => {
                    return Err(lusztig_qgroup::Error::InvalidArgument(format!(
                        "unknown table {:?} (expected p, q, b or h)",
                        other
                    )))
                }
            };
            print!("{}", out);
            Ok(true)
        }
        Command::Verify { params, suite, d, bound, seed } => {
            let d = match d {
                None => None,
                Some(s) => Some(
                    s.split(',')
                        .map(|x| {
                            x.trim().parse::<i64>().map_err(|_| {
                                lusztig_qgroup::Error::InvalidArgument(format!(
                                    "bad scaling exponent {:?}",
                                    x
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            let cfg = SuiteConfig {
                ell: params.ell,
                cartan: CartanMatrix::from_name_or_file(&params.cartan)?,
                cartan_name: params.cartan.clone(),
                d,
                bound,
                seed,
            };
            let report = suites::run_suite(&suite, &cfg)?;
            match params.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(report.all_passed())
        }
        Command::Pairing { params, left, right, op } => {
            let ctx = context(params.ell, &params.cartan)?;
            let out = suites::pairing(&ctx, &op, &left, &right)?;
            match params.format {
                Format::Text => println!("{}", out),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "op": op,
                        "left": left,
                        "right": right,
                        "value": out,
                    }))
                    .expect("serialization")
                ),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
