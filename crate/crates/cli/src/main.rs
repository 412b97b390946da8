use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unitary_birkhoff::io::{
    irrep_table_to_json, irrep_table_to_text, matrix_to_csv, matrix_to_json, read_matrix, report_to_json,
    weights_from_json, weights_to_json,
};
use unitary_birkhoff::{
    classify, decompose, embed_unitary, golden, irrep_table, random_unitary, random_xu, verify, CMatrix,
    Error, Permutation, StrategyChoice, Tolerance,
};

const VERIFY_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;

/// Decompose unit-line-sum unitaries into complex combinations of permutation matrices.
#[derive(Parser, Debug)]
#[command(name = "birkhoff", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Absolute tolerance for every unitarity, line-sum and contract check.
    #[arg(long, env = "BIRKHOFF_TOL", default_value_t = Tolerance::DEFAULT_EPS)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose an XU(n) matrix and print the weights as JSON.
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StrategyName::EvenOnly)]
        strategy: StrategyName,
        /// One-line permutation for canonical-tau, e.g. "[2,1,3]". Defaults to the identity.
        #[arg(long)]
        tau: Option<Permutation>,
        /// Seed for the Haar-random irrep unitaries of the general strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check a weight file against a matrix and print the residual report.
    Verify {
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// Also write the report as JSON.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Map an (n-1)x(n-1) unitary U to F_n (1 ⊕ U) F_n†.
    Embed {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Sample a Haar-random element of XU(n).
    RandomXu {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Report whether a matrix is unitary with unit line sums, doubly stochastic, both or neither.
    Classify {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the irreducible representations of S_n used by the decomposition.
    IrrepTable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Reproduce the built-in reference values.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyName {
    General,
    CanonicalTau,
    EvenOnly,
    EvenOddSplit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Input(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn tolerance(common: &Common) -> Result<Tolerance, Failure> {
    Ok(Tolerance::new(common.tol)?)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_matrix(out: Option<&Path>, m: &CMatrix) -> Outcome {
    let csv = out.is_some_and(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")));
    emit(out, &if csv { matrix_to_csv(m) } else { matrix_to_json(m) })
}

fn general_unitaries(n: usize, seed: u64) -> Result<BTreeMap<usize, CMatrix>, Error> {
    if n < 2 {
        return Ok(BTreeMap::new());
    }
    let table = irrep_table(n)?;
    Ok((2..table.len())
        .map(|k| {
            let dim = table.irreps()[k].dimension();
            (k, random_unitary(dim, seed.wrapping_mul(1_000_003).wrapping_add(k as u64)))
        })
        .collect())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decompose {
            input,
            out,
            strategy,
            tau,
            seed,
            common,
        } => {
            let tol = tolerance(&common)?;
            let x = read_matrix(&input)?;
            let n = x.rows();
            if tau.is_some() && !matches!(strategy, StrategyName::CanonicalTau) {
                return Err(Error::Parse("--tau only applies to --strategy canonical-tau".into()).into());
            }
            let choice = match strategy {
                StrategyName::General => StrategyChoice::General(general_unitaries(n, seed)?),
                StrategyName::CanonicalTau => {
                    StrategyChoice::CanonicalTau(tau.unwrap_or_else(|| Permutation::identity(n)))
                }
                StrategyName::EvenOnly => StrategyChoice::EvenOnly,
                StrategyName::EvenOddSplit => StrategyChoice::EvenOddSplit,
            };
            let w = decompose(&x, &choice, tol)?;
            emit(out.as_deref(), &weights_to_json(&w))?;
            let report = verify(&w, &x, tol);
            eprintln!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verify("decomposition contracts not met".into()))
            }
        }
        Command::Verify {
            weights,
            matrix,
            out,
            common,
        } => {
            let tol = tolerance(&common)?;
            let text = std::fs::read_to_string(&weights).map_err(Error::from)?;
            let w = weights_from_json(&text)?;
            let x = read_matrix(&matrix)?;
            if x.rows() != w.degree() || !x.is_square() {
                return Err(Error::DegreeMismatch {
                    left: w.degree(),
                    right: x.rows(),
                }
                .into());
            }
            let report = verify(&w, &x, tol);
            println!("{report}");
            if let Some(path) = out {
                emit(Some(&path), &report_to_json(&report))?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verify("verification failed".into()))
            }
        }
        Command::Embed { input, out, common } => {
            let tol = tolerance(&common)?;
            let x = embed_unitary(&read_matrix(&input)?, tol)?;
            emit_matrix(out.as_deref(), x.matrix())
        }
        Command::RandomXu { n, seed, out } => {
            if n == 0 {
                return Err(Error::DegreeOutOfRange {
                    what: "random-xu",
                    n,
                    min: 1,
                    max: usize::MAX,
                }
                .into());
            }
            emit_matrix(out.as_deref(), random_xu(n, seed).matrix())
        }
        Command::Classify { input, common } => {
            let tol = tolerance(&common)?;
            let a = read_matrix(&input)?;
            let verdict = classify(&a, tol)?;
            println!("{verdict}");
            if verdict.is_consistent() {
                Ok(())
            } else {
                Err(Failure::Verify("unitary doubly stochastic matrix is not a permutation matrix".into()))
            }
        }
        Command::IrrepTable { n, format, out } => {
            let table = irrep_table(n)?;
            let text = match format {
                Format::Text => irrep_table_to_text(&table)?,
                Format::Json => irrep_table_to_json(&table)?,
            };
            emit(out.as_deref(), &text)
        }
        Command::Selftest => {
            let items = golden::self_test()?;
            let mut ok = true;
            for item in &items {
                let verdict = if item.passed { "PASS" } else { "FAIL" };
                println!("{verdict} {}: {}", item.name, item.detail);
                ok &= item.passed;
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Verify("self-test failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(VERIFY_FAILED)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
