use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::commands::run;
use super::{
    parse_ensemble, BoundsSpec, CliError, CounterexampleSpec, ExperimentSpec, InstanceFamily,
    LemmaCheckSpec, MatrixSource, OutputFormat, PhaseSpec, RecoverSpec, RipSpec, ScanGramSpec,
    SignalSource,
};
use crate::pursuit::Algorithm;

/// Greedy sparse recovery experiments with exact isometry constants.
#[derive(Debug, Parser)]
#[command(name = "pursuit-lab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Output file, or `-` for stdout.
    #[arg(long, default_value = "-", global = true)]
    pub out: String,

    /// Master seed; trial i uses ChaCha8 stream i.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,

    /// Print wall time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgorithmName {
    Ols,
    Omp,
    Mols,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct MatrixArgs {
    /// Matrix file: `m n` then m rows of n numbers.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Random matrix `gaussian:M:N`, `uniform:M:N` or `nearortho:M:N[:SPREAD]`.
    #[arg(long)]
    ensemble: Option<String>,
}

impl MatrixArgs {
    fn source(&self) -> Result<MatrixSource, CliError> {
        match (&self.matrix, &self.ensemble) {
            (Some(p), _) => Ok(MatrixSource::File(p.clone())),
            (None, Some(e)) => parse_ensemble(e),
            (None, None) => Err(CliError::Usage("need --matrix or --ensemble".into())),
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SignalArgs {
    /// Signal file: `n K` then K lines `index value` (1-based).
    #[arg(long)]
    signal: Option<PathBuf>,
    /// Random K-sparse signal with N(0, 1) entries.
    #[arg(long, value_name = "K")]
    random_sparse: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run OLS, OMP or MOLS on y = A x and report every iteration.
    Recover {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        signal: SignalArgs,
        /// Number of indices to select (default: signal sparsity).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = AlgorithmName::Ols)]
        algorithm: AlgorithmName,
        /// Indices per MOLS iteration.
        #[arg(long = "L", default_value_t = 1)]
        l: usize,
    },
    /// Exact isometry constant of order K by subset enumeration.
    Rip {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        k: usize,
    },
    /// Print the three-column OLS failure instance.
    Counterexample {
        #[arg(long)]
        write_matrix: Option<PathBuf>,
        #[arg(long)]
        write_signal: Option<PathBuf>,
    },
    /// Recovery thresholds on the isometry constant for K = 1..K_MAX.
    Bounds {
        #[arg(long, default_value_t = 20)]
        k_max: usize,
        /// Also list the MOLS threshold for this L.
        #[arg(long = "L")]
        l: Option<usize>,
    },
    /// Monte Carlo success rates over (m, K) cells.
    Phase {
        /// Ensemble `KIND:M:N`.
        #[arg(long)]
        ensemble: String,
        /// Row counts to sweep (default: M from the ensemble).
        #[arg(long, value_delimiter = ',')]
        m_values: Vec<usize>,
        /// Sparsity levels to sweep.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k_values: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "ols")]
        algorithms: Vec<AlgorithmName>,
        /// Indices per MOLS iteration.
        #[arg(long = "L", default_value_t = 2)]
        l: usize,
    },
    /// Check the recovery inequalities along OLS runs on random instances.
    LemmaCheck {
        /// Instance family `KIND:M:N`; repeatable.
        #[arg(long, default_values_t = ["gaussian:12:18".to_string()])]
        ensemble: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        k_values: Vec<usize>,
        /// Instances per (family, K).
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Add the three-column failure instance.
        #[arg(long)]
        include_counterexample: bool,
    },
    /// Grid search of the 3x3 Gram family for the smallest failing δ₃.
    ScanGram {
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
}

fn algorithm(name: AlgorithmName, l: usize) -> Algorithm {
    match name {
        AlgorithmName::Ols => Algorithm::Ols,
        AlgorithmName::Omp => Algorithm::Omp,
        AlgorithmName::Mols => Algorithm::Mols { per_iteration: l },
    }
}

impl Cli {
    pub fn spec(&self) -> Result<ExperimentSpec, CliError> {
        let seed = self.seed;
        Ok(match &self.command {
            Command::Recover {
                matrix,
                signal,
                k,
                algorithm: name,
                l,
            } => {
                let signal = match (&signal.signal, signal.random_sparse) {
                    (Some(p), _) => SignalSource::File(p.clone()),
                    (None, Some(k)) => SignalSource::Random(k),
                    (None, None) => {
                        return Err(CliError::Usage("need --signal or --random-sparse".into()))
                    }
                };
                ExperimentSpec::Recover(RecoverSpec {
                    matrix: matrix.source()?,
                    signal,
                    k: *k,
                    algorithm: algorithm(*name, *l),
                    seed,
                })
            }
            Command::Rip { matrix, k } => ExperimentSpec::Rip(RipSpec {
                matrix: matrix.source()?,
                k: *k,
                seed,
            }),
            Command::Counterexample {
                write_matrix,
                write_signal,
            } => ExperimentSpec::Counterexample(CounterexampleSpec {
                write_matrix: write_matrix.clone(),
                write_signal: write_signal.clone(),
            }),
            Command::Bounds { k_max, l } => ExperimentSpec::Bounds(BoundsSpec {
                k_max: *k_max,
                l: *l,
            }),
            Command::Phase {
                ensemble,
                m_values,
                k_values,
                trials,
                algorithms,
                l,
            } => {
                let MatrixSource::Ensemble { kind, m, n } = parse_ensemble(ensemble)? else {
                    unreachable!("parse_ensemble returns an ensemble")
                };
                ExperimentSpec::Phase(PhaseSpec {
                    kind,
                    m_values: if m_values.is_empty() {
                        vec![m]
                    } else {
                        m_values.clone()
                    },
                    n,
                    k_values: k_values.clone(),
                    trials: *trials,
                    algorithms: algorithms.iter().map(|a| algorithm(*a, *l)).collect(),
                    seed,
                })
            }
            Command::LemmaCheck {
                ensemble,
                k_values,
                trials,
                include_counterexample,
            } => {
                let mut families = Vec::new();
                for e in ensemble {
                    let MatrixSource::Ensemble { kind, m, n } = parse_ensemble(e)? else {
                        unreachable!("parse_ensemble returns an ensemble")
                    };
                    families.extend(k_values.iter().map(|&k| InstanceFamily { kind, m, n, k }));
                }
                ExperimentSpec::LemmaCheck(LemmaCheckSpec {
                    families,
                    trials: *trials,
                    seed,
                    include_counterexample: *include_counterexample,
                })
            }
            Command::ScanGram { step } => ExperimentSpec::ScanGram(ScanGramSpec { step: *step }),
        })
    }

    pub fn output_format(&self) -> OutputFormat {
        match self.format {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("PURSUIT_LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|t| *t > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "PURSUIT_LAB_THREADS={value} is not a positive integer"
        ))
    })?;
    // Fails only if a pool already exists, in which case it is kept.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let result = run(&cli.spec()?)?;
    let text = match cli.output_format() {
        OutputFormat::Csv => result.to_csv(),
        OutputFormat::Json => result.to_json(),
    };
    if cli.out == "-" {
        std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
    } else {
        std::fs::write(&cli.out, text).map_err(|e| CliError::Io(format!("{}: {e}", cli.out)))?;
    }
    if cli.timing {
        eprintln!(
            "wall time: {:.3} s",
            result.metadata.wall_time.as_secs_f64()
        );
    }
    Ok(())
}

/// Parses arguments, runs the experiment and returns the process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
