//! Batch experiments: every mode builds an [`ExperimentResult`] from library
//! calls and renders it as CSV or JSON.
//!
//! Randomness: a master seed feeds ChaCha8 and trial `i` draws from stream
//! `i` (see [`trial_rng`](crate::constructions::trial_rng)). A single
//! ensemble matrix uses stream 0 and a random signal for it uses stream 1.

mod args;
mod commands;
mod io;
mod lemma;
mod table;

use std::path::PathBuf;

use thiserror::Error;

use crate::constructions::{EnsembleKind, EnsembleSpec};
use crate::pursuit::Algorithm;

pub use args::{run_from_args, Cli};
pub use commands::{
    cmd_bounds, cmd_counterexample, cmd_lemma_check, cmd_phase, cmd_recover, cmd_rip,
    cmd_scan_gram, run,
};
pub use io::{format_matrix, format_signal, parse_matrix, parse_signal, read_matrix, read_signal};
pub use lemma::{check_instance, InstanceChecks, LemmaTally, CHECK_ROWS};
pub use table::{format_significant, one_based, ExperimentResult, Metadata, Table, Value};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] crate::Error),
}

impl CliError {
    /// 1 usage, 2 input, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Library(e) if e.is_numerical() => 3,
            CliError::Library(crate::Error::DimensionMismatch(_)) => 2,
            CliError::Library(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Recover,
    Rip,
    Counterexample,
    Bounds,
    Phase,
    LemmaCheck,
    ScanGram,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Recover => "recover",
            Mode::Rip => "rip",
            Mode::Counterexample => "counterexample",
            Mode::Bounds => "bounds",
            Mode::Phase => "phase",
            Mode::LemmaCheck => "lemma-check",
            Mode::ScanGram => "scan-gram",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    File(PathBuf),
    /// Drawn from stream 0 of the master seed.
    Ensemble {
        kind: EnsembleKind,
        m: usize,
        n: usize,
    },
}

impl MatrixSource {
    pub fn ensemble_spec(&self, seed: u64) -> Option<EnsembleSpec> {
        match *self {
            MatrixSource::Ensemble { kind, m, n } => Some(EnsembleSpec { kind, m, n, seed }),
            MatrixSource::File(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SignalSource {
    File(PathBuf),
    /// `K` random entries drawn from stream 1 of the master seed.
    Random(usize),
}

/// Parses `kind:m:n`, with `nearortho:m:n:spread` for the near-orthonormal
/// ensemble (spread defaults to 0.3).
pub fn parse_ensemble(s: &str) -> Result<MatrixSource, CliError> {
    let usage = || CliError::Usage(format!("bad ensemble `{s}`, expected KIND:M:N"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() < 3 {
        return Err(usage());
    }
    let m: usize = parts[1].parse().map_err(|_| usage())?;
    let n: usize = parts[2].parse().map_err(|_| usage())?;
    let kind = match (parts[0], parts.len()) {
        ("gaussian", 3) => EnsembleKind::GaussianNormalized,
        ("uniform", 3) => EnsembleKind::UniformNormalized,
        ("nearortho", 3) => EnsembleKind::NearOrthonormal { spread: 0.3 },
        ("nearortho", 4) => EnsembleKind::NearOrthonormal {
            spread: parts[3].parse().map_err(|_| usage())?,
        },
        _ => return Err(usage()),
    };
    let source = MatrixSource::Ensemble { kind, m, n };
    EnsembleSpec {
        kind,
        m,
        n,
        seed: 0,
    }
    .validate()?;
    Ok(source)
}

pub fn ensemble_label(kind: EnsembleKind, m: usize, n: usize) -> String {
    match kind {
        EnsembleKind::NearOrthonormal { spread } => format!("nearortho:{m}:{n}:{spread}"),
        _ => format!("{}:{m}:{n}", kind.name()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoverSpec {
    pub matrix: MatrixSource,
    pub signal: SignalSource,
    /// Iteration budget; defaults to the signal's sparsity.
    pub k: Option<usize>,
    pub algorithm: Algorithm,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RipSpec {
    pub matrix: MatrixSource,
    pub k: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CounterexampleSpec {
    pub write_matrix: Option<PathBuf>,
    pub write_signal: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsSpec {
    pub k_max: usize,
    pub l: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpec {
    pub kind: EnsembleKind,
    pub m_values: Vec<usize>,
    pub n: usize,
    pub k_values: Vec<usize>,
    pub trials: usize,
    pub algorithms: Vec<Algorithm>,
    pub seed: u64,
}

/// One family of random instances for the lemma checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceFamily {
    pub kind: EnsembleKind,
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheckSpec {
    pub families: Vec<InstanceFamily>,
    pub trials: usize,
    pub seed: u64,
    pub include_counterexample: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanGramSpec {
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentSpec {
    Recover(RecoverSpec),
    Rip(RipSpec),
    Counterexample(CounterexampleSpec),
    Bounds(BoundsSpec),
    Phase(PhaseSpec),
    LemmaCheck(LemmaCheckSpec),
    ScanGram(ScanGramSpec),
}

impl ExperimentSpec {
    pub fn mode(&self) -> Mode {
        match self {
            ExperimentSpec::Recover(_) => Mode::Recover,
            ExperimentSpec::Rip(_) => Mode::Rip,
            ExperimentSpec::Counterexample(_) => Mode::Counterexample,
            ExperimentSpec::Bounds(_) => Mode::Bounds,
            ExperimentSpec::Phase(_) => Mode::Phase,
            ExperimentSpec::LemmaCheck(_) => Mode::LemmaCheck,
            ExperimentSpec::ScanGram(_) => Mode::ScanGram,
        }
    }
}
