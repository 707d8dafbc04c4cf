use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qsl3_core::bqd::{Bqd, BqdError, CaseIhParams};
use qsl3_core::koszul::DEFAULT_LATTICE_CAP;
use qsl3_core::primes::{is_prime, DEFAULT_PRIMES};
use qsl3_core::shape::DEFAULT_WORD_CAP;
use qsl3_core::{Field, Qj, Rational, Ring};
use serde::Serialize;
use thiserror::Error;

pub const PRIMES_ENV: &str = "QSL3_PRIMES";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid t `{0}`: expected a rational literal or `symbolic`")]
    BadT(String),
    #[error("t = {0} is excluded (need t != 0 and t^3 != 1)")]
    ExcludedT(String),
    #[error("invalid prime list `{0}`")]
    BadPrimes(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ih,
    Ie,
}

impl Family {
    pub const BOTH: [Family; 2] = [Family::Ih, Family::Ie];

    pub fn label(self) -> &'static str {
        match self {
            Family::Ih => "ih",
            Family::Ie => "ie",
        }
    }

    pub fn bqd<F: Field>(self, t: &F) -> Result<Bqd<F>, BqdError> {
        match self {
            Family::Ih => Bqd::case_ih(t),
            Family::Ie => Bqd::case_ie(t),
        }
    }
}

/// Either a rational value of the parameter or the generator of `Q(t)`.
#[derive(Clone, Debug, PartialEq)]
pub enum TSpec {
    Value(Rational),
    Symbolic,
}

impl TSpec {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, TSpec::Symbolic)
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSpec::Value(r) => write!(f, "{}", r),
            TSpec::Symbolic => f.write_str("symbolic"),
        }
    }
}

impl FromStr for TSpec {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        if s.trim() == "symbolic" {
            return Ok(TSpec::Symbolic);
        }
        let t: Rational = s.parse().map_err(|_| ConfigError::BadT(s.to_string()))?;
        if t.is_zero() || t.pow(3).is_one() {
            return Err(ConfigError::ExcludedT(s.to_string()));
        }
        Ok(TSpec::Value(t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckBqd,
    Classify,
    ShapeDims,
    Koszul,
    TwistVerify,
    Curves,
    Flag,
    Hopf,
}

impl Command {
    pub const ALL: [Command; 8] =
        [Command::CheckBqd, Command::Classify, Command::ShapeDims, Command::Koszul, Command::TwistVerify, Command::Curves, Command::Flag, Command::Hopf];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckBqd => "check-bqd",
            Command::Classify => "classify",
            Command::ShapeDims => "shape-dims",
            Command::Koszul => "koszul",
            Command::TwistVerify => "twist-verify",
            Command::Curves => "curves",
            Command::Flag => "flag",
            Command::Hopf => "hopf",
        }
    }

    /// Whether the suite is run once per family.
    pub fn per_family(self) -> bool {
        !matches!(self, Command::Classify | Command::TwistVerify | Command::Flag)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ClassifyInput {
    pub verify_elimination: bool,
    pub params: Option<CaseIhParams<Qj>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Name echoed in the report (`all` or a single suite).
    pub command: String,
    pub suites: Vec<Command>,
    /// `None` runs both families.
    pub family: Option<Family>,
    pub t: TSpec,
    pub max_total_degree: usize,
    pub max_degree: usize,
    pub series_degree: usize,
    pub lattice_cap: usize,
    pub word_cap: usize,
    pub mod_p: bool,
    pub primes: Vec<u64>,
    pub classify: ClassifyInput,
    pub dump_relations: Option<PathBuf>,
    pub print_cubics: bool,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command: command.name().to_string(),
            suites: vec![command],
            family: None,
            t: TSpec::Value(Rational::from_integer(2)),
            max_total_degree: 4,
            max_degree: 4,
            series_degree: 5,
            lattice_cap: DEFAULT_LATTICE_CAP,
            word_cap: DEFAULT_WORD_CAP,
            mod_p: false,
            primes: DEFAULT_PRIMES.to_vec(),
            classify: ClassifyInput::default(),
            dump_relations: None,
            print_cubics: false,
            output: None,
        }
    }

    pub fn all() -> Self {
        let mut c = RunConfig::new(Command::CheckBqd);
        c.command = "all".to_string();
        c.suites = Command::ALL.to_vec();
        c.classify.verify_elimination = true;
        c
    }

    pub fn families(&self) -> Vec<Family> {
        self.family.map_or(Family::BOTH.to_vec(), |f| vec![f])
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.mod_p && self.t.is_symbolic() {
            return Err(ConfigError::Usage("prime-field mode needs a numeric t".into()));
        }
        if self.max_degree < 2 {
            return Err(ConfigError::Usage("--max-degree must be at least 2".into()));
        }
        Ok(())
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "suites": self.suites,
            "family": self.family.map(Family::label),
            "t": self.t.to_string(),
            "max_total_degree": self.max_total_degree.to_string(),
            "max_degree": self.max_degree.to_string(),
            "series_degree": self.series_degree.to_string(),
            "lattice_cap": self.lattice_cap.to_string(),
            "word_cap": self.word_cap.to_string(),
            "mod_p": self.mod_p,
            "primes": self.primes.iter().map(u64::to_string).collect::<Vec<_>>(),
        })
    }
}

/// Comma-separated primes; each must be a prime above 3.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, ConfigError> {
    let err = || ConfigError::BadPrimes(s.to_string());
    let primes = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| err()))
        .collect::<Result<Vec<_>, _>>()?;
    if primes.is_empty() || primes.iter().any(|&p| p <= 3 || !is_prime(p)) {
        return Err(err());
    }
    Ok(primes)
}

/// Primes from the environment, or the built-in pair.
pub fn primes_from_env() -> Result<Vec<u64>, ConfigError> {
    match std::env::var(PRIMES_ENV) {
        Ok(s) if !s.trim().is_empty() => parse_primes(&s),
        _ => Ok(DEFAULT_PRIMES.to_vec()),
    }
}
