use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsl3_core::bqd::CaseIhParams;
use qsl3_core::koszul::DEFAULT_LATTICE_CAP;
use qsl3_core::shape::DEFAULT_WORD_CAP;
use qsl3_core::Qj;

use crate::config::{primes_from_env, Command, ConfigError, Family, RunConfig, TSpec};
use crate::run::run;

pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "qsl3", version, about = "Exact verification suites for quantum SL(3) data")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Restrict to one family (default: both).
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Rational value of t, or `symbolic` for Q(t).
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub t: TSpec,
    /// Shorthand for `--t symbolic`.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Coherence conditions of a Case I.h / I.e datum.
    CheckBqd(Common),
    /// Resultant elimination and normalization of Case I.h parameters.
    Classify(ClassifyArgs),
    /// Graded dimensions of the shape algebra.
    ShapeDims {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_total_degree: usize,
        #[arg(long)]
        mod_p: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
    },
    /// Distributivity of relation lattices and the dual series test.
    Koszul {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 5)]
        series_degree: usize,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
        #[arg(long)]
        mod_p: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
    },
    /// Zhang twist identification of the two shape algebras.
    TwistVerify(Common),
    /// Point-module cubic against the determinant cubic.
    Curves {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        print_cubics: bool,
    },
    /// Flag variety components and their automorphisms.
    Flag(Common),
    /// Relations and antipode of the Hopf algebra.
    Hopf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dump_relations: Option<PathBuf>,
    },
    /// Every suite.
    All {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mod_p: bool,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub verify_elimination: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<Qj>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<Qj>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<Qj>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_p: Option<Qj>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_p: Option<Qj>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_p: Option<Qj>,
}

impl ClassifyArgs {
    fn params(&self) -> Result<Option<CaseIhParams<Qj>>, ConfigError> {
        let all = [&self.alpha, &self.beta, &self.gamma, &self.alpha_p, &self.beta_p, &self.gamma_p];
        match all.iter().filter(|x| x.is_some()).count() {
            0 => Ok(None),
            6 => {
                let v = |x: &Option<Qj>| x.clone().expect("checked");
                Ok(Some(CaseIhParams {
                    alpha: v(&self.alpha),
                    beta: v(&self.beta),
                    gamma: v(&self.gamma),
                    alpha_p: v(&self.alpha_p),
                    beta_p: v(&self.beta_p),
                    gamma_p: v(&self.gamma_p),
                }))
            }
            _ => Err(ConfigError::Usage("classify needs all six of --alpha --beta --gamma --alpha-p --beta-p --gamma-p".into())),
        }
    }
}

fn apply_common(cfg: &mut RunConfig, c: &Common) {
    cfg.family = c.family;
    cfg.t = if c.symbolic { TSpec::Symbolic } else { c.t.clone() };
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.command {
            Sub::CheckBqd(c) => {
                let mut cfg = RunConfig::new(Command::CheckBqd);
                apply_common(&mut cfg, c);
                cfg
            }
            Sub::Classify(a) => {
                let mut cfg = RunConfig::new(Command::Classify);
                cfg.classify.verify_elimination = a.verify_elimination;
                cfg.classify.params = a.params()?;
                cfg
            }
            Sub::ShapeDims { common, max_total_degree, mod_p, word_cap } => {
                let mut cfg = RunConfig::new(Command::ShapeDims);
                apply_common(&mut cfg, common);
                cfg.max_total_degree = *max_total_degree;
                cfg.mod_p = *mod_p;
                cfg.word_cap = *word_cap;
                cfg
            }
            Sub::Koszul { common, max_degree, series_degree, cap, mod_p, word_cap } => {
                let mut cfg = RunConfig::new(Command::Koszul);
                apply_common(&mut cfg, common);
                cfg.max_degree = *max_degree;
                cfg.series_degree = *series_degree;
                cfg.lattice_cap = *cap;
                cfg.mod_p = *mod_p;
                cfg.word_cap = *word_cap;
                cfg
            }
            Sub::TwistVerify(c) => {
                let mut cfg = RunConfig::new(Command::TwistVerify);
                apply_common(&mut cfg, c);
                cfg
            }
            Sub::Curves { common, print_cubics } => {
                let mut cfg = RunConfig::new(Command::Curves);
                apply_common(&mut cfg, common);
                cfg.print_cubics = *print_cubics;
                cfg
            }
            Sub::Flag(c) => {
                let mut cfg = RunConfig::new(Command::Flag);
                apply_common(&mut cfg, c);
                cfg
            }
            Sub::Hopf { common, dump_relations } => {
                let mut cfg = RunConfig::new(Command::Hopf);
                apply_common(&mut cfg, common);
                cfg.dump_relations = dump_relations.clone();
                cfg
            }
            Sub::All { common, mod_p } => {
                let mut cfg = RunConfig::all();
                apply_common(&mut cfg, common);
                cfg.mod_p = *mod_p;
                cfg
            }
        };
        cfg.primes = primes_from_env()?;
        cfg.output = self.output;
        Ok(cfg)
    }
}

/// Parses `args`, runs, writes the report and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let format = cli.format;
    let cfg = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let json = report.to_json();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Some(path) = &cfg.output {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            return 1;
        }
    }
    let printed = match (format, &cfg.output) {
        (Format::Text, _) => report.to_text(),
        (Format::Json, None) => json + "\n",
        (Format::Json, Some(_)) => format!("verdict: {}\n", report.verdict.label()),
    };
    let _ = out.write_all(printed.as_bytes());
    report.verdict.exit_code()
}
