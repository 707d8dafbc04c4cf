use std::time::Instant;

use qsl3_core::primes::FALLBACK_PRIME;
use qsl3_core::{Field, Fp, PrimeModulus, RatFunc, Rational};
use serde_json::{json, Value};

use crate::config::{Command, ConfigError, Family, RunConfig, TSpec};
use crate::report::{Check, RunReport, Status, SuiteReport};
use crate::suites::{self, Body};

/// One suite invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub command: Command,
    pub family: Option<Family>,
    pub t: TSpec,
}

pub fn jobs(cfg: &RunConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for &command in &cfg.suites {
        if command.per_family() {
            for f in cfg.families() {
                out.push(Job { command, family: Some(f), t: cfg.t.clone() });
            }
        } else {
            out.push(Job { command, family: None, t: cfg.t.clone() });
        }
    }
    if cfg.command == "all" && !cfg.t.is_symbolic() {
        for command in [Command::TwistVerify, Command::Flag] {
            out.push(Job { command, family: None, t: TSpec::Symbolic });
        }
    }
    out
}

fn body_over<F: Field>(job: &Job, cfg: &RunConfig, t: &F) -> Body {
    let fam = job.family.unwrap_or(Family::Ih);
    match job.command {
        Command::CheckBqd => suites::check_bqd(fam, t),
        Command::ShapeDims => suites::shape_dims(fam, t, cfg.max_total_degree, cfg.word_cap),
        Command::Koszul => suites::koszul(fam, t, cfg.max_degree, cfg.series_degree, cfg.lattice_cap, cfg.word_cap),
        Command::TwistVerify => suites::twist_verify(t),
        Command::Curves => suites::curves(fam, t, cfg.print_cubics),
        Command::Flag => suites::flag(t),
        Command::Hopf => suites::hopf(fam, t, cfg.dump_relations.as_deref()),
        Command::Classify => unreachable!("classify has its own entry point"),
    }
}

fn over_prime(job: &Job, cfg: &RunConfig, t: &Rational, p: u64) -> Body {
    let m = match PrimeModulus::new(p) {
        Ok(m) => m,
        Err(e) => return Body { checks: vec![Check::new("prime", Status::Fail, e.to_string())], ..Body::default() },
    };
    match t.to_fp(&m) {
        Some(tp) => body_over::<Fp>(job, cfg, &tp),
        None => Body { checks: vec![Check::new("reduce-t", Status::Inconclusive, format!("t has no image mod {}", p))], ..Body::default() },
    }
}

/// Runs over every configured prime.  Where the primes disagree the fallback
/// prime is consulted and the majority kept; without a majority the check is inconclusive.
pub fn modular_body(job: &Job, cfg: &RunConfig, t: &Rational) -> Body {
    let mut runs: Vec<(u64, Body)> = cfg.primes.iter().map(|&p| (p, over_prime(job, cfg, t, p))).collect();
    let agree = |runs: &[(u64, Body)]| runs.windows(2).all(|w| w[0].1 == w[1].1);
    if !agree(&runs) && !cfg.primes.contains(&FALLBACK_PRIME) {
        runs.push((FALLBACK_PRIME, over_prime(job, cfg, t, FALLBACK_PRIME)));
    }
    let mut names: Vec<String> = Vec::new();
    for (_, b) in &runs {
        for c in &b.checks {
            if !names.contains(&c.name) {
                names.push(c.name.clone());
            }
        }
    }
    let checks = names
        .iter()
        .map(|name| {
            let found: Vec<Option<&Check>> = runs.iter().map(|(_, b)| b.checks.iter().find(|c| &c.name == name)).collect();
            let statuses: Vec<Option<Status>> = found.iter().map(|c| c.map(|c| c.status)).collect();
            let majority = statuses.iter().find(|s| 2 * statuses.iter().filter(|x| x == s).count() > statuses.len()).copied().flatten();
            let detail = found.iter().flatten().next().map_or(String::new(), |c| c.detail.clone());
            match majority {
                Some(s) if statuses.iter().all(|x| *x == Some(s)) => Check::new(name.clone(), s, format!("{} (all primes agree)", detail)),
                Some(s) => Check::new(name.clone(), s, format!("{} (majority over {} primes)", detail, runs.len())),
                None => Check::new(name.clone(), Status::Inconclusive, "prime fields disagree"),
            }
        })
        .collect();
    let data = Value::Object(runs.iter().map(|(p, b)| (p.to_string(), b.data.clone())).collect());
    let text = runs.first().map(|(_, b)| b.text.clone()).unwrap_or_default();
    Body { checks, data: json!({ "per_prime": data }), text }
}

fn field_label(job: &Job, cfg: &RunConfig) -> String {
    match (&job.t, cfg.mod_p && matches!(job.command, Command::ShapeDims | Command::Koszul)) {
        (TSpec::Symbolic, _) => "Q(t)".to_string(),
        (_, true) => format!("GF(p), p in {:?}", cfg.primes),
        (TSpec::Value(_), false) if job.command == Command::Classify => "Q(j)".to_string(),
        _ => "Q".to_string(),
    }
}

pub fn run_job(job: &Job, cfg: &RunConfig) -> SuiteReport {
    let start = Instant::now();
    let body = match (&job.command, &job.t) {
        (Command::Classify, t) => {
            let sample = match t {
                TSpec::Value(r) if cfg.classify.params.is_none() && cfg.command == "all" => suites::sample_classify_input(r),
                _ => None,
            };
            suites::classify(cfg.classify.verify_elimination, cfg.classify.params.as_ref().or(sample.as_ref()))
        }
        (Command::ShapeDims | Command::Koszul, TSpec::Value(r)) if cfg.mod_p => modular_body(job, cfg, r),
        (_, TSpec::Value(r)) => body_over::<Rational>(job, cfg, r),
        (_, TSpec::Symbolic) => body_over::<RatFunc>(job, cfg, &RatFunc::t()),
    };
    SuiteReport {
        suite: job.command.name().to_string(),
        family: job.family.map(|f| f.label().to_string()),
        t: job.t.to_string(),
        field: field_label(job, cfg),
        elapsed_ms: start.elapsed().as_millis().to_string(),
        checks: body.checks,
        data: body.data,
        text: body.text,
    }
}

/// Runs every job concurrently and assembles the report in job order.
pub fn run(cfg: &RunConfig) -> Result<RunReport, ConfigError> {
    cfg.validate()?;
    if cfg.suites.contains(&Command::Classify) && cfg.command != "all" && !cfg.classify.verify_elimination && cfg.classify.params.is_none() {
        return Err(ConfigError::Usage("classify needs --verify-elimination or the six parameters".into()));
    }
    let jobs = jobs(cfg);
    let suites = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|j| s.spawn(move || run_job(j, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect::<Vec<_>>()
    });
    Ok(RunReport::new(cfg.command.clone(), cfg.echo(), suites))
}
