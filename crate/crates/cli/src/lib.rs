//! Seeded verification harness: samples Drinfeld modules over a parameter
//! grid, runs the checks on each and reports one record per module.

pub mod checks;
pub mod report;
pub mod sample;

use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use drinfeld_core::{frobenius_charpoly_direct, minimal_polynomial, Caps, CharPoly, DrinfeldModule, Error};
use rayon::prelude::*;

pub use checks::{Check, Subject, Verdict};
pub use report::{Format, ReportRecord, Sink, RECORD_SCHEMA};
pub use sample::{sample_module, sample_modules};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Skipped = 3,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of<'a>(records: impl IntoIterator<Item = &'a ReportRecord>) -> Outcome {
        let (mut failed, mut skipped) = (false, false);
        for rec in records {
            failed |= rec.failed();
            skipped |= rec.skipped();
        }
        if failed {
            Outcome::Fail
        } else if skipped {
            Outcome::Skipped
        } else {
            Outcome::Pass
        }
    }
}

/// "3" or "1:3".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<usize>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Span, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span(lo..=hi))
    }
}

/// "all" or a comma list of check names.
pub fn parse_checks(s: &str) -> Result<Vec<Check>, String> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut checks = s
        .split(',')
        .map(|t| t.trim().parse::<Check>())
        .collect::<Result<Vec<_>, _>>()?;
    checks.sort();
    checks.dedup();
    if checks.is_empty() {
        return Err("no checks selected".into());
    }
    Ok(checks)
}

/// A parsed `--checks` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckList(pub Vec<Check>);

impl FromStr for CheckList {
    type Err = String;

    fn from_str(s: &str) -> Result<CheckList, String> {
        parse_checks(s).map(CheckList)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub q: u64,
    pub n: RangeInclusive<usize>,
    pub r: RangeInclusive<usize>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub format: Format,
    pub caps: Caps,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Whether records carry wall-clock timings; off gives byte-identical output.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            q: 2,
            n: 1..=1,
            r: 1..=1,
            samples: 1,
            seed: 0,
            checks: Check::ALL.to_vec(),
            format: Format::Json,
            caps: Caps::default(),
            jobs: None,
            timing: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        drinfeld_core::Fq::get(self.q).map_err(|e| ConfigError(format!("q={}: {e}", self.q)))?;
        for (name, range) in [("n", &self.n), ("r", &self.r)] {
            if range.is_empty() || *range.start() == 0 || *range.end() > 255 {
                return Err(ConfigError(format!("{name} range {range:?} must be nonempty within 1..=255")));
            }
        }
        if self.samples == 0 || self.samples > sample::MAX_SAMPLES {
            return Err(ConfigError(format!("samples must lie in 1..={}", sample::MAX_SAMPLES)));
        }
        if self.checks.is_empty() {
            return Err(ConfigError("no checks selected".into()));
        }
        if self.jobs == Some(0) {
            return Err(ConfigError("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Work items (n, r, sample index) in output order.
    fn items(&self) -> Vec<(usize, usize, usize)> {
        let mut items = Vec::new();
        for n in self.n.clone() {
            for r in self.r.clone() {
                items.extend((0..self.samples).map(|i| (n, r, i)));
            }
        }
        items
    }
}

/// Runs the checks on one module. `charpoly` overrides the direct Frobenius
/// polynomial (and then also stands in for the minimal polynomial).
pub fn check_module(
    phi: &DrinfeldModule,
    charpoly: Option<CharPoly>,
    checks: &[Check],
    caps: &Caps,
    seed: u64,
    index: usize,
    timing: bool,
) -> ReportRecord {
    let start = Instant::now();
    let computed: Result<(CharPoly, CharPoly), Error> = match charpoly {
        Some(p) => Ok((p.clone(), p)),
        None => frobenius_charpoly_direct(phi)
            .and_then(|p| Ok((p, minimal_polynomial(phi, &phi.frobenius())?))),
    };
    let (char_prime, d) = phi.characteristic();
    let (charpoly, minpoly, verdicts) = match &computed {
        Ok((p, m)) => {
            let subject = Subject { phi, charpoly: p, minpoly: m, caps, seed, index };
            (p.to_string(), m.to_string(), subject.run(checks))
        }
        Err(e) => {
            let v = Verdict::from_error(e);
            (String::new(), String::new(), checks.iter().map(|&c| (c, v.clone())).collect())
        }
    };
    ReportRecord {
        q: phi.q(),
        n: phi.n(),
        r: phi.rank(),
        seed,
        sample: index,
        g: phi.phi_t().to_string(),
        p: char_prime.to_string(),
        d,
        height: phi.height(),
        charpoly,
        minpoly,
        checks: verdicts.into_iter().collect(),
        ms: if timing { start.elapsed().as_millis() as u64 } else { 0 },
    }
}

/// Samples and checks every module of the grid, writing records in grid
/// order. Returns the run's outcome.
pub fn run<W: Write>(config: &RunConfig, out: W) -> Result<Outcome, ConfigError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| ConfigError(e.to_string()))?;
    let mut sink = Sink::new(config.format, out, &config.checks);
    let io = |e: std::io::Error| ConfigError(format!("write failed: {e}"));
    let mut outcome = Outcome::Pass;
    let items = config.items();
    // records are produced in parallel a chunk at a time and emitted in order
    for chunk in items.chunks(64) {
        let records: Vec<Result<ReportRecord, ConfigError>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&(n, r, i)| {
                    let phi = sample_module(config.q, n, r, config.seed, i)?;
                    Ok(check_module(&phi, None, &config.checks, &config.caps, config.seed, i, config.timing))
                })
                .collect()
        });
        for rec in records {
            let rec = rec?;
            outcome = match (outcome, Outcome::of([&rec])) {
                (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
                (Outcome::Skipped, _) | (_, Outcome::Skipped) => Outcome::Skipped,
                _ => Outcome::Pass,
            };
            sink.write(&rec).map_err(io)?;
        }
    }
    sink.flush().map_err(io)?;
    Ok(outcome)
}
