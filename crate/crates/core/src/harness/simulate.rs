use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cooling::{run_cooling, RunOptions, DEFAULT_STEP_CAP};
use crate::error::{Error, Result};
use crate::sampler::{sample_natural, sample_uniform_bridge, worst_case_config};
use crate::word::Configuration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Worst,
    Uniform,
    Natural,
    Word,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Worst => "worst",
            Mode::Uniform => "uniform",
            Mode::Natural => "natural",
            Mode::Word => "word",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "worst" => Ok(Mode::Worst),
            "uniform" => Ok(Mode::Uniform),
            "natural" => Ok(Mode::Natural),
            "word" => Ok(Mode::Word),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

/// One simulated convergence time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: usize,
    pub mode: Mode,
    pub replicate: usize,
    pub seed: u64,
    #[serde(rename = "T")]
    pub t: u64,
    /// Left empty unless wall-clock recording was requested, so that the
    /// CSV stays reproducible byte for byte.
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SimulateConfig {
    pub mode: Mode,
    /// Starting word for [`Mode::Word`].
    pub word: Option<Configuration>,
    /// Word lengths to simulate.
    pub n_list: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub step_cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub record_wall_time: bool,
}

impl SimulateConfig {
    pub fn new(mode: Mode, n_list: Vec<usize>, reps: usize, seed: u64) -> Self {
        SimulateConfig {
            mode,
            word: None,
            n_list,
            reps,
            seed,
            step_cap: DEFAULT_STEP_CAP,
            threads: None,
            record_wall_time: false,
        }
    }

    fn lengths(&self) -> Result<Vec<usize>> {
        if self.reps == 0 {
            return Err(Error::InvalidArgument("reps must be at least 1".into()));
        }
        let lengths = match (self.mode, &self.word) {
            (Mode::Word, None) => {
                return Err(Error::InvalidArgument(
                    "word mode needs a starting word".into(),
                ))
            }
            (Mode::Word, Some(w)) => {
                if self.n_list.iter().any(|&n| n != w.len()) {
                    return Err(Error::InvalidArgument(format!(
                        "word mode: n-list must be empty or equal to the word length {}",
                        w.len()
                    )));
                }
                vec![w.len()]
            }
            _ => self.n_list.clone(),
        };
        if lengths.is_empty() {
            return Err(Error::InvalidArgument("empty n-list".into()));
        }
        for &n in &lengths {
            if n % 2 != 0 {
                return Err(Error::OddLength(n));
            }
            if n < 2 && self.mode != Mode::Word {
                return Err(Error::LengthTooSmall { len: n, min: 2 });
            }
        }
        Ok(lengths)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one replicate, a hash of `(master, n, replicate)`.
pub fn derive_seed(master: u64, n: usize, replicate: usize) -> u64 {
    let a = splitmix64(master);
    let b = splitmix64(a ^ n as u64);
    splitmix64(b ^ (replicate as u64).rotate_left(32))
}

fn run_replicate(cfg: &SimulateConfig, n: usize, replicate: usize) -> Result<RunRecord> {
    let seed = derive_seed(cfg.seed, n, replicate);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let w0 = match cfg.mode {
        Mode::Worst => worst_case_config(n)?,
        Mode::Uniform => sample_uniform_bridge(n, &mut rng)?,
        Mode::Natural => sample_natural(n, &mut rng)?,
        Mode::Word => cfg.word.clone().expect("checked in lengths()"),
    };
    let opts = RunOptions {
        step_cap: cfg.step_cap,
        trace: None,
    };
    let run = run_cooling(&w0, &mut rng, opts)?;
    Ok(RunRecord {
        n,
        mode: cfg.mode,
        replicate,
        seed,
        t: run.steps,
        wall_time_s: cfg.record_wall_time.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Runs every `(n, replicate)` pair in parallel. Records come back sorted by
/// `n` and replicate, independent of scheduling.
pub fn simulate(cfg: &SimulateConfig) -> Result<Vec<RunRecord>> {
    let lengths = cfg.lengths()?;
    let jobs: Vec<(usize, usize)> = lengths
        .iter()
        .flat_map(|&n| (0..cfg.reps).map(move |r| (n, r)))
        .collect();
    let work = || {
        jobs.par_iter()
            .map(|&(n, r)| run_replicate(cfg, n, r))
            .collect::<Result<Vec<_>>>()
    };
    let mut records = match cfg.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    records.sort_by_key(|r| (r.n, r.replicate));
    Ok(records)
}

/// Writes records with the header `n,mode,replicate,seed,T,wall_time_s`.
pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(["n", "mode", "replicate", "seed", "T", "wall_time_s"])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .map(|rec| rec.map_err(Error::from))
        .collect()
}

/// Per-length statistics of the convergence time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthSummary {
    pub n: usize,
    pub reps: usize,
    #[serde(rename = "mean_T")]
    pub mean_t: f64,
    #[serde(rename = "std_T")]
    pub std_t: f64,
    #[serde(rename = "stderr_T")]
    pub stderr_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub mode: Mode,
    /// `worst-case-candidate` for worst mode: `1^{n/2} 2^{n/2}` is only
    /// presumed to maximize the expected convergence time.
    pub label: String,
    pub master_seed: u64,
    pub per_n: Vec<LengthSummary>,
}

/// Mean and sample standard deviation per `n`, in increasing `n`.
pub fn summarize(records: &[RunRecord]) -> Vec<LengthSummary> {
    let mut lengths: Vec<usize> = records.iter().map(|r| r.n).collect();
    lengths.sort_unstable();
    lengths.dedup();
    lengths
        .into_iter()
        .map(|n| {
            let ts: Vec<f64> = records
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.t as f64)
                .collect();
            let k = ts.len() as f64;
            let mean = ts.iter().sum::<f64>() / k;
            let var = if ts.len() > 1 {
                ts.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            LengthSummary {
                n,
                reps: ts.len(),
                mean_t: mean,
                std_t: var.sqrt(),
                stderr_t: (var / k).sqrt(),
            }
        })
        .collect()
}

pub fn summary_for(cfg: &SimulateConfig, records: &[RunRecord]) -> SimulationSummary {
    let label = match cfg.mode {
        Mode::Worst => "worst-case-candidate".to_string(),
        Mode::Uniform => "uniform-average".to_string(),
        Mode::Natural => "natural-average".to_string(),
        Mode::Word => format!(
            "word:{}",
            cfg.word.as_ref().map(|w| w.to_string()).unwrap_or_default()
        ),
    };
    SimulationSummary {
        mode: cfg.mode,
        label,
        master_seed: cfg.seed,
        per_n: summarize(records),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_four_is_deterministic() {
        let cfg = SimulateConfig::new(Mode::Worst, vec![4], 100, 9);
        let recs = simulate(&cfg).unwrap();
        assert_eq!(recs.len(), 100);
        assert!(recs.iter().all(|r| r.t == 1));
    }

    #[test]
    fn uniform_two_is_zero() {
        let cfg = SimulateConfig::new(Mode::Uniform, vec![2], 100, 1);
        assert!(simulate(&cfg).unwrap().iter().all(|r| r.t == 0));
    }

    #[test]
    fn rejects_bad_configs() {
        assert_eq!(
            simulate(&SimulateConfig::new(Mode::Worst, vec![5], 3, 0)),
            Err(Error::OddLength(5))
        );
        assert!(simulate(&SimulateConfig::new(Mode::Worst, vec![4], 0, 0)).is_err());
        assert!(simulate(&SimulateConfig::new(Mode::Word, vec![], 3, 0)).is_err());
        let mut cfg = SimulateConfig::new(Mode::Word, vec![6], 3, 0);
        cfg.word = Some("1122".parse().unwrap());
        assert!(simulate(&cfg).is_err());
    }

    #[test]
    fn word_mode() {
        let mut cfg = SimulateConfig::new(Mode::Word, vec![], 5, 0);
        cfg.word = Some("1221".parse().unwrap());
        let recs = simulate(&cfg).unwrap();
        assert!(recs.iter().all(|r| r.t == 1 && r.n == 4));
        assert!(summary_for(&cfg, &recs).label.contains("1221"));
    }

    #[test]
    fn seeds_differ() {
        let s: std::collections::HashSet<_> = (0..50)
            .flat_map(|r| [4usize, 6].map(|n| derive_seed(7, n, r)))
            .collect();
        assert_eq!(s.len(), 100);
        assert_ne!(derive_seed(1, 4, 0), derive_seed(2, 4, 0));
    }

    #[test]
    fn summary_stats() {
        let recs: Vec<_> = [2u64, 4, 6]
            .iter()
            .enumerate()
            .map(|(i, &t)| RunRecord {
                n: 10,
                mode: Mode::Worst,
                replicate: i,
                seed: 0,
                t,
                wall_time_s: None,
            })
            .collect();
        let s = summarize(&recs);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mean_t, 4.0);
        assert_eq!(s[0].std_t, 2.0);
        assert!((s[0].stderr_t - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn csv_header_and_read_back() {
        let cfg = SimulateConfig::new(Mode::Worst, vec![6], 2, 3);
        let recs = simulate(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,mode,replicate,seed,T,wall_time_s\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    }
}
