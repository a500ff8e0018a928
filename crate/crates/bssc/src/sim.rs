//! Reproducible Monte-Carlo random-access experiments.
//!
//! Each trial draws distinct codewords uniformly, fades them with i.i.d.
//! circular complex Gaussian coefficients, superposes, decodes, and scores
//! per-user and per-trial error counts. Trial `t` consumes an independent
//! RNG stream derived from `(seed, t)`, so results are identical under any
//! parallel schedule and any worker count.

use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::codebook::{bc_id_range, bc_size, codebook_size, random_codebook, BsscParams};
use crate::decoder::{decode_multi_exhaustive, decode_multi_with_ranks, ExhaustiveCodebook, ReceivedSignal};
use crate::error::{Error, Result};

const WILSON_Z: f64 = 1.959963984540054;
const DENSE_CODEBOOK_BYTE_LIMIT: u64 = 1_500_000_000;

/// Which codebook the active users draw their signatures from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodebookKind {
    Bssc,
    Bc,
    Random,
}

impl CodebookKind {
    pub fn name(self) -> &'static str {
        match self {
            CodebookKind::Bssc => "bssc",
            CodebookKind::Bc => "bc",
            CodebookKind::Random => "random",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "bssc" => Ok(CodebookKind::Bssc),
            "bc" => Ok(CodebookKind::Bc),
            "random" => Ok(CodebookKind::Random),
            other => Err(Error::Config(format!("unknown codebook kind '{other}'"))),
        }
    }
}

/// Which reconstruction runs at the receiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    /// Rank-hypothesis matching pursuit on Pauli spectra. For the
    /// binary-chirp codebook the rank loop collapses to the full-rank
    /// hypothesis.
    Structured,
    /// Matching pursuit with exhaustive correlation scans.
    Exhaustive,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Structured => "structured",
            DecoderKind::Exhaustive => "exhaustive",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "structured" => Ok(DecoderKind::Structured),
            "exhaustive" => Ok(DecoderKind::Exhaustive),
            other => Err(Error::Config(format!("unknown decoder kind '{other}'"))),
        }
    }
}

/// One experiment configuration.
#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub m: usize,
    pub users: usize,
    pub trials: u64,
    pub seed: u64,
    pub codebook: CodebookKind,
    pub decoder: DecoderKind,
    /// Complex noise variance per dimension; 0 is the noiseless setting.
    pub noise_variance: f64,
    /// Measure wall-clock decode time. Off by default: timing is the one
    /// non-reproducible statistic, and deterministic output wins.
    pub measure_time: bool,
}

impl TrialConfig {
    pub fn new(m: usize, users: usize, trials: u64, seed: u64) -> Self {
        TrialConfig {
            m,
            users,
            trials,
            seed,
            codebook: CodebookKind::Bssc,
            decoder: DecoderKind::Structured,
            noise_variance: 0.0,
            measure_time: false,
        }
    }
}

/// Aggregated results of one configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub trials: u64,
    pub users_total: u64,
    pub per_user_errors: u64,
    pub per_trial_errors: u64,
    pub per_user_error_prob: f64,
    pub per_trial_error_prob: f64,
    /// 95% Wilson interval on the per-user error probability.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Mean decode wall time in microseconds; 0 unless timing was enabled.
    pub mean_decode_us: f64,
}

/// 95% Wilson score interval for `errors` out of `total` Bernoulli draws.
pub fn wilson_interval(errors: u64, total: u64) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let n = total as f64;
    let p = errors as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    // The boundary cases are exact; don't let rounding smear them.
    let low = if errors == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if errors == total { 1.0 } else { (center + half).min(1.0) };
    (low, high)
}

/// A circular complex Gaussian draw with unit variance.
pub(crate) fn sample_cn01(rng: &mut ChaCha12Rng) -> Complex64 {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * scale, im * scale)
}

/// The RNG stream of one trial: stream 0 is reserved for codebook
/// construction, trials use streams `1..`.
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial + 1);
    rng
}

/// Distinct uniform indices in `0..size`, drawn by rejection.
pub(crate) fn draw_distinct(rng: &mut ChaCha12Rng, count: usize, size: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.random_range(0..size);
        if !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// The signature vectors of one codebook realization.
enum Atoms {
    /// Parametrized codewords addressed by global id.
    Bssc { m: usize },
    /// Binary chirps addressed by slice-local index.
    Bc { m: usize },
    /// Materialized unit-norm vectors addressed by list index.
    Dense(Vec<Vec<Complex64>>),
}

impl Atoms {
    fn size(&self) -> u64 {
        match self {
            Atoms::Bssc { m } => codebook_size(*m),
            Atoms::Bc { m } => bc_size(*m),
            Atoms::Dense(list) => list.len() as u64,
        }
    }

    fn vector(&self, index: u64) -> Vec<Complex64> {
        match self {
            Atoms::Bssc { m } => BsscParams::from_id(*m, index)
                .expect("index in range")
                .codeword()
                .to_complex(),
            Atoms::Bc { m } => {
                let id = bc_id_range(*m).start + index;
                BsscParams::from_id(*m, id)
                    .expect("index in range")
                    .codeword()
                    .to_complex()
            }
            Atoms::Dense(list) => list[index as usize].clone(),
        }
    }
}

fn realize_atoms(cfg: &TrialConfig) -> Result<Atoms> {
    let n = 1u64 << cfg.m;
    match cfg.codebook {
        CodebookKind::Bssc => Ok(Atoms::Bssc { m: cfg.m }),
        CodebookKind::Bc => {
            if cfg.decoder == DecoderKind::Exhaustive {
                let bytes = bc_size(cfg.m) * n * 16;
                if bytes > DENSE_CODEBOOK_BYTE_LIMIT {
                    return Err(Error::Config(format!(
                        "exhaustive bc codebook at m={} needs {bytes} bytes; \
                         reduce m or use the structured decoder",
                        cfg.m
                    )));
                }
            }
            Ok(Atoms::Bc { m: cfg.m })
        }
        CodebookKind::Random => {
            let size = codebook_size(cfg.m);
            let bytes = size * n * 16;
            if bytes > DENSE_CODEBOOK_BYTE_LIMIT {
                return Err(Error::Config(format!(
                    "random codebook at m={} has {size} vectors ({bytes} bytes); \
                     infeasible to materialize",
                    cfg.m
                )));
            }
            if cfg.decoder == DecoderKind::Structured {
                return Err(Error::Config(
                    "random codebooks have no algebraic structure; use the exhaustive decoder"
                        .into(),
                ));
            }
            Ok(Atoms::Dense(random_codebook(cfg.m, size, cfg.seed)))
        }
    }
}

/// Outcome of one trial.
struct TrialOutcome {
    user_misses: u64,
    any_miss: bool,
    decode_nanos: u64,
}

fn run_one_trial(cfg: &TrialConfig, atoms: &Atoms, trial: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(cfg.seed, trial);
    let transmitted = draw_distinct(&mut rng, cfg.users, atoms.size());
    let coefficients: Vec<Complex64> =
        (0..cfg.users).map(|_| sample_cn01(&mut rng)).collect();

    let n = 1usize << cfg.m;
    let mut samples = vec![Complex64::new(0.0, 0.0); n];
    for (&idx, h) in transmitted.iter().zip(&coefficients) {
        for (target, a) in samples.iter_mut().zip(atoms.vector(idx)) {
            *target += h * a;
        }
    }
    if cfg.noise_variance > 0.0 {
        let sigma = cfg.noise_variance.sqrt();
        for target in samples.iter_mut() {
            *target += sample_cn01(&mut rng) * sigma;
        }
    }
    let signal = ReceivedSignal::new(samples)?;

    let started = cfg.measure_time.then(Instant::now);
    let recovered: Vec<u64> = match (cfg.decoder, atoms) {
        (DecoderKind::Structured, Atoms::Bssc { .. }) => {
            let ranks: Vec<usize> = (0..=cfg.m).collect();
            let (result, _) = decode_multi_with_ranks(&signal, cfg.users, &ranks)?;
            result.recovered.iter().map(BsscParams::id).collect()
        }
        (DecoderKind::Structured, Atoms::Bc { m }) => {
            let (result, _) = decode_multi_with_ranks(&signal, cfg.users, &[cfg.m])?;
            let range = bc_id_range(*m);
            result
                .recovered
                .iter()
                .map(|p| {
                    let id = p.id();
                    if range.contains(&id) {
                        id - range.start
                    } else {
                        u64::MAX
                    }
                })
                .collect()
        }
        (DecoderKind::Structured, Atoms::Dense(_)) => unreachable!("rejected in realize_atoms"),
        (DecoderKind::Exhaustive, atoms) => {
            let codebook = match atoms {
                Atoms::Bssc { m } => ExhaustiveCodebook::Bssc { m: *m },
                Atoms::Bc { m } => {
                    // Materialize per decode is wasteful; exhaustive bc runs
                    // share one dense list via realize-once below.
                    unreachable!("bc exhaustive uses a dense list, m={m}")
                }
                Atoms::Dense(list) => ExhaustiveCodebook::Dense(list),
            };
            decode_multi_exhaustive(&signal, &codebook, cfg.users)?.indices
        }
    };
    let decode_nanos = started.map_or(0, |t| t.elapsed().as_nanos() as u64);

    let user_misses = transmitted
        .iter()
        .filter(|idx| !recovered.contains(idx))
        .count() as u64;
    Ok(TrialOutcome {
        user_misses,
        any_miss: user_misses > 0,
        decode_nanos,
    })
}

/// Runs the configured Monte-Carlo experiment. Deterministic for a given
/// config regardless of thread count; trials run in parallel.
pub fn run_trials(cfg: &TrialConfig) -> Result<TrialStats> {
    if cfg.trials == 0 {
        return Err(Error::Config("at least one trial required".into()));
    }
    if cfg.users == 0 {
        return Err(Error::Config("at least one user required".into()));
    }
    if cfg.m == 0 || cfg.m > crate::codebook::MAX_INDEXED_DIM {
        return Err(Error::Config(format!(
            "simulation draws codewords by index and supports m in 1..={}, got {}",
            crate::codebook::MAX_INDEXED_DIM,
            cfg.m
        )));
    }
    if !(cfg.noise_variance >= 0.0) {
        return Err(Error::Config("noise variance must be non-negative".into()));
    }
    let mut atoms = realize_atoms(cfg)?;
    // Exhaustive binary-chirp baselines scan a dense slice.
    if cfg.decoder == DecoderKind::Exhaustive {
        if let Atoms::Bc { m } = atoms {
            let dense: Vec<Vec<Complex64>> = bc_id_range(m)
                .map(|id| {
                    BsscParams::from_id(m, id)
                        .expect("id in range")
                        .codeword()
                        .to_complex()
                })
                .collect();
            atoms = Atoms::Dense(dense);
        }
    }
    if (cfg.users as u64) > atoms.size() {
        return Err(Error::Config(format!(
            "{} users exceed the codebook size {}",
            cfg.users,
            atoms.size()
        )));
    }

    let outcomes: Result<Vec<TrialOutcome>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_one_trial(cfg, &atoms, t))
        .collect();
    let outcomes = outcomes?;

    let per_user_errors: u64 = outcomes.iter().map(|o| o.user_misses).sum();
    let per_trial_errors: u64 = outcomes.iter().filter(|o| o.any_miss).count() as u64;
    let total_nanos: u64 = outcomes.iter().map(|o| o.decode_nanos).sum();
    let users_total = cfg.trials * cfg.users as u64;
    let (ci_low, ci_high) = wilson_interval(per_user_errors, users_total);

    Ok(TrialStats {
        trials: cfg.trials,
        users_total,
        per_user_errors,
        per_trial_errors,
        per_user_error_prob: per_user_errors as f64 / users_total as f64,
        per_trial_error_prob: per_trial_errors as f64 / cfg.trials as f64,
        ci_low,
        ci_high,
        mean_decode_us: if cfg.measure_time {
            total_nanos as f64 / cfg.trials as f64 / 1000.0
        } else {
            0.0
        },
    })
}

/// Runs a list of configurations, keeping per-row failures so one bad row
/// does not abort the sweep.
pub fn sweep(configs: &[TrialConfig]) -> Vec<(TrialConfig, Result<TrialStats>)> {
    configs
        .iter()
        .map(|cfg| (cfg.clone(), run_trials(cfg)))
        .collect()
}

/// The stats CSV header.
pub const STATS_CSV_HEADER: &str = "m,L,codebook,decoder,noise_var,trials,per_user_err,\
per_trial_err,per_user_p,per_trial_p,ci_lo,ci_hi,mean_decode_us,seed";

/// Writes one stats row per configuration, RFC-4180 with LF endings.
pub fn write_stats_csv<W: Write>(
    rows: &[(TrialConfig, TrialStats)],
    out: &mut W,
) -> Result<()> {
    writeln!(out, "{STATS_CSV_HEADER}")?;
    for (cfg, stats) in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            cfg.m,
            cfg.users,
            cfg.codebook.name(),
            cfg.decoder.name(),
            cfg.noise_variance,
            stats.trials,
            stats.per_user_errors,
            stats.per_trial_errors,
            stats.per_user_error_prob,
            stats.per_trial_error_prob,
            stats.ci_low,
            stats.ci_high,
            stats.mean_decode_us,
            cfg.seed,
        )?;
    }
    Ok(())
}
