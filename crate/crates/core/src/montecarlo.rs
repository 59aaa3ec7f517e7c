//! Seeded sampling of random point sets and permutations, and Monte Carlo
//! estimates of `P(max(lis, lds) >= ell)`.
//!
//! Trial `i` of an experiment with master seed `s` draws from its own
//! ChaCha8 stream seeded with [`trial_seed`]`(s, i)`. Tallies are plain sums,
//! so reports are bit-identical for any worker count.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, LATTICE_BITS};
use crate::permutations::{lds, lis, perm_of, stirling_chain, theorem_threshold, union_bound, Permutation};
use crate::Execution;

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    /// Uniform lattice points in the unit square, reduced through `perm_of`.
    Points,
    /// Uniform permutations drawn directly.
    #[serde(rename = "perm")]
    Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub m: usize,
    pub ell: usize,
    pub trials: u64,
    pub master_seed: u64,
    pub mode: SampleMode,
}

impl TrialConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.m == 0 || self.ell == 0 {
            return Err(Error::Precondition(format!(
                "need trials >= 1, m >= 1, ell >= 1 (got trials={}, m={}, ell={})",
                self.trials, self.m, self.ell
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bounds {
    /// `min(1, C(m,ell) 2/ell!)`.
    pub union: f64,
    /// `2 * 4^-ell`, present when `ell >= 2e sqrt(m)`.
    pub claim3: Option<f64>,
    /// `8 * 4^(-n/12)`, present for threshold experiments.
    pub tail: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub config: TrialConfig,
    pub hits: u64,
    pub trials: u64,
    pub empirical_p: f64,
    pub wilson95: [f64; 2],
    pub bounds: Bounds,
    pub vacuous: bool,
    /// Fraction of trials with `max(lis, lds) < ell`, i.e. where the
    /// non-universality certificate fires.
    pub certificate_rate: f64,
    pub mean_max_monotone: f64,
    /// Universality parameter for threshold experiments.
    pub n: Option<u64>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index`: `splitmix64(splitmix64(master) ^ index)`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index)
}

fn sample_points_with(m: usize, side: i64, rng: &mut impl Rng) -> Vec<Point> {
    assert!(
        m as i64 <= side + 1,
        "lattice too small for {m} distinct coordinates"
    );
    let mut xs = HashSet::with_capacity(m);
    let mut ys = HashSet::with_capacity(m);
    let mut points = Vec::with_capacity(m);
    while points.len() < m {
        let p = Point::new(rng.gen_range(0..=side), rng.gen_range(0..=side));
        if xs.contains(&p.x) || ys.contains(&p.y) {
            continue;
        }
        xs.insert(p.x);
        ys.insert(p.y);
        points.push(p);
    }
    points
}

/// `m` uniform points of the `2^40` lattice on the unit square with pairwise
/// distinct x and y coordinates (ties are redrawn).
pub fn sample_point_set(m: usize, seed: u64) -> Vec<Point> {
    sample_points_with(m, 1i64 << LATTICE_BITS, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_permutation_with(m: usize, rng: &mut impl Rng) -> Permutation {
    let mut values: Vec<u32> = (1..=m as u32).collect();
    // Fisher-Yates; gen_range rejects to avoid modulo bias.
    for i in (1..m).rev() {
        let j = rng.gen_range(0..=i);
        values.swap(i, j);
    }
    Permutation::from_vec_unchecked(values)
}

pub fn sample_permutation(m: usize, seed: u64) -> Permutation {
    sample_permutation_with(m, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// 95% Wilson score interval for `hits` successes out of `trials`.
pub fn wilson_interval(hits: u64, trials: u64) -> [f64; 2] {
    assert!(trials > 0 && hits <= trials);
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    [(center - half).clamp(0.0, p), (center + half).clamp(p, 1.0)]
}

/// Longest monotone subsequence length of one trial.
fn trial_statistic(mode: SampleMode, m: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perm = match mode {
        SampleMode::Points => perm_of(&sample_points_with(m, 1i64 << LATTICE_BITS, &mut rng))
            .expect("sampled coordinates are distinct"),
        SampleMode::Permutation => sample_permutation_with(m, &mut rng),
    };
    lis(&perm).max(lds(&perm))
}

fn bounds_for(m: u64, ell: u64, n: Option<u64>) -> Result<Bounds> {
    let union = union_bound(m, ell)?.capped.to_f64().unwrap_or(0.0);
    let chain = stirling_chain(m, ell)?;
    let claim3 = chain.steps.iter().find(|s| s.name == "claim").map(|s| s.value);
    let tail = n.map(theorem_threshold).transpose()?.map(|t| t.tail);
    Ok(Bounds { union, claim3, tail })
}

pub fn run_trials(cfg: &TrialConfig) -> Result<McReport> {
    run_trials_with(cfg, Execution::default())
}

pub fn run_trials_with(cfg: &TrialConfig, exec: Execution) -> Result<McReport> {
    cfg.validate()?;
    let (mode, m, ell, master) = (cfg.mode, cfg.m, cfg.ell, cfg.master_seed);
    let (hits, total) = exec.map_reduce(
        cfg.trials,
        |i| {
            let longest = trial_statistic(mode, m, trial_seed(master, i));
            (u64::from(longest >= ell), longest as u64)
        },
        (0u64, 0u64),
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    let empirical_p = hits as f64 / cfg.trials as f64;
    Ok(McReport {
        config: cfg.clone(),
        hits,
        trials: cfg.trials,
        empirical_p,
        wilson95: wilson_interval(hits, cfg.trials),
        bounds: bounds_for(m as u64, ell as u64, None)?,
        vacuous: false,
        certificate_rate: (cfg.trials - hits) as f64 / cfg.trials as f64,
        mean_max_monotone: total as f64 / cfg.trials as f64,
        n: None,
    })
}

/// Sample at the threshold `m = floor((n/48e)^2)`, `ell = floor(n/12)`, in
/// points mode. `m_override` replaces the threshold size for demonstrations
/// outside the proven regime.
///
/// With `m = 0` there is nothing to sample: the report is flagged vacuous
/// and every trial trivially certifies.
pub fn theorem1_experiment(
    n: u64,
    trials: u64,
    master_seed: u64,
    m_override: Option<usize>,
    exec: Execution,
) -> Result<McReport> {
    if n < 12 {
        return Err(Error::Precondition(format!(
            "theorem experiment needs n >= 12, got {n}"
        )));
    }
    let threshold = theorem_threshold(n)?;
    let m = m_override.unwrap_or(threshold.m_max as usize);
    let ell = (n / 12) as usize;
    let cfg = TrialConfig {
        m,
        ell,
        trials,
        master_seed,
        mode: SampleMode::Points,
    };
    if m == 0 {
        if trials == 0 {
            return Err(Error::Precondition("need trials >= 1".into()));
        }
        return Ok(McReport {
            config: cfg,
            hits: 0,
            trials,
            empirical_p: 0.0,
            wilson95: wilson_interval(0, trials),
            bounds: bounds_for(0, ell as u64, Some(n))?,
            vacuous: true,
            certificate_rate: 1.0,
            mean_max_monotone: 0.0,
            n: Some(n),
        });
    }
    let mut report = run_trials_with(&cfg, exec)?;
    report.bounds.tail = Some(threshold.tail);
    report.n = Some(n);
    Ok(report)
}
