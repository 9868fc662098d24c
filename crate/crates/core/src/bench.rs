//! Wall-clock scaling of the decider.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decider::Decider;
use crate::error::{Error, Result};
use crate::genset::{GeneratingSet, Word};
use crate::lab::{random_identity_word, random_word};

/// Which inputs to time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WordFamily {
    /// Uniform random words; almost all are non-trivial and exit at an early rotation.
    Random,
    /// `u·u⁻¹`: always trivial, so every rotation and every point is tried.
    Identity,
}

impl FromStr for WordFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(WordFamily::Random),
            "identity" => Ok(WordFamily::Identity),
            _ => Err(Error::Usage(format!("unknown word family {s:?} (expected random or identity)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub mean_secs: f64,
    pub median_secs: f64,
    pub trivial: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub family: WordFamily,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(mean time) against log(n).
    pub slope_mean: Option<f64>,
    pub slope_median: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two usable points.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let m = xs.len() / 2;
    if xs.len().is_multiple_of(2) {
        (xs[m - 1] + xs[m]) / 2.0
    } else {
        xs[m]
    }
}

fn make_word(gamma: &GeneratingSet, n: usize, family: WordFamily, rng: &mut ChaCha8Rng) -> Result<Word> {
    match family {
        WordFamily::Random => Ok(random_word(gamma, n, rng)),
        WordFamily::Identity => random_identity_word(gamma, n / 2, rng)
            .ok_or_else(|| Error::Usage("identity family needs a generating set closed under inverses".into())),
    }
}

/// Times `wp_decide` over `trials` fresh words per length; one warmup run per length is discarded.
pub fn run_bench(
    decider: &Decider,
    lengths: &[usize],
    trials: usize,
    seed: u64,
    family: WordFamily,
) -> Result<BenchReport> {
    let gamma = decider.gamma();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    if trials > 0 {
        for &n in lengths {
            let warm = make_word(gamma, n, family, &mut rng)?;
            decider.wp_decide(&warm)?;
            let mut times = Vec::with_capacity(trials);
            let mut trivial = 0;
            for _ in 0..trials {
                let w = make_word(gamma, n, family, &mut rng)?;
                let idx = gamma.resolve(&w)?;
                let t0 = Instant::now();
                let verdict = decider.cowp_decide_indices(&idx)?;
                times.push(t0.elapsed().as_secs_f64());
                trivial += usize::from(verdict.is_none());
            }
            let mean = times.iter().sum::<f64>() / trials as f64;
            rows.push(BenchRow { n, trials, mean_secs: mean, median_secs: median(&mut times), trivial });
        }
    }
    let slope_mean = fit_loglog_slope(&rows.iter().map(|r| (r.n as f64, r.mean_secs)).collect::<Vec<_>>());
    let slope_median = fit_loglog_slope(&rows.iter().map(|r| (r.n as f64, r.median_secs)).collect::<Vec<_>>());
    Ok(BenchReport { family, seed, rows, slope_mean, slope_median })
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>8} {:>7} {:>14} {:>14} {:>8}", "n", "trials", "mean", "median", "trivial");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>8} {:>7} {:>14?} {:>14?} {:>8}",
                r.n,
                r.trials,
                Duration::from_secs_f64(r.mean_secs),
                Duration::from_secs_f64(r.median_secs),
                r.trivial
            );
        }
        let fmt = |s: Option<f64>| s.map_or("n/a".to_string(), |v| format!("{v:.3}"));
        let _ = writeln!(out, "log-log slope: mean {}, median {}", fmt(self.slope_mean), fmt(self.slope_median));
        out
    }
}
