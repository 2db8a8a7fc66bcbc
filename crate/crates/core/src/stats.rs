//! Small statistics toolkit for experiment verdicts: moments,
//! Kolmogorov–Smirnov tests, log-log regression and binomial bands.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum sample size accepted by the KS tests.
pub const KS_MIN_SAMPLE: usize = 20;

fn ensure_finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Stats(format!("non-finite entry in {what}")))
    }
}

/// Error function, accurate to about `1e-15` in absolute terms.
///
/// Uses the positive-term series
/// `erf x = (2/√π) e^{−x²} Σ_n 2ⁿ x^{2n+1} / (1·3·…·(2n+1))`, which has no
/// cancellation, and saturates at `±1` beyond `|x| = 6`.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = x.abs();
    if a >= 6.0 {
        return x.signum();
    }
    let x2 = a * a;
    let mut term = a;
    let mut sum = a;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= 2.0 * x2 / (2.0 * k + 1.0);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    let value = (2.0 / PI.sqrt() * (-x2).exp() * sum).min(1.0);
    value.copysign(x)
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / SQRT_2))
}

/// Sample mean and unbiased (`n − 1`) covariance of vectors of equal length.
pub fn mean_and_covariance(sample: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if sample.len() < 2 {
        return Err(Error::Stats(format!(
            "covariance needs at least 2 observations, got {}",
            sample.len()
        )));
    }
    let dim = sample[0].len();
    if dim == 0 || sample.iter().any(|row| row.len() != dim) {
        return Err(Error::Stats("observations of unequal length".into()));
    }
    for row in sample {
        ensure_finite(row, "sample")?;
    }
    let n = sample.len() as f64;
    let mut mean = vec![0.0; dim];
    for row in sample {
        for (m, x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut cov = vec![vec![0.0; dim]; dim];
    for row in sample {
        for r in 0..dim {
            let dr = row[r] - mean[r];
            for s in r..dim {
                cov[r][s] += dr * (row[s] - mean[s]);
            }
        }
    }
    for r in 0..dim {
        for s in r..dim {
            cov[r][s] /= n - 1.0;
            cov[s][r] = cov[r][s];
        }
    }
    Ok((mean, cov))
}

/// Sample mean and unbiased variance of a scalar sample.
pub fn mean_and_variance(sample: &[f64]) -> Result<(f64, f64)> {
    let rows: Vec<Vec<f64>> = sample.iter().map(|&x| vec![x]).collect();
    let (mean, cov) = mean_and_covariance(&rows)?;
    Ok((mean[0], cov[0][0]))
}

pub fn median(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::Stats("median of an empty sample".into()));
    }
    ensure_finite(sample, "sample")?;
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Ok(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Asymptotic Kolmogorov survival function `Q(λ) = P(K > λ)`.
///
/// Series are truncated once a term drops below `1e-10`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let q = if lambda < 1.18 {
        let mut sum = 0.0;
        for k in 1.. {
            let j = (2 * k - 1) as f64;
            let term = (-j * j * PI * PI / (8.0 * lambda * lambda)).exp();
            sum += term;
            if term < 1e-10 {
                break;
            }
        }
        1.0 - (2.0 * PI).sqrt() / lambda * sum
    } else {
        let mut sum = 0.0;
        for k in 1.. {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < 1e-10 {
                break;
            }
        }
        2.0 * sum
    };
    q.clamp(0.0, 1.0)
}

fn ks_p_value(effective_n: f64, d: f64) -> f64 {
    let root = effective_n.sqrt();
    kolmogorov_survival((root + 0.12 + 0.11 / root) * d)
}

/// One-sample KS test of `sample` against `N(mu, sigma²)`.
pub fn ks_test_normal(sample: &[f64], mu: f64, sigma: f64) -> Result<KsResult> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Stats(format!("sigma must be positive, got {sigma}")));
    }
    if sample.len() < KS_MIN_SAMPLE {
        return Err(Error::Stats(format!(
            "KS test needs at least {KS_MIN_SAMPLE} observations, got {}",
            sample.len()
        )));
    }
    ensure_finite(sample, "sample")?;
    let mut z: Vec<f64> = sample.iter().map(|x| (x - mu) / sigma).collect();
    z.sort_by(f64::total_cmp);
    let n = z.len() as f64;
    let mut d = 0.0_f64;
    for (i, &zi) in z.iter().enumerate() {
        let f = normal_cdf(zi);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(KsResult {
        statistic: d,
        p_value: ks_p_value(n, d),
    })
}

/// Relative gap below which two observations count as tied.
pub const TIE_REL_TOL: f64 = 1e-12;

/// Two-sample KS test; ties are handled by evaluating both empirical CDFs
/// after each distinct value.
///
/// Values within `TIE_REL_TOL · (1 + |t|)` of the smallest remaining value
/// `t` form one tie group, so lattice-valued statistics that differ only by
/// rounding are not split.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.len() < KS_MIN_SAMPLE || b.len() < KS_MIN_SAMPLE {
        return Err(Error::Stats(format!(
            "two-sample KS needs at least {KS_MIN_SAMPLE} observations per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    ensure_finite(a, "first sample")?;
    ensure_finite(b, "second sample")?;
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0_f64;
    while i < n && j < m {
        let t0 = xs[i].min(ys[j]);
        let t = t0 + TIE_REL_TOL * (1.0 + t0.abs());
        while i < n && xs[i] <= t {
            i += 1;
        }
        while j < m && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let effective = (n * m) as f64 / (n + m) as f64;
    Ok(KsResult {
        statistic: d,
        p_value: ks_p_value(effective, d),
    })
}

/// Ordinary least squares of `log y` on `log x`; returns `(slope, intercept)`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::Stats("xs and ys differ in length".into()));
    }
    if xs.len() < 3 {
        return Err(Error::Stats("log-log regression needs at least 3 points".into()));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::Stats("log-log regression needs positive entries".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Stats("log-log regression needs distinct xs".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// `|k − np| ≤ 3 √(np(1 − p)) + 0.5`
pub fn binomial_band(n: u64, p: f64, k: u64) -> bool {
    let nf = n as f64;
    let mean = nf * p;
    let sd = (nf * p * (1.0 - p)).max(0.0).sqrt();
    (k as f64 - mean).abs() <= 3.0 * sd + 0.5
}
