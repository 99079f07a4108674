//! Monte-Carlo and exact checks of the law of large numbers for projection chains.

use alloc::format;
use alloc::vec::Vec;

use crate::asymptotics::dmk_m_to_d;
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::repr::{
    finite_d_moment, finite_m_moment, level_rng, projection_chain, tensor_product_law,
    CotransitionMethod, SignatureLaw, DEFAULT_DEGREE_CAP, DEFAULT_ENUMERATION_CAP,
};
use crate::signature::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `lambda = 0`: every projection is deterministic.
    Trivial,
    /// `lambda(N) = (K, ..., K, 0, ..., 0)` with `K = N/2` copies of `K`, projected to level `K`.
    BlockStaircase,
    /// The `N`-th tensor power of the defining representation of `U(N)`, computed exactly.
    TensorPower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub kmax: usize,
    pub seed: u64,
    pub method: CotransitionMethod,
    pub batches: usize,
    pub z: f64,
    /// Largest `N` at which the exact law is also computed by enumeration.
    pub exact_max_n: usize,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        ConvergenceConfig {
            family: Family::BlockStaircase,
            sizes: alloc::vec![8, 16, 32, 64],
            samples: 2000,
            kmax: 3,
            seed: 0,
            method: CotransitionMethod::Auto,
            batches: 20,
            z: 3.0,
            exact_max_n: 8,
        }
    }
}

/// Minimum number of samples per jackknife batch.
pub const MIN_BATCH_SIZE: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct LevelReport {
    pub n: usize,
    /// Level at which the counting measure is read.
    pub level: usize,
    pub m_hat: Vec<f64>,
    pub d_hat: Vec<f64>,
    /// `dmk_m_to_d(m_hat)`.
    pub d_pred: Vec<f64>,
    /// `|d_hat - d_pred|`.
    pub error: Vec<f64>,
    /// Jackknife standard errors of `d_hat - d_pred`; zero for exact families.
    pub sigma: Vec<f64>,
    /// Exact `(m, d)` expectations when enumeration was feasible.
    pub exact: Option<(Vec<f64>, Vec<f64>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub family: Family,
    pub levels: Vec<LevelReport>,
    /// Per `k`, whether the error strictly decreases along `sizes`; `true` at `k = 0`.
    pub decreasing: Vec<bool>,
    /// Per `k`, whether the last error lies within `z` standard errors.
    /// Exact families have no sampling noise, so this holds vacuously for them.
    pub final_within: Vec<bool>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.decreasing.iter().chain(&self.final_within).all(|&b| b)
    }
}

fn block(n: usize) -> Result<Signature> {
    let k = (n / 2) as i64;
    Signature::new((0..n).map(|i| if (i as i64) < k { k } else { 0 }).collect())
}

fn start(family: Family, n: usize) -> Result<(Signature, usize)> {
    match family {
        Family::Trivial => Ok((Signature::zero(n)?, n / 2)),
        Family::BlockStaircase => Ok((block(n)?, n / 2)),
        Family::TensorPower => Err(Error::InvalidParameter("tensor family has no chain".into())),
    }
}

/// `int x^k m[mu]` and `int x^k d[mu, nu]` for `k <= kmax`, both normalized by `len(mu)`.
fn statistics(mu: &Signature, nu: &Signature, kmax: usize) -> (Vec<f64>, Vec<f64>) {
    let n = mu.len() as f64;
    let x: Vec<f64> = mu.shifted().iter().map(|&v| v as f64 / n).collect();
    let y: Vec<f64> = nu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v + mu.len() as i64 - 2 - i as i64) as f64 / n)
        .collect();
    let mut m = Vec::with_capacity(kmax + 1);
    let mut d = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax as i32 {
        m.push(x.iter().map(|v| libm::pow(*v, k as f64)).sum::<f64>() / n);
        d.push(
            x.iter().map(|v| libm::pow(*v, k as f64)).sum::<f64>()
                - y.iter().map(|v| libm::pow(*v, k as f64)).sum::<f64>(),
        );
    }
    (m, d)
}

fn mean(rows: &[(Vec<f64>, Vec<f64>)], kmax: usize) -> (Vec<f64>, Vec<f64>) {
    let c = rows.len() as f64;
    let mut m = alloc::vec![0.0; kmax + 1];
    let mut d = alloc::vec![0.0; kmax + 1];
    for (rm, rd) in rows {
        for k in 0..=kmax {
            m[k] += rm[k] / c;
            d[k] += rd[k] / c;
        }
    }
    (m, d)
}

fn defect(m: &[f64], d: &[f64]) -> Result<Vec<f64>> {
    let pred = dmk_m_to_d(m)?;
    Ok(d.iter().zip(&pred).map(|(a, b)| a - b).collect())
}

fn jackknife(rows: &[(Vec<f64>, Vec<f64>)], batches: usize, kmax: usize) -> Result<Vec<f64>> {
    let size = rows.len() / batches;
    let used = &rows[..size * batches];
    let mut thetas = Vec::with_capacity(batches);
    for b in 0..batches {
        let rest: Vec<(Vec<f64>, Vec<f64>)> = used
            .iter()
            .enumerate()
            .filter(|(i, _)| i / size != b)
            .map(|(_, r)| r.clone())
            .collect();
        let (m, d) = mean(&rest, kmax);
        thetas.push(defect(&m, &d)?);
    }
    let bf = batches as f64;
    Ok((0..=kmax)
        .map(|k| {
            let avg = thetas.iter().map(|t| t[k]).sum::<f64>() / bf;
            let ss = thetas
                .iter()
                .map(|t| (t[k] - avg) * (t[k] - avg))
                .sum::<f64>();
            libm::sqrt((bf - 1.0) / bf * ss)
        })
        .collect())
}

fn exact_moments(law: &SignatureLaw, kmax: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = (0..=kmax as u32)
        .map(|k| to_f64(&finite_m_moment(law, k)))
        .collect();
    let d = (0..=kmax as u32)
        .map(|k| finite_d_moment(law, k, DEFAULT_ENUMERATION_CAP).map(|r| to_f64(&r)))
        .collect::<Result<Vec<f64>>>()?;
    Ok((m, d))
}

fn exact_level(lambda: &Signature, level: usize, kmax: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut law = SignatureLaw::delta(lambda.clone());
    while law.n() > level {
        law = law.project(DEFAULT_ENUMERATION_CAP)?;
    }
    exact_moments(&law, kmax)
}

fn report(
    n: usize,
    level: usize,
    m: Vec<f64>,
    d: Vec<f64>,
    sigma: Vec<f64>,
    exact: Option<(Vec<f64>, Vec<f64>)>,
) -> Result<LevelReport> {
    let d_pred = dmk_m_to_d(&m)?;
    let error = d.iter().zip(&d_pred).map(|(a, b)| (a - b).abs()).collect();
    Ok(LevelReport {
        n,
        level,
        m_hat: m,
        d_hat: d,
        d_pred,
        error,
        sigma,
        exact,
    })
}

fn sampled_level(cfg: &ConvergenceConfig, n: usize) -> Result<LevelReport> {
    let (lambda, level) = start(cfg.family, n)?;
    if level < 2 {
        return Err(Error::InvalidParameter(format!(
            "N = {n} is too small for a d-measure"
        )));
    }
    let mut rows = Vec::with_capacity(cfg.samples);
    for s in 0..cfg.samples {
        let mut rng = level_rng(cfg.seed, n as u64, s as u64);
        let chain = projection_chain(&lambda, level - 1, cfg.method, &mut rng)?;
        let (mu, nu) = (&chain[chain.len() - 2], &chain[chain.len() - 1]);
        rows.push(statistics(mu, nu, cfg.kmax));
    }
    let (m, d) = mean(&rows, cfg.kmax);
    let sigma = jackknife(&rows, cfg.batches, cfg.kmax)?;
    let exact = if n <= cfg.exact_max_n {
        Some(exact_level(&lambda, level, cfg.kmax)?)
    } else {
        None
    };
    report(n, level, m, d, sigma, exact)
}

fn tensor_level(cfg: &ConvergenceConfig, n: usize) -> Result<LevelReport> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "N = {n} is too small for a d-measure"
        )));
    }
    let mut v = alloc::vec![0i64; n];
    v[0] = 1;
    let factors = alloc::vec![Signature::new(v)?; n];
    let law = tensor_product_law(&factors, DEFAULT_DEGREE_CAP)?;
    let (m, d) = exact_moments(&law, cfg.kmax)?;
    let sigma = alloc::vec![0.0; cfg.kmax + 1];
    report(n, n, m.clone(), d.clone(), sigma, Some((m, d)))
}

/// Run the family at each size and summarize the trend of the relation defect.
pub fn run_convergence(cfg: &ConvergenceConfig) -> Result<ConvergenceReport> {
    if cfg.sizes.is_empty() {
        return Err(Error::InvalidParameter("no sizes given".into()));
    }
    let sampled = matches!(cfg.family, Family::BlockStaircase);
    if sampled && (cfg.batches < 2 || cfg.samples < cfg.batches * MIN_BATCH_SIZE) {
        return Err(Error::InvalidParameter(format!(
            "{} samples are too few for {} batches of at least {MIN_BATCH_SIZE}",
            cfg.samples, cfg.batches
        )));
    }
    if !(cfg.z > 0.0) {
        return Err(Error::InvalidParameter("z must be positive".into()));
    }
    let mut levels = Vec::with_capacity(cfg.sizes.len());
    for &n in &cfg.sizes {
        let r = match cfg.family {
            Family::TensorPower => tensor_level(cfg, n)?,
            Family::Trivial => {
                let (lambda, level) = start(cfg.family, n)?;
                if level < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "N = {n} is too small for a d-measure"
                    )));
                }
                let (m, d) = exact_level(&lambda, level, cfg.kmax)?;
                report(
                    n,
                    level,
                    m.clone(),
                    d.clone(),
                    alloc::vec![0.0; cfg.kmax + 1],
                    Some((m, d)),
                )?
            }
            Family::BlockStaircase => sampled_level(cfg, n)?,
        };
        log::debug!("N = {n}: error {:?}", r.error);
        levels.push(r);
    }
    let decreasing = (0..=cfg.kmax)
        .map(|k| k == 0 || levels.windows(2).all(|p| p[1].error[k] < p[0].error[k]))
        .collect();
    let last = &levels[levels.len() - 1];
    let final_within = (0..=cfg.kmax)
        .map(|k| !sampled || last.error[k] <= cfg.z * last.sigma[k] || last.error[k] == 0.0)
        .collect();
    Ok(ConvergenceReport {
        family: cfg.family,
        levels,
        decreasing,
        final_within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_family_is_deterministic() {
        let cfg = ConvergenceConfig {
            family: Family::Trivial,
            sizes: alloc::vec![4, 8, 16],
            ..Default::default()
        };
        let r = run_convergence(&cfg).unwrap();
        assert!(r.passed());
        for l in &r.levels {
            let k = l.level as f64;
            assert!((l.d_hat[1] - (k - 1.0) / k).abs() < 1e-12);
            assert!((l.error[1] - 0.5 / k).abs() < 1e-12);
            assert_eq!(l.error[0], 0.0);
        }
    }

    #[test]
    fn small_block_matches_enumeration() {
        let cfg = ConvergenceConfig {
            sizes: alloc::vec![6],
            samples: 4000,
            kmax: 2,
            exact_max_n: 6,
            ..Default::default()
        };
        let r = run_convergence(&cfg).unwrap();
        let l = &r.levels[0];
        let (m, d) = l.exact.clone().unwrap();
        for k in 1..=2 {
            assert!(
                (l.m_hat[k] - m[k]).abs() < 0.05 * m[k].abs().max(1.0),
                "{k}"
            );
            assert!(
                (l.d_hat[k] - d[k]).abs() < 0.05 * d[k].abs().max(1.0),
                "{k}"
            );
        }
    }

    #[test]
    fn too_few_samples_rejected() {
        let cfg = ConvergenceConfig {
            samples: 50,
            ..Default::default()
        };
        assert!(run_convergence(&cfg).is_err());
    }
}
