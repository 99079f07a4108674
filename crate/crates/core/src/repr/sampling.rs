use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::faulhaber::interval_power_sums;
use super::linalg::det_bigint;
use crate::error::{Error, Result};
use crate::signature::Signature;

/// Largest `N` for which [`CotransitionMethod::Auto`] uses the exact sampler.
pub const EXACT_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CotransitionMethod {
    /// Sequential inverse-CDF sampling with exact big-integer weights.
    Exact,
    /// Integer parts of the corner eigenvalues of a randomly rotated `diag(lambda~)`.
    ContinuousLift,
    /// `Exact` up to [`EXACT_MAX_N`], `ContinuousLift` beyond.
    Auto,
}

/// Independent generator for sample `sample` at level `level` under `seed`.
pub fn level_rng(seed: u64, level: u64, sample: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ level.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(sample);
    rng
}

/// One draw from the branching law of `lambda`.
pub fn cotransition_sample<R: Rng + ?Sized>(lambda: &Signature, rng: &mut R) -> Result<Signature> {
    cotransition_sample_with(lambda, CotransitionMethod::Auto, rng)
}

pub fn cotransition_sample_with<R: Rng + ?Sized>(
    lambda: &Signature,
    method: CotransitionMethod,
    rng: &mut R,
) -> Result<Signature> {
    if lambda.len() < 2 {
        return Err(Error::InvalidSignature("cannot project below N = 1".into()));
    }
    let x = lambda.shifted();
    let mu_shifted = match method {
        CotransitionMethod::Exact => sample_exact(&x, rng),
        CotransitionMethod::ContinuousLift => sample_lift(&x, rng),
        CotransitionMethod::Auto if lambda.len() <= EXACT_MAX_N => sample_exact(&x, rng),
        CotransitionMethod::Auto => sample_lift(&x, rng),
    };
    Signature::from_shifted(&mu_shifted)
}

/// Signatures from `lambda` (length `N`) down to length `target`, inclusive.
pub fn projection_chain<R: Rng + ?Sized>(
    lambda: &Signature,
    target: usize,
    method: CotransitionMethod,
    rng: &mut R,
) -> Result<Vec<Signature>> {
    if target == 0 || target > lambda.len() {
        return Err(Error::InvalidParameter(format!(
            "target level {target} outside 1..={}",
            lambda.len()
        )));
    }
    let mut chain = alloc::vec![lambda.clone()];
    while chain[chain.len() - 1].len() > target {
        let next = cotransition_sample_with(&chain[chain.len() - 1], method, rng)?;
        chain.push(next);
    }
    Ok(chain)
}

fn uniform_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    let bits = bound.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let excess = (nbytes as u64) * 8 - bits;
    let mut buf = alloc::vec![0u8; nbytes];
    loop {
        rng.fill_bytes(&mut buf);
        if let Some(last) = buf.last_mut() {
            *last &= 0xFFu8 >> excess;
        }
        let v = BigUint::from_bytes_le(&buf);
        if &v < bound {
            return v;
        }
    }
}

/// Exact sequential sampler. The weight of `m` is the Vandermonde `det[m_i^j]`,
/// which is linear in each row; later rows are summed out through power sums.
fn sample_exact<R: Rng + ?Sized>(x: &[i64], rng: &mut R) -> Vec<i64> {
    let n = x.len() - 1;
    let intervals: Vec<(i64, i64)> = (0..n).map(|i| (x[i + 1], x[i] - 1)).collect();
    let mut rows: Vec<Vec<BigInt>> = intervals
        .iter()
        .map(|&(p, q)| interval_power_sums(n - 1, p, q))
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = intervals[i];
        let mut cof: Vec<BigInt> = (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let d = det_bigint(minor);
                if (i + j) % 2 == 1 {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let cdf = |t: i64, cof: &[BigInt]| -> BigInt {
            interval_power_sums(n - 1, lo, t)
                .iter()
                .zip(cof)
                .map(|(s, c)| s * c)
                .sum()
        };
        let mut total = cdf(hi, &cof);
        if total.is_negative() {
            cof.iter_mut().for_each(|c| *c = -c.clone());
            total = -total;
        }
        let value = if lo == hi {
            lo
        } else {
            let bound = total.to_biguint().expect("positive total weight");
            let u = BigInt::from_biguint(Sign::Plus, uniform_below(&bound, rng));
            // smallest t with cdf(t) > u
            let (mut a, mut b) = (lo, hi);
            while a < b {
                let mid = a + (b - a) / 2;
                if cdf(mid, &cof) > u {
                    b = mid;
                } else {
                    a = mid + 1;
                }
            }
            a
        };
        debug_assert!(!total.is_zero());
        let mut row = Vec::with_capacity(n);
        let mut p = BigInt::from(1);
        for _ in 0..n {
            row.push(p.clone());
            p *= value;
        }
        rows[i] = row;
        out.push(value);
    }
    out
}

/// The roots of `sum_k e_k / (z - x_k)` with i.i.d. exponential `e_k` interlace
/// with `x` and have density proportional to their Vandermonde; their floors
/// follow the discrete branching law.
fn sample_lift<R: Rng + ?Sized>(x: &[i64], rng: &mut R) -> Vec<i64> {
    let e: Vec<f64> = x
        .iter()
        .map(|_| -libm::log(1.0 - rng.random::<f64>()))
        .collect();
    let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
    let f = |m: i64| -> f64 {
        let z = m as f64;
        e.iter().zip(&xf).map(|(w, xk)| w / (z - xk)).sum()
    };
    (0..x.len() - 1)
        .map(|i| {
            let (mut lo, mut hi) = (x[i + 1], x[i] - 1);
            while lo < hi {
                let mid = lo + (hi - lo + 1) / 2;
                if f(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            lo
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::branching::{branching_law, DEFAULT_ENUMERATION_CAP};
    use crate::signature::interlaces;
    use alloc::collections::BTreeMap;

    fn sig(p: &[i64]) -> Signature {
        Signature::new(p.to_vec()).unwrap()
    }

    fn check_law(lambda: &Signature, method: CotransitionMethod, draws: usize) {
        let law = branching_law(lambda, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut rng = level_rng(7, lambda.len() as u64, 0);
        let mut counts: BTreeMap<Signature, usize> = BTreeMap::new();
        for _ in 0..draws {
            let mu = cotransition_sample_with(lambda, method, &mut rng).unwrap();
            assert!(interlaces(lambda, &mu).unwrap());
            *counts.entry(mu).or_default() += 1;
        }
        for (mu, p) in law.entries() {
            let p = crate::rational::to_f64(p);
            let f = *counts.get(mu).unwrap_or(&0) as f64 / draws as f64;
            let sd = (p * (1.0 - p) / draws as f64).sqrt();
            assert!((f - p).abs() <= 4.5 * sd + 1e-12, "{mu}: {f} vs {p}");
        }
    }

    #[test]
    fn exact_sampler_matches_law() {
        check_law(&sig(&[3, 1, 0]), CotransitionMethod::Exact, 20_000);
        check_law(&sig(&[2, 2, -1, -1]), CotransitionMethod::Exact, 20_000);
    }

    #[test]
    fn lift_sampler_matches_law() {
        check_law(&sig(&[3, 1, 0]), CotransitionMethod::ContinuousLift, 20_000);
        check_law(
            &sig(&[4, 2, 2, 0]),
            CotransitionMethod::ContinuousLift,
            20_000,
        );
    }

    #[test]
    fn deterministic_given_seed() {
        let l = sig(&[5, 3, 1, 0, 0]);
        let a =
            projection_chain(&l, 1, CotransitionMethod::Exact, &mut level_rng(1, 5, 3)).unwrap();
        let b =
            projection_chain(&l, 1, CotransitionMethod::Exact, &mut level_rng(1, 5, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(
            projection_chain(&l, 0, CotransitionMethod::Exact, &mut level_rng(1, 5, 3)).is_err()
        );
        assert!(cotransition_sample(&sig(&[1]), &mut level_rng(1, 1, 0)).is_err());
    }

    #[test]
    fn trivial_signature_projects_to_zero() {
        let mut rng = level_rng(3, 40, 0);
        let chain = projection_chain(
            &Signature::zero(40).unwrap(),
            20,
            CotransitionMethod::Auto,
            &mut rng,
        )
        .unwrap();
        assert_eq!(chain[chain.len() - 1], Signature::zero(20).unwrap());
    }
}
