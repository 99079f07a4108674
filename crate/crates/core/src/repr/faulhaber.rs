use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::binomial;

/// `S_j(n) = sum_{m=0}^{n} m^j` for `j = 0..=jmax`, extended polynomially to every integer `n`.
pub fn power_sums(jmax: usize, n: &BigInt) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(jmax + 1);
    let n1 = n + BigInt::one();
    let mut p = n1.clone();
    for j in 0..=jmax {
        // (n+1)^{j+1} = sum_{i<=j} C(j+1, i) S_i(n)
        let mut acc = p.clone();
        for (i, si) in s.iter().enumerate() {
            acc -= binomial(j as u64 + 1, i as u64) * si;
        }
        debug_assert!((&acc % BigInt::from(j + 1)).is_zero());
        s.push(acc / BigInt::from(j + 1));
        p *= &n1;
    }
    s
}

/// `sum_{m=p}^{q} m^j` for `j = 0..=jmax`; empty ranges give zeros.
pub fn interval_power_sums(jmax: usize, p: i64, q: i64) -> Vec<BigInt> {
    if q < p {
        return alloc::vec![BigInt::zero(); jmax + 1];
    }
    let hi = power_sums(jmax, &BigInt::from(q));
    let lo = power_sums(jmax, &BigInt::from(p - 1));
    hi.into_iter().zip(lo).map(|(a, b)| a - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct(j: u32, p: i64, q: i64) -> BigInt {
        (p..=q).map(|m| BigInt::from(m).pow(j)).sum()
    }

    #[test]
    fn known_values() {
        let s = interval_power_sums(3, 1, 10);
        assert_eq!(s[0], BigInt::from(10));
        assert_eq!(s[1], BigInt::from(55));
        assert_eq!(s[2], BigInt::from(385));
        assert_eq!(s[3], BigInt::from(3025));
    }

    proptest! {
        #[test]
        fn matches_direct_sums(p in -40i64..40, len in 0i64..30, j in 0usize..7) {
            let q = p + len - 1;
            let s = interval_power_sums(j, p, q);
            for (i, v) in s.iter().enumerate() {
                prop_assert_eq!(v.clone(), direct(i as u32, p, q));
            }
        }
    }
}
