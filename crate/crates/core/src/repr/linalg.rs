use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Fraction-free (Bareiss) determinant.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Gaussian elimination over the rationals.
pub fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let p = match (k..n).find(|&r| !m[r][k].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= y * &f;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn small_determinants() {
        let m = |v: &[&[i64]]| -> Vec<Vec<BigInt>> {
            v.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        assert_eq!(det_bigint(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            det_bigint(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])),
            BigInt::from(6)
        );
        assert_eq!(det_bigint(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        let r: Vec<Vec<Rational>> = alloc::vec![
            alloc::vec![int(2), int(0), int(1)],
            alloc::vec![int(1), int(3), int(2)],
            alloc::vec![int(1), int(1), int(2)],
        ];
        assert_eq!(det_rational(r), int(6));
    }
}
