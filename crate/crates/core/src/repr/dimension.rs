use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::det_rational;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::signature::{interlacing_signatures, Signature};

/// `prod_{i<j} (l_i - l_j) / (j - i)` in shifted coordinates.
pub fn weyl_dimension(lambda: &Signature) -> BigInt {
    let l = lambda.shifted();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= BigInt::from(l[i] - l[j]);
            den *= BigInt::from((j - i) as i64);
        }
    }
    num / den
}

fn int_pow(x: &Rational, e: i64) -> Rational {
    num_traits::pow::Pow::pow(x, e as i32)
}

/// `s_lambda(x)`: bialternant ratio when the `x_i` are distinct, pattern sum otherwise.
pub fn schur_eval(lambda: &Signature, x: &[Rational]) -> Result<Rational> {
    let n = lambda.len();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let negative = lambda.parts()[n - 1] < 0;
    if negative && x.iter().any(|v| v.is_zero()) {
        return Err(Error::InvalidParameter(
            "negative exponents need nonzero arguments".into(),
        ));
    }
    let distinct = (0..n).all(|i| (i + 1..n).all(|j| x[i] != x[j]));
    if !distinct {
        return Ok(schur_polynomial(lambda).eval(x));
    }
    let l = lambda.shifted();
    let num: Vec<Vec<Rational>> = x
        .iter()
        .map(|xi| l.iter().map(|&e| int_pow(xi, e)).collect())
        .collect();
    let den: Vec<Vec<Rational>> = x
        .iter()
        .map(|xi| (0..n).map(|j| int_pow(xi, (n - 1 - j) as i64)).collect())
        .collect();
    Ok(det_rational(num) / det_rational(den))
}

/// `s_lambda(x_1..x_N)` expanded over Gelfand-Tsetlin patterns.
pub fn schur_polynomial(lambda: &Signature) -> Poly {
    let mut memo = BTreeMap::new();
    schur_rec(lambda, &mut memo)
}

fn schur_rec(lambda: &Signature, memo: &mut BTreeMap<Signature, Poly>) -> Poly {
    if let Some(p) = memo.get(lambda) {
        return p.clone();
    }
    let n = lambda.len();
    let p = if n == 1 {
        Poly::monomial(alloc::vec![lambda.parts()[0] as i32], Rational::one())
    } else {
        let mut acc = Poly::zero(n);
        for mu in interlacing_signatures(lambda) {
            let lower = schur_rec(&mu, memo);
            let top = (lambda.size() - mu.size()) as i32;
            for (e, c) in lower.terms() {
                let mut ee = e.clone();
                ee.push(top);
                acc.add_term(ee, c.clone());
            }
        }
        acc
    };
    memo.insert(lambda.clone(), p.clone());
    p
}
