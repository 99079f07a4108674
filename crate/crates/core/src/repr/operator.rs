use super::branching::{branching_law, DEFAULT_ENUMERATION_CAP};
use super::dimension::{schur_polynomial, weyl_dimension};
use crate::error::{Error, Result};
use crate::poly::{vandermonde, Poly};
use crate::rational::{int, Rational};
use crate::signature::Signature;

/// `V^{-1} o sum_i (x_i d/dx_i)^k o V` applied to `f`, with `V` the Vandermonde.
pub fn apply_power_sum_operator(n: usize, k: u32, f: &Poly) -> Result<Poly> {
    if f.nvars() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: f.nvars(),
        });
    }
    let v = vandermonde(n);
    let g = v.mul(f).map_terms(|e| {
        e.iter().fold(Rational::from_integer(0.into()), |acc, &a| {
            acc + crate::rational::pow(&int(a as i64), k)
        })
    });
    g.div_exact(&v)
}

/// `sum_i (lambda_i + N - i)^k`, the eigenvalue of the operator on `s_lambda`.
pub fn eigenvalue(lambda: &Signature, k: u32) -> Rational {
    lambda
        .shifted()
        .into_iter()
        .map(|l| crate::rational::pow(&int(l), k))
        .sum()
}

/// Check `sum_mu P(mu|lambda) s_mu(x) / dim mu = s_lambda(x, 1) / dim lambda`.
pub fn verify_projection_sgf(lambda: &Signature) -> Result<bool> {
    if lambda.len() < 2 {
        return Err(Error::InvalidSignature("projection needs N >= 2".into()));
    }
    let law = branching_law(lambda, DEFAULT_ENUMERATION_CAP)?;
    let mut lhs = Poly::zero(lambda.len() - 1);
    for (mu, p) in law.entries() {
        let w = p / Rational::from_integer(weyl_dimension(mu));
        lhs = lhs.add(&schur_polynomial(mu).scale(&w));
    }
    let rhs = schur_polynomial(lambda).drop_last_at_one().scale(
        &(Rational::from_integer(1.into()) / Rational::from_integer(weyl_dimension(lambda))),
    );
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenfunctions_in_two_variables() {
        let l = Signature::new(alloc::vec![2, 0]).unwrap();
        let s = schur_polynomial(&l);
        for k in 0..4 {
            let out = apply_power_sum_operator(2, k, &s).unwrap();
            assert_eq!(out, s.scale(&eigenvalue(&l, k)));
        }
        assert!(apply_power_sum_operator(3, 1, &s).is_err());
    }

    #[test]
    fn projection_identity() {
        assert!(verify_projection_sgf(&Signature::new(alloc::vec![2, 1, 0]).unwrap()).unwrap());
        assert!(verify_projection_sgf(&Signature::new(alloc::vec![1, -1]).unwrap()).unwrap());
        assert!(verify_projection_sgf(&Signature::new(alloc::vec![1]).unwrap()).is_err());
    }
}
