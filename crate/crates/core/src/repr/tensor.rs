use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::branching::SignatureLaw;
use super::dimension::{schur_polynomial, weyl_dimension};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::signature::Signature;

/// Largest total degree accepted by [`tensor_product_law`] after shifting to nonnegative signatures.
pub const DEFAULT_DEGREE_CAP: i64 = 40;

/// Law of the irreducible component of a uniformly random vector in the tensor
/// product, weighted by `multiplicity * dim`. Computed by multiplying Schur
/// polynomials and peeling off leading terms.
pub fn tensor_product_law(factors: &[Signature], degree_cap: i64) -> Result<SignatureLaw> {
    let n = match factors.first() {
        Some(f) => f.len(),
        None => return Err(Error::InvalidParameter("no tensor factors".into())),
    };
    if let Some(f) = factors.iter().find(|f| f.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let shifts: Vec<i64> = factors.iter().map(|f| (-f.parts()[n - 1]).max(0)).collect();
    let shifted: Vec<Signature> = factors
        .iter()
        .zip(&shifts)
        .map(|(f, &c)| f.shift_by(c))
        .collect();
    let degree: i64 = shifted.iter().map(|f| f.size()).sum();
    if degree > degree_cap {
        return Err(Error::EnumerationCap {
            count: degree as u128,
            cap: degree_cap as u128,
        });
    }
    let mut product = Poly::one(n);
    let mut total_dim = Rational::one();
    for f in &shifted {
        product = product.mul(&schur_polynomial(f));
        total_dim *= Rational::from_integer(weyl_dimension(f));
    }
    let back: i64 = shifts.iter().sum();
    let mut entries = Vec::new();
    while let Some((e, c)) = product.leading_term() {
        let kappa = Signature::new(e.iter().map(|&v| v as i64).collect())
            .map_err(|_| Error::InvalidParameter("leading exponent is not dominant".into()))?;
        let m = c.clone();
        if m.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "negative multiplicity at {kappa}"
            )));
        }
        product = product.sub(&schur_polynomial(&kappa).scale(&m));
        let p = m * Rational::from_integer(weyl_dimension(&kappa)) / &total_dim;
        entries.push((kappa.shift_by(-back), p));
    }
    debug_assert!(product.is_zero());
    if entries.iter().all(|(_, p)| p.is_zero()) {
        return Err(Error::InvalidParameter("empty decomposition".into()));
    }
    SignatureLaw::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sig(p: &[i64]) -> Signature {
        Signature::new(p.to_vec()).unwrap()
    }

    #[test]
    fn square_of_standard() {
        let law = tensor_product_law(&[sig(&[1, 0]), sig(&[1, 0])], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(law.prob(&sig(&[2, 0])), rat(3, 4));
        assert_eq!(law.prob(&sig(&[1, 1])), rat(1, 4));
    }

    #[test]
    fn dual_times_standard() {
        // V (x) V* = trivial + adjoint for U(3)
        let law =
            tensor_product_law(&[sig(&[1, 0, 0]), sig(&[0, 0, -1])], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(law.prob(&sig(&[0, 0, 0])), rat(1, 9));
        assert_eq!(law.prob(&sig(&[1, 0, -1])), rat(8, 9));
    }

    #[test]
    fn single_factor_and_errors() {
        let law = tensor_product_law(&[sig(&[2, 1, 0])], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(law.entries().len(), 1);
        assert!(tensor_product_law(&[], DEFAULT_DEGREE_CAP).is_err());
        assert!(tensor_product_law(&[sig(&[1, 0]), sig(&[1])], DEFAULT_DEGREE_CAP).is_err());
        assert!(tensor_product_law(&[sig(&[30, 0]), sig(&[30, 0])], DEFAULT_DEGREE_CAP).is_err());
    }
}
