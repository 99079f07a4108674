use num_traits::Zero;

use super::branching::{branching_law, SignatureLaw};
use crate::error::{Error, Result};
use crate::measure::{counting_measure, difference_measure, Moments};
use crate::rational::Rational;
use crate::signature::InterlacingPair;

/// `E int x^k m[lambda](dx)` for `lambda` drawn from `law`.
pub fn finite_m_moment(law: &SignatureLaw, k: u32) -> Rational {
    law.entries().iter().fold(Rational::zero(), |acc, (l, p)| {
        acc + p * counting_measure(l).moment(k)
    })
}

/// `E int x^k d[lambda, mu](dx)` for `lambda ~ law` and `mu` from the branching law of `lambda`.
pub fn finite_d_moment(law: &SignatureLaw, k: u32, cap: u128) -> Result<Rational> {
    if law.n() < 2 {
        return Err(Error::InvalidSignature("d-moments need N >= 2".into()));
    }
    let mut acc = Rational::zero();
    for (l, p) in law.entries() {
        for (mu, q) in branching_law(l, cap)?.entries() {
            let pair = InterlacingPair::new(l.clone(), mu.clone())?;
            acc += p * q * difference_measure(&pair).moment(k);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::repr::DEFAULT_ENUMERATION_CAP;
    use crate::signature::Signature;

    #[test]
    fn small_laws() {
        let z = SignatureLaw::delta(Signature::new(alloc::vec![0, 0]).unwrap());
        assert_eq!(finite_m_moment(&z, 1), rat(1, 4));
        assert_eq!(
            finite_d_moment(&z, 1, DEFAULT_ENUMERATION_CAP).unwrap(),
            rat(1, 2)
        );
        let s = SignatureLaw::delta(Signature::new(alloc::vec![1, 0]).unwrap());
        assert_eq!(
            finite_d_moment(&s, 1, DEFAULT_ENUMERATION_CAP).unwrap(),
            rat(3, 4)
        );
        let one = SignatureLaw::delta(Signature::new(alloc::vec![4]).unwrap());
        assert!(finite_d_moment(&one, 1, DEFAULT_ENUMERATION_CAP).is_err());
    }
}
