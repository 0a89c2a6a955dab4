//! Exact rational coefficients.
//!
//! `BigRational` already maintains the invariants this crate relies on:
//! the fraction is kept reduced and the denominator positive, so
//! structural equality is arithmetic equality.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `n/d`, `d != 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact integer k-th root of a rational, if one exists.
///
/// For even `k` the nonnegative root of a nonnegative argument is
/// returned; odd `k` handles signs.
pub fn nth_root_exact(v: &Scalar, k: u32) -> Option<Scalar> {
    use num_traits::Signed;
    if k == 0 {
        return None;
    }
    if k == 1 {
        return Some(v.clone());
    }
    let negative = v.is_negative();
    if negative && k % 2 == 0 {
        return None;
    }
    let abs = v.abs();
    let num = abs.numer().nth_root(k);
    let den = abs.denom().nth_root(k);
    let root = Scalar::new(num, den);
    let mut powered = Scalar::from_integer(1.into());
    for _ in 0..k {
        powered *= &root;
    }
    if powered == abs {
        Some(if negative { -root } else { root })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn scalars_stay_reduced_with_positive_denominator() {
        use num_traits::Signed;
        let v = ratio(6, -4);
        assert_eq!(v, ratio(-3, 2));
        assert!(v.denom().is_positive());
        assert!(num_integer::gcd(v.numer().clone(), v.denom().clone()).is_one());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(nth_root_exact(&ratio(16, 81), 4), Some(ratio(2, 3)));
        assert_eq!(nth_root_exact(&int(-8), 3), Some(int(-2)));
        assert_eq!(nth_root_exact(&int(-4), 2), None);
        assert_eq!(nth_root_exact(&int(5), 2), None);
    }
}
