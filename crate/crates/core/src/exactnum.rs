//! Arbitrary-precision integers and exact rationals, plus the combinatorial
//! primitives every Delannoy formula consumes.
//!
//! [`BigInt`] and [`BigRat`] are the universal value types of this crate:
//! signed arbitrary-precision integers and always-reduced rationals with a
//! positive denominator. All arithmetic is exact; floating point appears only
//! in the [`crate::integral`] module.

use num_integer::Integer;
use num_traits::{One, Zero};

pub use num_bigint::BigInt;

/// Exact rational number: reduced fraction of [`BigInt`]s, denominator > 0.
pub type BigRat = num_rational::BigRational;

use crate::{Error, Result};

/// Exact `n!`.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain(format!("factorial: n = {n} must be >= 0")));
    }
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Ok(acc)
}

/// Double factorial `m!! = m (m-2) (m-4) ...` down to 1 or 2, for `m >= -1`.
///
/// `(-1)!! = 0!! = 1` by the empty-product convention.
pub fn double_factorial(m: i64) -> Result<BigInt> {
    if m < -1 {
        return Err(Error::domain(format!(
            "double_factorial: m = {m} must be >= -1"
        )));
    }
    let mut acc = BigInt::one();
    let mut k = m;
    while k >= 2 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// Falling factorial `<z>_n = z (z-1) ... (z-n+1)`, with `<z>_0 = 1`.
///
/// Defined for any integer `z`; the order `n` must be nonnegative.
pub fn falling_factorial(z: impl Into<BigInt>, n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain(format!(
            "falling_factorial: order n = {n} must be >= 0"
        )));
    }
    let z = z.into();
    let mut acc = BigInt::one();
    for k in 0..n {
        acc *= &z - k;
    }
    Ok(acc)
}

/// Generalized binomial coefficient `C(n, k) = <n>_k / k!` for any integer
/// `n` and `k >= 0`.
///
/// For `0 <= n < k` this is 0, because the falling factorial picks up a zero
/// factor.
pub fn binomial(n: impl Into<BigInt>, k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::domain(format!("binomial: k = {k} must be >= 0")));
    }
    let ff = falling_factorial(n, k)?;
    let (q, r) = ff.div_rem(&factorial(k)?);
    // A product of k consecutive integers is always divisible by k!.
    assert!(r.is_zero(), "binomial: falling factorial not divisible by k!");
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(8, 3).unwrap(), BigInt::from(56));
        assert_eq!(binomial(0, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(3, 5).unwrap(), BigInt::zero());
    }

    #[test]
    fn binomial_negative_upper_argument() {
        // C(-1, k) = (-1)^k
        assert_eq!(binomial(-1, 3).unwrap(), BigInt::from(-1));
        assert_eq!(binomial(-1, 4).unwrap(), BigInt::one());
        // C(-2, 2) = 3
        assert_eq!(binomial(-2, 2).unwrap(), BigInt::from(3));
    }

    #[test]
    fn binomial_rejects_negative_k() {
        assert!(matches!(binomial(5, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(7, 0).unwrap(), BigInt::one());
        assert_eq!(falling_factorial(-3, 0).unwrap(), BigInt::one());
        assert_eq!(falling_factorial(2, 1).unwrap(), BigInt::from(2));
        // the factor (3 - 3) appears
        assert_eq!(falling_factorial(3, 5).unwrap(), BigInt::zero());
        assert!(matches!(
            falling_factorial(3, -1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(4).unwrap(), BigInt::from(8));
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert!(matches!(double_factorial(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), BigInt::one());
        assert_eq!(factorial(8).unwrap(), BigInt::from(40320));
        // scale factor q!/p! for (p, q) = (8, 3)
        let scale = BigRat::new(factorial(3).unwrap(), factorial(8).unwrap());
        assert_eq!(scale, BigRat::new(BigInt::one(), BigInt::from(6720)));
        assert!(matches!(factorial(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn double_factorial_splits_factorial() {
        for l in 1..=20i64 {
            let even = double_factorial(2 * l).unwrap();
            let odd = double_factorial(2 * l - 1).unwrap();
            assert_eq!(even * odd, factorial(2 * l).unwrap());
        }
    }

    #[test]
    fn bigrat_is_canonical() {
        let r = BigRat::new(BigInt::from(-6), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let r = BigRat::new(BigInt::from(12), BigInt::from(-8));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    proptest! {
        #[test]
        fn binomial_equals_falling_factorial_over_factorial(n in 0i64..=64, frac in 0.0f64..=1.0) {
            let k = (n as f64 * frac) as i64;
            let lhs = binomial(n, k).unwrap() * factorial(k).unwrap();
            let rhs = falling_factorial(n, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pascal_rule_holds(n in -24i64..=64, k in 1i64..=24) {
            let lhs = binomial(n, k).unwrap();
            let rhs = binomial(n - 1, k).unwrap() + binomial(n - 1, k - 1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
