//! Delannoy numbers as exact Hessenberg determinants.
//!
//! Two constructions live here. The first expresses `D(p, q)` through a
//! `(q+1) x (q+1)` lower-Hessenberg matrix built from falling factorials of
//! `p` and `p + 1`:
//!
//! ```text
//! D(p, q) = (-1)^q / q! * det [ L | M ]
//! ```
//!
//! where column 0 is `L = (<p>_0, <p>_1, ..., <p>_q)^T` and the block `M`
//! has entries `(-1)^{i-j} C(i-1, j-1) <p+1>_{i-j}` (1-indexed block
//! coordinates). The second expresses the central `D(n)` through an
//! `n x n` Toeplitz-Hessenberg matrix whose diagonals carry the rational
//! coefficients [`an_coefficient`].
//!
//! Both determinants are evaluated exactly; the divisibility by `q!` and the
//! integrality of the Toeplitz determinant are asserted at runtime because
//! they are the strongest single-value correctness witnesses available.

use num_integer::Integer;
use num_traits::{pow, One, Signed, Zero};

use crate::exactnum::{binomial, double_factorial, factorial, falling_factorial, BigInt, BigRat};
use crate::hessenberg::HessMatrix;
use crate::{Error, Result};

/// The `(q+1) x (q+1)` falling-factorial matrix whose determinant encodes
/// `D(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiMatrix {
    pub p: u32,
    pub q: u32,
    pub matrix: HessMatrix,
}

/// Builds the determinant matrix for `D(p, q)`.
///
/// 0-indexed layout: column 0 holds `<p>_i`; column `j >= 1` holds, with
/// `d = i + 1 - j`, the entry `(-1)^d C(i, j-1) <p+1>_d` when `d >= 0` and 0
/// above the superdiagonal. The superdiagonal itself is `<p+1>_0 = 1`. The
/// builder writes the zeros explicitly instead of ever forming a falling
/// factorial of negative order.
pub fn build_qi_matrix(p: u32, q: u32) -> QiMatrix {
    let n = q as usize + 1;
    // <p>_i for column 0, <p+1>_d for the block: precomputed prefix products
    let ff_p = falling_factorial_row(p, q as i64);
    let ff_p1 = falling_factorial_row(p + 1, q as i64);
    let matrix = HessMatrix::from_fn(n, |i, j| {
        let value = if j == 0 {
            ff_p[i].clone()
        } else if i + 1 < j {
            BigInt::zero()
        } else {
            let d = i + 1 - j;
            let c = binomial(i as i64, j as i64 - 1).expect("k >= 0");
            let signed = if d % 2 == 0 { c } else { -c };
            signed * &ff_p1[d]
        };
        BigRat::from_integer(value)
    });
    QiMatrix { p, q, matrix }
}

fn falling_factorial_row(z: u32, up_to: i64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(up_to as usize + 1);
    let mut acc = BigInt::one();
    row.push(acc.clone());
    for k in 0..up_to {
        acc *= BigInt::from(z as i64 - k);
        row.push(acc.clone());
    }
    row
}

/// `D(p, q)` from the falling-factorial determinant.
///
/// Asserts that the determinant is an integer exactly divisible by `q!` and
/// that the quotient is nonnegative; a failure of either witness is an
/// implementation bug, never an input condition.
pub fn delannoy_via_det(p: u32, q: u32) -> BigInt {
    let det = build_qi_matrix(p, q).matrix.det_cahill();
    assert!(
        det.is_integer(),
        "delannoy_via_det({p}, {q}): integer matrix produced a non-integer determinant"
    );
    let signed = if q % 2 == 0 {
        det.to_integer()
    } else {
        -det.to_integer()
    };
    let (value, rem) = signed.div_rem(&factorial(q as i64).expect("q >= 0"));
    assert!(
        rem.is_zero(),
        "delannoy_via_det({p}, {q}): determinant not divisible by q!"
    );
    assert!(
        !value.is_negative(),
        "delannoy_via_det({p}, {q}): negative Delannoy value"
    );
    value
}

/// Coefficient `a_n` of the central Toeplitz-Hessenberg matrix:
/// `a_n = (-1)^{n+1}/6^n * sum_{l=1}^{n} (-1)^l 6^{2l} ((2l-3)!!/(2l)!!) C(l, n-l)`.
pub fn an_coefficient(n: u32) -> Result<BigRat> {
    if n == 0 {
        return Err(Error::domain("an_coefficient: n must be >= 1"));
    }
    let n = n as i64;
    let mut sum = BigRat::zero();
    for l in 1..=n {
        let choose = binomial(l, n - l)?;
        if choose.is_zero() {
            continue;
        }
        let numer = pow(BigInt::from(6), 2 * l as usize)
            * double_factorial(2 * l - 3)?
            * choose;
        let numer = if l % 2 == 0 { numer } else { -numer };
        sum += BigRat::new(numer, double_factorial(2 * l)?);
    }
    let sign = if n % 2 == 0 { -BigInt::one() } else { BigInt::one() };
    Ok(sum * BigRat::new(sign, pow(BigInt::from(6), n as usize)))
}

/// Central Delannoy `D(n) = (-1)^n det(A_n)` where `A_n` is the `n x n`
/// Toeplitz-Hessenberg matrix with `a_{i-j+1}` on and below the diagonal and
/// 1 on the superdiagonal.
///
/// The rational determinant must come out integral; that integrality is
/// asserted, not assumed.
pub fn central_via_det(n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("central_via_det: n must be >= 1"));
    }
    let coeffs: Vec<BigRat> = (1..=n).map(an_coefficient).collect::<Result<_>>()?;
    let matrix = HessMatrix::from_fn(n as usize, |i, j| {
        if j == i + 1 {
            BigRat::one()
        } else {
            coeffs[i - j].clone() // a_{i-j+1}
        }
    });
    let det = matrix.det_cahill();
    let signed = if n % 2 == 0 { det } else { -det };
    assert!(
        signed.is_integer(),
        "central_via_det({n}): determinant is not an integer"
    );
    Ok(signed.to_integer())
}

/// Central Delannoy `D(n)` as the diagonal case of the falling-factorial
/// determinant, `delannoy_via_det(n, n)`.
pub fn central_via_qi_det(n: u32) -> BigInt {
    delannoy_via_det(n, n)
}

/// Checks the symmetry-scaling identity between the two determinant
/// orientations of the same Delannoy number:
/// `det[L|M](p, q) = (-1)^{p-q} (q!/p!) det[L|M](q, p)`, exactly.
pub fn symmetry_scale_identity(p: u32, q: u32) -> bool {
    let det_pq = build_qi_matrix(p, q).matrix.det_cahill();
    let det_qp = build_qi_matrix(q, p).matrix.det_cahill();
    let scale = BigRat::new(
        factorial(q as i64).expect("q >= 0"),
        factorial(p as i64).expect("p >= 0"),
    );
    let rhs = det_qp * scale;
    if (p + q) % 2 == 0 {
        det_pq == rhs
    } else {
        det_pq == -rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::methods::recurrence3;

    fn int_rows(m: &HessMatrix) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        (0..m.dim())
            .map(|i| {
                (0..m.dim())
                    .map(|j| {
                        let e = m.entry(i, j);
                        assert!(e.is_integer());
                        e.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn qi_matrix_hand_expansions() {
        let m = build_qi_matrix(1, 1);
        assert_eq!(int_rows(&m.matrix), vec![vec![1, 1], vec![1, -2]]);

        let m = build_qi_matrix(5, 0);
        assert_eq!(int_rows(&m.matrix), vec![vec![1]]);

        let m = build_qi_matrix(2, 2);
        assert_eq!(
            int_rows(&m.matrix),
            vec![vec![1, 1, 0], vec![2, -3, 1], vec![2, 6, -6]]
        );
    }

    #[test]
    fn delannoy_via_det_known_values() {
        assert_eq!(delannoy_via_det(1, 1), BigInt::from(3));
        assert_eq!(delannoy_via_det(8, 3), BigInt::from(833));
        for p in 0..=8 {
            assert_eq!(delannoy_via_det(p, 0), BigInt::one());
        }
    }

    #[test]
    fn an_coefficient_first_values() {
        assert_eq!(an_coefficient(1).unwrap(), BigRat::from_integer(BigInt::from(-3)));
        assert_eq!(an_coefficient(2).unwrap(), BigRat::from_integer(BigInt::from(-4)));
        assert!(matches!(an_coefficient(0), Err(Error::Domain(_))));
    }

    #[test]
    fn central_via_det_known_values() {
        assert_eq!(central_via_det(1).unwrap(), BigInt::from(3));
        assert_eq!(central_via_det(3).unwrap(), BigInt::from(63));
        assert_eq!(central_via_det(4).unwrap(), BigInt::from(321));
        assert_eq!(central_via_det(8).unwrap(), BigInt::from(265729));
        assert!(matches!(central_via_det(0), Err(Error::Domain(_))));
    }

    #[test]
    fn central_via_qi_det_known_values() {
        assert_eq!(central_via_qi_det(0), BigInt::one());
        assert_eq!(central_via_qi_det(2), BigInt::from(13));
        assert_eq!(central_via_qi_det(6), BigInt::from(8989));
    }

    #[test]
    fn symmetry_scaling_holds() {
        assert!(symmetry_scale_identity(8, 3));
        assert!(symmetry_scale_identity(5, 5));
        assert!(symmetry_scale_identity(5, 2));
        assert!(symmetry_scale_identity(0, 4));
    }

    #[test]
    fn raw_determinant_carries_q_factorial_times_delannoy() {
        for p in 0..=6u32 {
            for q in 0..=6u32 {
                let det = build_qi_matrix(p, q).matrix.det_cahill();
                let expected = factorial(q as i64).unwrap() * recurrence3(p, q);
                let expected = if q % 2 == 0 { expected } else { -expected };
                assert_eq!(det, BigRat::from_integer(expected), "at ({p}, {q})");
            }
        }
    }
}
