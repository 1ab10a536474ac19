//! The non-determinant computation strategies for `D(p, q)` and `D(n)`,
//! plus the method registry used by verification and benchmarking.
//!
//! Each strategy is an independent route to the same array; none of them
//! shares intermediate results with another, so exact agreement between any
//! two is real evidence. [`qi_recursion`] in particular never touches the
//! three-term recurrence; [`recurrence3_build_count`] lets tests audit that.

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Signed, Zero};

use crate::detexpr;
use crate::exactnum::{binomial, factorial, falling_factorial, BigInt, BigRat};
use crate::{Error, Result};

/// Maximum `p + q` accepted by [`lattice_brute`]; the walk visits every path.
pub const LATTICE_BRUTE_CAP: u32 = 22;

static RECURRENCE3_BUILDS: AtomicU64 = AtomicU64::new(0);

/// How many three-term memo tables this process has built so far.
///
/// Instrumentation for independence audits: a computation that claims not to
/// rely on the three-term recurrence must leave this counter unchanged.
pub fn recurrence3_build_count() -> u64 {
    RECURRENCE3_BUILDS.load(Ordering::Relaxed)
}

/// Memoized grid of Delannoy numbers filled by the three-term recurrence.
///
/// `values[p][q] = D(p, q)`; the first row and column are all 1 and the grid
/// is symmetric. Immutable once built, safe to share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoTable {
    max_p: u32,
    max_q: u32,
    values: Vec<BigInt>,
}

impl MemoTable {
    /// Fills the `(max_p+1) x (max_q+1)` grid with
    /// `D(p, q) = D(p-1, q) + D(p-1, q-1) + D(p, q-1)`, boundary 1s.
    pub fn build(max_p: u32, max_q: u32) -> Self {
        RECURRENCE3_BUILDS.fetch_add(1, Ordering::Relaxed);
        let cols = max_q as usize + 1;
        let rows = max_p as usize + 1;
        let mut values = vec![BigInt::one(); rows * cols];
        for p in 1..rows {
            for q in 1..cols {
                let v = &values[(p - 1) * cols + q]
                    + &values[(p - 1) * cols + (q - 1)]
                    + &values[p * cols + (q - 1)];
                values[p * cols + q] = v;
            }
        }
        MemoTable {
            max_p,
            max_q,
            values,
        }
    }

    pub fn max_p(&self) -> u32 {
        self.max_p
    }

    pub fn max_q(&self) -> u32 {
        self.max_q
    }

    pub fn get(&self, p: u32, q: u32) -> &BigInt {
        assert!(p <= self.max_p && q <= self.max_q, "MemoTable: out of range");
        &self.values[p as usize * (self.max_q as usize + 1) + q as usize]
    }
}

/// `D(p, q)` through the three-term recurrence, `O(pq)` additions.
pub fn recurrence3(p: u32, q: u32) -> BigInt {
    MemoTable::build(p, q).get(p, q).clone()
}

/// `D(p, q) = sum_{i=0}^{p} C(p, i) C(q, i) 2^i`.
pub fn sum_binom_2i(p: u32, q: u32) -> BigInt {
    let mut total = BigInt::one(); // i = 0 term
    let mut c_p = BigInt::one();
    let mut c_q = BigInt::one();
    let mut pow2 = BigInt::one();
    for i in 0..p.min(q) {
        // advance C(p, i) -> C(p, i+1), same for q; exact divisions
        c_p = c_p * (p - i) / (i + 1);
        c_q = c_q * (q - i) / (i + 1);
        pow2 *= 2u32;
        total += &c_p * &c_q * &pow2;
    }
    // terms with i > min(p, q) vanish: one of the binomials is 0
    total
}

/// `D(p, q) = sum_{i=0}^{q} C(q, i) C(p+q-i, q)`.
pub fn sum_binom_conv(p: u32, q: u32) -> BigInt {
    let mut c_q = BigInt::one(); // C(q, i)
    let mut c_m = binomial(p + q, q as i64).expect("k >= 0"); // C(p+q-i, q)
    let mut total = &c_q * &c_m;
    for i in 0..q {
        c_q = c_q * (q - i) / (i + 1);
        // C(m-1, q) = C(m, q) (m - q) / m with m = p + q - i
        let m = p + q - i;
        c_m = if m > q {
            c_m * (m - q) / m
        } else {
            BigInt::zero()
        };
        total += &c_q * &c_m;
    }
    total
}

/// `D(p, q)` by exhaustively walking every path from `(0, 0)` to `(p, q)`
/// with east, north and diagonal steps.
///
/// Refuses `p + q > `[`LATTICE_BRUTE_CAP`]: the path count explodes.
pub fn lattice_brute(p: u32, q: u32) -> Result<BigInt> {
    if p + q > LATTICE_BRUTE_CAP {
        return Err(Error::refused(
            "lattice_brute",
            format!("p + q = {} exceeds the step budget {LATTICE_BRUTE_CAP}", p + q),
        ));
    }
    // dx, dy = steps still needed; counts fit u64 within the cap
    fn walk(dx: u32, dy: u32) -> u64 {
        if dx == 0 && dy == 0 {
            return 1;
        }
        let mut count = 0;
        if dx > 0 {
            count += walk(dx - 1, dy);
        }
        if dy > 0 {
            count += walk(dx, dy - 1);
        }
        if dx > 0 && dy > 0 {
            count += walk(dx - 1, dy - 1);
        }
        count
    }
    Ok(BigInt::from(walk(p, q)))
}

/// Coefficient of `x^p y^q` in `sum_{k=0}^{p+q} (x + y + xy)^k`, i.e. in the
/// geometric expansion of `1/(1 - x - y - xy)`.
///
/// Powers are built by truncated bivariate polynomial multiplication:
/// monomials with x-degree > p or y-degree > q are dropped, which cannot
/// change the target coefficient. Powers beyond `p + q` cannot reach
/// `x^p y^q` because every factor raises the total degree.
pub fn gf_bivariate(p: u32, q: u32) -> BigInt {
    let (pu, qu) = (p as usize, q as usize);
    let cols = qu + 1;
    // cur[a][b] = coefficient of x^a y^b in (x + y + xy)^k, truncated
    let mut cur = vec![BigInt::zero(); (pu + 1) * cols];
    cur[0] = BigInt::one(); // k = 0
    let mut total = if p == 0 && q == 0 {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    for _k in 1..=(pu + qu) {
        let mut next = vec![BigInt::zero(); (pu + 1) * cols];
        for a in 0..=pu {
            for b in 0..=qu {
                let c = &cur[a * cols + b];
                if c.is_zero() {
                    continue;
                }
                if a < pu {
                    next[(a + 1) * cols + b] += c; // times x
                }
                if b < qu {
                    next[a * cols + (b + 1)] += c; // times y
                }
                if a < pu && b < qu {
                    next[(a + 1) * cols + (b + 1)] += c; // times xy
                }
            }
        }
        cur = next;
        total += &cur[pu * cols + qu];
    }
    total
}

/// `D(p, q)` by the binomial recursion
/// `D(p, q) = C(p, q) + (-1)^{q-1} sum_{r=0}^{q-1} (-1)^r C(p+1, q-r) D(p, r)`,
/// filling one fixed-`p` row left to right in `O(q^2)`.
///
/// Deliberately never falls back to the three-term recurrence, so it stays
/// independent evidence; see [`recurrence3_build_count`].
pub fn qi_recursion(p: u32, q: u32) -> BigInt {
    let mut row: Vec<BigInt> = Vec::with_capacity(q as usize + 1);
    row.push(BigInt::one()); // D(p, 0) = C(p, 0) = 1
    for s in 1..=q {
        let mut acc = binomial(p, s as i64).expect("k >= 0");
        // r descending from s-1 to 0 pairs with k = s - r ascending from 1,
        // so C(p+1, k) updates incrementally without recomputation
        let mut c = BigInt::from(p + 1); // C(p+1, 1)
        for k in 1..=s {
            let r = s - k;
            // sign (-1)^{s-1+r} = (-1)^{k-1}
            let term = &c * &row[r as usize];
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            // C(p+1, k+1) = C(p+1, k) (p+1-k) / (k+1); hits 0 past k = p+1
            c = if k <= p {
                c * (p + 1 - k) / (k + 1)
            } else {
                BigInt::zero()
            };
        }
        row.push(acc);
    }
    row.pop().expect("row holds at least D(p, 0)")
}

/// Central Delannoy `D(n)` from the corollary relation
/// `D(n) = 1 + (-1)^{n+1} sum_{r=0}^{n-1} (-1)^r C(n+1, r+1) D(n, r)`,
/// with the `D(n, r)` values drawn from the three-term recurrence.
pub fn central_qi_relation(n: u32) -> BigInt {
    if n == 0 {
        return BigInt::one(); // empty sum
    }
    let memo = MemoTable::build(n, n - 1);
    let mut acc = BigInt::zero();
    let mut c = BigInt::from(n + 1); // C(n+1, r+1) at r = 0
    for r in 0..n {
        // (-1)^{n+1} (-1)^r
        let term = &c * memo.get(n, r);
        if (n + 1 + r) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        // C(n+1, r+2) = C(n+1, r+1) (n - r) / (r + 2)
        c = c * (n - r) / (r + 2);
    }
    acc + 1u32
}

/// Checks the matrix reformulation of the central relation:
/// `(D(1), ..., D(n))^T = (1, ..., 1)^T - M v` with
/// `M[k][j] = <k+1>_j D(k-j, k)` (lower triangular, `1 <= j <= k`) and
/// `v[s] = (-1)^s / s!`. Exact rational evaluation; must return true.
pub fn central_matrix_reformulation_check(n: u32) -> bool {
    if n == 0 {
        return true;
    }
    let memo = MemoTable::build(n, n);
    // v[j] = (-1)^j / j!, 1-indexed
    let v: Vec<BigRat> = (1..=n as i64)
        .map(|j| {
            let num = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            BigRat::new(num, factorial(j).expect("j >= 0"))
        })
        .collect();
    for k in 1..=n {
        let mut mv = BigRat::zero();
        for j in 1..=k {
            let coeff = falling_factorial(k as i64 + 1, j as i64).expect("j >= 0");
            let m_kj = coeff * memo.get(k - j, k);
            mv += BigRat::from_integer(m_kj) * &v[j as usize - 1];
        }
        let lhs = BigRat::from_integer(memo.get(k, k).clone());
        if lhs != BigRat::one() - mv {
            return false;
        }
    }
    true
}

/// First `n_max + 1` central Delannoy numbers from the series
/// `S(x) = 1/sqrt(1 - 6x + x^2)`, computed without floating point.
///
/// `S` is pinned down by `S(0) = 1` and the formal identity
/// `S^2 (1 - 6x + x^2) = 1`: writing `c_m` for the coefficients of `S^2`,
/// degree `m >= 1` of the identity forces `c_m = 6 c_{m-1} - c_{m-2}`, and
/// `c_m = 2 s_m + sum_{i=1..m-1} s_i s_{m-i}` solves for `s_m` as an integer
/// linear combination of earlier terms.
///
/// Panics if a coefficient comes out non-integral, which would mean the
/// arithmetic is broken.
pub fn central_gf_series(n_max: u32) -> Vec<BigInt> {
    let n_max = n_max as usize;
    let mut s: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    let mut c: Vec<BigInt> = Vec::with_capacity(n_max + 1); // coefficients of S^2
    s.push(BigInt::one());
    c.push(BigInt::one());
    for m in 1..=n_max {
        let mut rhs = &c[m - 1] * 6u32;
        if m >= 2 {
            rhs -= &c[m - 2];
        }
        let inner: BigInt = (1..m).map(|i| &s[i] * &s[m - i]).sum();
        let twice = rhs - &inner;
        assert!(
            !twice.is_odd(),
            "central_gf_series: non-integral coefficient at degree {m}"
        );
        let sm = twice / 2u32;
        c.push(inner + 2u32 * &sm); // c_m now that s_m is known
        s.push(sm);
    }
    s
}

/// The registry of independent computation strategies: the unit of
/// cross-verification and benchmarking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DelannoyMethod {
    Recurrence3,
    SumBinom2i,
    SumBinomConv,
    LatticeBrute,
    GfBivariate,
    QiRecursion,
    DetQi,
    CentralAnDet,
    CentralQiRelation,
}

impl DelannoyMethod {
    pub const ALL: [DelannoyMethod; 9] = [
        DelannoyMethod::Recurrence3,
        DelannoyMethod::SumBinom2i,
        DelannoyMethod::SumBinomConv,
        DelannoyMethod::LatticeBrute,
        DelannoyMethod::GfBivariate,
        DelannoyMethod::QiRecursion,
        DelannoyMethod::DetQi,
        DelannoyMethod::CentralAnDet,
        DelannoyMethod::CentralQiRelation,
    ];

    /// Stable identifier used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            DelannoyMethod::Recurrence3 => "recurrence3",
            DelannoyMethod::SumBinom2i => "sum_binom_2i",
            DelannoyMethod::SumBinomConv => "sum_binom_conv",
            DelannoyMethod::LatticeBrute => "lattice_brute",
            DelannoyMethod::GfBivariate => "gf_bivariate",
            DelannoyMethod::QiRecursion => "qi_recursion",
            DelannoyMethod::DetQi => "det_qi",
            DelannoyMethod::CentralAnDet => "central_an_det",
            DelannoyMethod::CentralQiRelation => "central_qi_relation",
        }
    }

    pub fn parse(s: &str) -> Option<DelannoyMethod> {
        DelannoyMethod::ALL.into_iter().find(|m| m.name() == s)
    }

    /// Rough cost documentation shown by the benchmark harness.
    pub fn cost_class(self) -> &'static str {
        match self {
            DelannoyMethod::Recurrence3 => "O(pq) big-int additions",
            DelannoyMethod::SumBinom2i => "O(min(p,q)) big-int multiplications",
            DelannoyMethod::SumBinomConv => "O(q) big-int multiplications",
            DelannoyMethod::LatticeBrute => "O(D(p,q)) path walk, capped at p+q <= 22",
            DelannoyMethod::GfBivariate => "O(pq(p+q)) big-int additions",
            DelannoyMethod::QiRecursion => "O(q^2) big-int operations per row",
            DelannoyMethod::DetQi => "O(q^2) exact-rational multiplications",
            DelannoyMethod::CentralAnDet => "O(n^2) exact-rational multiplications, diagonal only",
            DelannoyMethod::CentralQiRelation => "O(n^2) big-int additions, diagonal only",
        }
    }

    /// Why this method will not run at `(p, q)`, if it will not.
    pub fn skip_reason(self, p: u32, q: u32) -> Option<String> {
        match self {
            DelannoyMethod::LatticeBrute if p + q > LATTICE_BRUTE_CAP => Some(format!(
                "p + q = {} exceeds the step budget {LATTICE_BRUTE_CAP}",
                p + q
            )),
            DelannoyMethod::CentralAnDet | DelannoyMethod::CentralQiRelation if p != q => {
                Some("defined for central (p = q) cells only".to_string())
            }
            DelannoyMethod::CentralAnDet if p == 0 => {
                Some("Toeplitz coefficient matrix needs n >= 1".to_string())
            }
            _ => None,
        }
    }

    /// Evaluates the method at `(p, q)`.
    ///
    /// Fails exactly when [`skip_reason`](Self::skip_reason) is `Some`.
    pub fn evaluate(self, p: u32, q: u32) -> Result<BigInt> {
        if let Some(reason) = self.skip_reason(p, q) {
            return Err(Error::Refused {
                method: self.name(),
                reason,
            });
        }
        Ok(match self {
            DelannoyMethod::Recurrence3 => recurrence3(p, q),
            DelannoyMethod::SumBinom2i => sum_binom_2i(p, q),
            DelannoyMethod::SumBinomConv => sum_binom_conv(p, q),
            DelannoyMethod::LatticeBrute => lattice_brute(p, q)?,
            DelannoyMethod::GfBivariate => gf_bivariate(p, q),
            DelannoyMethod::QiRecursion => qi_recursion(p, q),
            DelannoyMethod::DetQi => detexpr::delannoy_via_det(p, q),
            DelannoyMethod::CentralAnDet => {
                detexpr::central_via_det(p).expect("skip_reason filtered n = 0")
            }
            DelannoyMethod::CentralQiRelation => central_qi_relation(p),
        })
    }
}

impl std::fmt::Display for DelannoyMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn recurrence3_known_values() {
        assert_eq!(recurrence3(5, 5), big(1683));
        assert_eq!(recurrence3(0, 7), big(1));
        assert_eq!(recurrence3(6, 2), big(85));
    }

    #[test]
    fn memo_table_boundary_and_symmetry() {
        let t = MemoTable::build(6, 6);
        for k in 0..=6 {
            assert_eq!(t.get(k, 0), &BigInt::one());
            assert_eq!(t.get(0, k), &BigInt::one());
        }
        for p in 0..=6 {
            for q in 0..=6 {
                assert_eq!(t.get(p, q), t.get(q, p));
            }
        }
    }

    #[test]
    fn sum_binom_2i_known_values() {
        assert_eq!(sum_binom_2i(2, 2), big(13));
        assert_eq!(sum_binom_2i(9, 0), big(1));
        assert_eq!(sum_binom_2i(4, 7), big(2241));
    }

    #[test]
    fn sum_binom_conv_known_values() {
        assert_eq!(sum_binom_conv(3, 3), big(63));
        assert_eq!(sum_binom_conv(0, 0), big(1));
        assert_eq!(sum_binom_conv(7, 2), big(113));
    }

    #[test]
    fn lattice_brute_small_values() {
        assert_eq!(lattice_brute(1, 1).unwrap(), big(3));
        assert_eq!(lattice_brute(2, 2).unwrap(), big(13));
        assert_eq!(lattice_brute(3, 4).unwrap(), big(129));
    }

    #[test]
    fn lattice_brute_refuses_past_cap() {
        assert!(matches!(lattice_brute(12, 11), Err(Error::Refused { .. })));
        assert!(lattice_brute(11, 11).is_ok());
    }

    #[test]
    fn gf_bivariate_known_values() {
        assert_eq!(gf_bivariate(0, 0), big(1));
        assert_eq!(gf_bivariate(1, 2), big(5));
        assert_eq!(gf_bivariate(4, 4), big(321));
    }

    #[test]
    fn qi_recursion_hand_checked_values() {
        // D(2,1) = C(2,1) + C(3,1) * D(2,0) = 2 + 3
        assert_eq!(qi_recursion(2, 1), big(5));
        // D(2,2) = 1 - (3 * 1 - 3 * 5) = 13
        assert_eq!(qi_recursion(2, 2), big(13));
        assert_eq!(qi_recursion(8, 8), big(265729));
        // tall cells exercise the C(p+1, k) = 0 region
        assert_eq!(qi_recursion(0, 5), big(1));
        assert_eq!(qi_recursion(2, 6), recurrence3(2, 6));
    }

    #[test]
    fn central_qi_relation_known_values() {
        assert_eq!(central_qi_relation(0), big(1));
        // D(2) = 1 - (C(3,1) * 1 - C(3,2) * 5)
        assert_eq!(central_qi_relation(2), big(13));
        assert_eq!(central_qi_relation(7), big(48639));
    }

    #[test]
    fn matrix_reformulation_holds() {
        // n = 1 is the display D(1) = 1 + <2>_1 D(0,1) / 1! = 3
        assert!(central_matrix_reformulation_check(1));
        assert!(central_matrix_reformulation_check(4));
        assert!(central_matrix_reformulation_check(10));
    }

    #[test]
    fn central_series_prefix() {
        assert_eq!(
            central_gf_series(3),
            vec![big(1), big(3), big(13), big(63)]
        );
        assert_eq!(central_gf_series(0), vec![big(1)]);
        assert_eq!(central_gf_series(8).last().unwrap(), &big(265729));
    }

    #[test]
    fn registry_identifiers_unique_and_parseable() {
        let mut names: Vec<&str> = DelannoyMethod::ALL.iter().map(|m| m.name()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), DelannoyMethod::ALL.len());
        for m in DelannoyMethod::ALL {
            assert_eq!(DelannoyMethod::parse(m.name()), Some(m));
            assert!(!m.cost_class().is_empty());
        }
        assert_eq!(DelannoyMethod::parse("not_a_method"), None);
    }

    #[test]
    fn evaluate_fails_exactly_when_skipped() {
        for m in DelannoyMethod::ALL {
            for (p, q) in [(0, 0), (1, 0), (4, 4), (3, 5), (20, 3), (14, 14)] {
                match m.skip_reason(p, q) {
                    Some(_) => assert!(m.evaluate(p, q).is_err(), "{m} at ({p},{q})"),
                    None => {
                        assert_eq!(m.evaluate(p, q).unwrap(), recurrence3(p, q), "{m} at ({p},{q})")
                    }
                }
            }
        }
    }
}
