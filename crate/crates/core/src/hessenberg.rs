//! Lower-Hessenberg matrices over exact rationals and their determinants.
//!
//! A lower-Hessenberg matrix has `e[i][j] = 0` whenever `j > i + 1`
//! (0-indexed): at most one nonzero diagonal above the main one. For such
//! matrices the determinant satisfies a linear recurrence over the leading
//! principal minors `Q_0, Q_1, ..., Q_n` (Cahill et al.):
//!
//! ```text
//! Q_0 = 1,   Q_1 = e[1][1],
//! Q_n = sum_{r=1..n} (-1)^{n-r} e[n][r] (prod_{j=r..n-1} e[j][j+1]) Q_{r-1}
//! ```
//!
//! (1-indexed, empty product = 1). [`HessMatrix::det_cahill`] evaluates the
//! recurrence iteratively in `O(n^2)` multiplications; the superdiagonal
//! products are accumulated incrementally, never recomputed per term.
//! [`HessMatrix::det_cofactor`] is a deliberately naive first-row cofactor
//! expansion kept as an independent oracle for tests.

use num_traits::{One, Zero};

use crate::exactnum::BigRat;
use crate::{Error, Result};

/// Default dimension cap for [`HessMatrix::det_cofactor`].
pub const DEFAULT_COFACTOR_CAP: usize = 10;

/// Dense square lower-Hessenberg matrix of exact rationals.
///
/// The dimension-0 matrix is valid and has determinant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessMatrix {
    n: usize,
    entries: Vec<BigRat>,
}

impl HessMatrix {
    /// Builds an `n x n` lower-Hessenberg matrix from `f(i, j)` (0-indexed).
    ///
    /// `f` is consulted only for `j <= i + 1`; every entry above the
    /// superdiagonal is structurally zero, so invalid matrices are
    /// unrepresentable.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRat) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if j > i + 1 {
                    entries.push(BigRat::zero());
                } else {
                    entries.push(f(i, j));
                }
            }
        }
        HessMatrix { n, entries }
    }

    /// Builds a matrix from explicit rows, rejecting anything that is not
    /// square lower-Hessenberg.
    pub fn from_rows(rows: Vec<Vec<BigRat>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::domain(format!(
                    "HessMatrix: row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if j > i + 1 && !e.is_zero() {
                    return Err(Error::domain(format!(
                        "HessMatrix: nonzero entry at ({i}, {j}) above the superdiagonal"
                    )));
                }
            }
        }
        Ok(HessMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRat {
        &self.entries[i * self.n + j]
    }

    /// Determinant via the Hessenberg minor recurrence, `O(n^2)` entry
    /// multiplications.
    pub fn det_cahill(&self) -> BigRat {
        let n = self.n;
        // q[k] = determinant of the leading k x k principal minor
        let mut q: Vec<BigRat> = Vec::with_capacity(n + 1);
        q.push(BigRat::one());
        for k in 1..=n {
            let last = k - 1; // 0-indexed last row of the k x k minor
            let mut acc = BigRat::zero();
            // superprod = prod_{j=r..k-1} e[j][j+1] (1-indexed), built up
            // incrementally as r walks down from k to 1
            let mut superprod = BigRat::one();
            let mut negate = false; // (-1)^{k-r}
            for r in (1..=k).rev() {
                let term = self.entry(last, r - 1) * &superprod * &q[r - 1];
                if negate {
                    acc -= term;
                } else {
                    acc += term;
                }
                if r > 1 {
                    superprod *= self.entry(r - 2, r - 1);
                    negate = !negate;
                }
            }
            q.push(acc);
        }
        q.pop().expect("q holds at least Q_0")
    }

    /// Determinant by first-row cofactor expansion, the test oracle for
    /// [`det_cahill`](Self::det_cahill). Refuses dimensions above
    /// [`DEFAULT_COFACTOR_CAP`] to prevent factorial blowup.
    pub fn det_cofactor(&self) -> Result<BigRat> {
        self.det_cofactor_capped(DEFAULT_COFACTOR_CAP)
    }

    /// Same as [`det_cofactor`](Self::det_cofactor) with an explicit cap.
    pub fn det_cofactor_capped(&self, cap: usize) -> Result<BigRat> {
        if self.n > cap {
            return Err(Error::refused(
                "det_cofactor",
                format!("dimension {} exceeds the oracle cap {cap}", self.n),
            ));
        }
        let rows: Vec<Vec<BigRat>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        Ok(cofactor_det(&rows))
    }
}

fn cofactor_det(rows: &[Vec<BigRat>]) -> BigRat {
    let n = rows.len();
    if n == 0 {
        return BigRat::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = BigRat::zero();
    for (j, pivot) in rows[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRat>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = pivot * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
