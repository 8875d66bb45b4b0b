//! Dense exact linear algebra over ℚ, sized for reflection representations
//! (dimensions ≤ 6 here, but nothing assumes that).
//!
//! Determinants are computed by fraction Gaussian elimination and
//! characteristic polynomials independently by the Faddeev–LeVerrier
//! recursion, so tests can cross the two routes against each other.

use crate::exactnum::Rat;
use num::{One, Signed, Zero};

/// Dense row-major matrix of big rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMat {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols)
                .map(|j| crate::exactnum::rat_display(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMat {
            nrows,
            ncols,
            data: vec![Rat::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == ncols));
        RatMat {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rat>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut m = Self::zeros(nrows, ncols);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.ncols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.ncols + j]
    }

    pub fn mul(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = RatMat::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.ncols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && (0..self.nrows).all(|i| {
                (0..self.ncols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.nrows, self.ncols);
        let mut t = Rat::zero();
        for i in 0..self.nrows {
            t += self.at(i, i);
        }
        t
    }

    /// Determinant by fraction Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Rat {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pivot) = pivot else {
                return Rat::zero();
            };
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(pivot, j) = b;
                    *m.at_mut(col, j) = a;
                }
                det = -det;
            }
            let p = m.at(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                let factor = m.at(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * m.at(col, j);
                    *m.at_mut(r, j) -= delta;
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(xI − A) by the Faddeev–LeVerrier
    /// recursion; ascending coefficients, monic of degree n.
    pub fn charpoly(&self) -> Vec<Rat> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = RatMat::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let c = -(m.trace() / Rat::from_integer(k.into()));
            for i in 0..n {
                *m.at_mut(i, i) += &c;
            }
            coeffs[n - k] = c;
        }
        coeffs
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.ncols {
            let pivot = (row..m.nrows).find(|&r| !m.at(r, col).is_zero());
            let Some(pivot) = pivot else { continue };
            if pivot != row {
                for j in 0..m.ncols {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(row, j).clone();
                    *m.at_mut(pivot, j) = b;
                    *m.at_mut(row, j) = a;
                }
            }
            let p = m.at(row, col).clone();
            for r in row + 1..m.nrows {
                let factor = m.at(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.ncols {
                    let delta = &factor * m.at(row, j);
                    *m.at_mut(r, j) -= delta;
                }
            }
            rank += 1;
            row += 1;
            if row == m.nrows {
                break;
            }
        }
        rank
    }

    /// Solve the square system `self · x = b`; `None` when singular.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.nrows, self.ncols);
        assert_eq!(b.len(), self.nrows);
        let n = self.nrows;
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let b2 = m.at(col, j).clone();
                    *m.at_mut(pivot, j) = b2;
                    *m.at_mut(col, j) = a;
                }
                rhs.swap(pivot, col);
            }
            let p = m.at(col, col).clone();
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.at(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * m.at(col, j);
                    *m.at_mut(r, j) -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }
        Some(
            (0..n)
                .map(|i| &rhs[i] / m.at(i, i))
                .collect(),
        )
    }
}

/// Standard dot product of two rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `a - c·b` elementwise.
pub fn axpy(a: &[Rat], c: &Rat, b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(x, y)| x - c * y).collect()
}

/// True when every entry is zero.
pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Scale a vector by a rational.
pub fn scale_vec(v: &[Rat], c: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * c).collect()
}

/// Nonnegative in the sense of a positive-definite form: used for sanity
/// checks on norms.
pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> RatMat {
        RatMat::from_rows(vec![
            vec![rat(a, 1), rat(b, 1)],
            vec![rat(c, 1), rat(d, 1)],
        ])
    }

    #[test]
    fn determinant_and_charpoly_agree() {
        let m = m2(2, 1, 1, 2);
        assert_eq!(m.det(), rat(3, 1));
        // charpoly: x² − 4x + 3
        assert_eq!(m.charpoly(), vec![rat(3, 1), rat(-4, 1), rat(1, 1)]);
        // det(I − A) = charpoly evaluated at 1 = coefficient sum.
        let sum: Rat = m.charpoly().into_iter().sum();
        let direct = RatMat::identity(2).sub(&m).det();
        assert_eq!(sum, direct);
    }

    #[test]
    fn rank_and_solve() {
        let m = RatMat::from_rows(vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ]);
        assert_eq!(m.rank(), 2);
        let a = m2(2, 1, 1, 1);
        let x = a.solve(&[rat(5, 1), rat(3, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        assert!(m2(1, 2, 2, 4).solve(&[rat(1, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn permutation_determinant_signs() {
        let p = m2(0, 1, 1, 0);
        assert_eq!(p.det(), rat(-1, 1));
        assert_eq!(p.charpoly(), vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
    }
}
