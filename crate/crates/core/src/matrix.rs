//! Symmetric matrices over the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rat, rat, Rat};

/// A symmetric `n x n` matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    /// Builds a matrix from rows, rejecting non-square or non-symmetric input.
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        let m = RationalMatrix { n, entries };
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(m)
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().copied().map(rat).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rat::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rat::one();
        }
        RationalMatrix { n, entries }
    }

    /// The 1x1 matrix `(value)`.
    pub fn scalar(value: Rat) -> Self {
        RationalMatrix { n: 1, entries: vec![value] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_integer_valued(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// Entries as integers, if all are integral.
    pub fn to_integers(&self) -> Option<Vec<Vec<i64>>> {
        self.is_integer_valued()
            .then(|| (0..self.n).map(|i| self.row(i).iter().map(|x| x.to_integer()).collect()).collect())
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_int_vec(&self, v: &[i64]) -> Vec<Rat> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, &b)| a * rat(b)).sum())
            .collect()
    }

    /// `x . K . y`
    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        x.iter().zip(self.mul_vec(y)).map(|(a, b)| a * b).sum()
    }

    pub fn quad(&self, x: &[Rat]) -> Rat {
        self.bilinear(x, x)
    }

    /// Plain matrix product; the result need not be symmetric, so it is
    /// returned as rows.
    pub fn matmul(&self, other: &RationalMatrix) -> Vec<Vec<Rat>> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()).collect())
            .collect()
    }

    pub fn determinant(&self) -> Rat {
        let n = self.n;
        let mut a = self.rows();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col];
            det *= p;
            for r in col + 1..n {
                let f = a[r][col] / p;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = RationalMatrix::identity(n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col];
            for c in 0..n {
                a[col][c] /= p;
                inv[col][c] /= p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col];
                for c in 0..n {
                    let (x, y) = (a[col][c], inv[col][c]);
                    a[r][c] -= f * x;
                    inv[r][c] -= f * y;
                }
            }
        }
        // Symmetric input has a symmetric inverse, so this cannot fail.
        RationalMatrix::new(inv)
    }

    /// `K = L D L^T` with `L` unit lower triangular. Returns `None` when a
    /// zero pivot appears (singular leading minor).
    pub fn ldl(&self) -> Option<(Vec<Vec<Rat>>, Vec<Rat>)> {
        let n = self.n;
        let mut l = vec![vec![Rat::zero(); n]; n];
        let mut d = vec![Rat::zero(); n];
        for j in 0..n {
            let mut dj = self.get(j, j);
            for k in 0..j {
                dj -= l[j][k] * l[j][k] * d[k];
            }
            if dj.is_zero() {
                return None;
            }
            d[j] = dj;
            l[j][j] = Rat::one();
            for i in j + 1..n {
                let mut v = self.get(i, j);
                for k in 0..j {
                    v -= l[i][k] * l[j][k] * d[k];
                }
                l[i][j] = v / dj;
            }
        }
        Some((l, d))
    }

    pub fn is_positive_definite(&self) -> bool {
        match self.ldl() {
            Some((_, d)) => d.iter().all(|x| x.is_positive()),
            None => false,
        }
    }

    /// `K + M t t^T`.
    pub fn shift_deform(&self, m: i64, t: &[i64]) -> Result<RationalMatrix> {
        if t.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: t.len() });
        }
        let mut entries = self.entries.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                entries[i * self.n + j] += rat(m * t[i] * t[j]);
            }
        }
        Ok(RationalMatrix { n: self.n, entries })
    }

    /// Swaps coordinates `i` and `j` (a relabelling of the variables).
    pub fn permuted(&self, perm: &[usize]) -> RationalMatrix {
        let n = self.n;
        let mut entries = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        RationalMatrix { n, entries }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn k(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_integers(rows).unwrap()
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(
            RationalMatrix::from_integers(&[vec![1, 2], vec![3, 4]]),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let a = k(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(a.determinant(), rat(3));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.get(0, 0), ratio(2, 3));
        assert_eq!(inv.get(0, 1), ratio(-1, 3));
        assert_eq!(a.matmul(&inv), RationalMatrix::identity(2).rows());
        assert_eq!(k(&[vec![1, 1], vec![1, 1]]).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let a = k(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.determinant(), rat(-1));
        assert!(!a.is_positive_definite());
    }

    #[test]
    fn positive_definiteness() {
        assert!(k(&[vec![1, 1], vec![1, 2]]).is_positive_definite());
        assert!(!k(&[vec![1, 2], vec![2, 1]]).is_positive_definite());
        assert!(!k(&[vec![0]]).is_positive_definite());
    }

    #[test]
    fn shift_deformation_of_identity() {
        let d = RationalMatrix::identity(2).shift_deform(2, &[1, 2]).unwrap();
        assert_eq!(d, k(&[vec![3, 4], vec![4, 9]]));
        assert_eq!(d.determinant(), rat(11));
        assert_eq!(RationalMatrix::identity(2).shift_deform(0, &[1, 1]).unwrap(), RationalMatrix::identity(2));
    }
}
