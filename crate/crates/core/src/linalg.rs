//! Small dense linear algebra: LU factorization with partial pivoting for
//! determinants and solves over `f64`, and Gauss-Jordan elimination over
//! exact rationals.

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from its rows. Panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend_from_slice(row);
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    pub fn lu(&self) -> Lu {
        Lu::factor(self)
    }

    pub fn determinant(&self) -> f64 {
        self.lu().determinant()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// PA = LU with unit-diagonal L packed below the diagonal of `lu`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    scale: f64,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Self {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;

        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let v = lu[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    lu[(i, j)] -= f * lu[(k, j)];
                }
            }
        }

        Self {
            scale: a.max_abs(),
            lu,
            perm,
            sign,
        }
    }

    pub fn determinant(&self) -> f64 {
        (0..self.lu.dim()).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }

    /// True when some pivot is negligible relative to the largest input entry.
    pub fn is_singular(&self) -> bool {
        let n = self.lu.dim();
        let cutoff = 1e-12 * self.scale * n as f64;
        self.scale == 0.0 || (0..n).any(|i| self.lu[(i, i)].abs() <= cutoff)
    }

    /// Solves `A x = b`; `None` when the factorization is singular.
    pub fn solve(&self, b: &[f64]) -> Option<Vec<f64>> {
        let n = self.lu.dim();
        assert_eq!(b.len(), n);
        if self.is_singular() {
            return None;
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        Some(x)
    }
}

/// Determinant compared against zero with a scale-aware cutoff:
/// `|det| < 1e-9 * (1 + max|entry|)^n`.
pub fn is_determinant_zero(det: f64, a: &Matrix) -> bool {
    det.abs() < 1e-9 * (1.0 + a.max_abs()).powi(a.dim() as i32)
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination. `None` if `A` is singular.
pub fn solve_exact(a: &[Vec<Rational64>], b: &[Rational64]) -> Option<Vec<Rational64>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();

    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let pivot = m[k][k];
        for v in m[k].iter_mut() {
            *v /= pivot;
        }
        let row = m[k].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != k && !r[k].is_zero() {
                let f = r[k];
                for (v, t) in r.iter_mut().zip(&row).skip(k) {
                    *v -= f * t;
                }
            }
        }
    }
    debug_assert!((0..n).all(|i| m[i][i].is_one()));
    Some(m.into_iter().map(|r| r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn determinant_of_identity_and_permutation() {
        assert_eq!(Matrix::identity(4).determinant(), 1.0);
        let p = Matrix::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        assert_eq!(p.determinant(), -1.0);
    }

    #[test]
    #[allow(clippy::neg_multiply)]
    fn determinant_matches_cofactor_expansion() {
        let m = Matrix::from_rows(&[
            vec![2.0, -1.0, 0.5],
            vec![3.0, 4.0, -2.0],
            vec![-1.0, 0.0, 7.0],
        ]);
        let cofactor = 2.0 * (4.0 * 7.0 - (-2.0) * 0.0) - (-1.0) * (3.0 * 7.0 - (-2.0) * (-1.0))
            + 0.5 * (3.0 * 0.0 - 4.0 * (-1.0));
        assert!((m.determinant() - cofactor).abs() < 1e-12);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let m = Matrix::from_rows(&[
            vec![0.0, 2.0, 1.0],
            vec![1.0, -1.0, 0.0],
            vec![3.0, 0.0, 4.0],
        ]);
        let x = [1.5, -2.0, 0.25];
        let b = m.mul_vec(&x);
        let got = m.lu().solve(&b).unwrap();
        for (g, e) in got.iter().zip(x) {
            assert!((g - e).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_matrix_is_detected() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(m.lu().is_singular());
        assert!(m.lu().solve(&[1.0, 1.0]).is_none());
        assert!(is_determinant_zero(m.determinant(), &m));
        assert!(Matrix::zeros(3).lu().is_singular());
    }

    #[test]
    fn exact_solve() {
        let a = vec![vec![r(0), r(2)], vec![r(3), r(1)]];
        let x = solve_exact(&a, &[r(4), r(5)]).unwrap();
        assert_eq!(x, vec![r(1), r(2)]);
        let sing = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert!(solve_exact(&sing, &[r(1), r(0)]).is_none());
    }
}
