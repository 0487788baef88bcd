//! Small dense complex matrices: products, nullspaces, unitarity checks.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::cyclo::format_complex;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Largest entrywise distance.
    pub fn max_dist(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.rows == self.cols && (&self.adjoint() * self).max_dist(&CMatrix::identity(self.rows)) < tol
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm())).expect("nonempty");
            if a[(p, k)].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
                det = -det;
            }
            let pivot = a[(k, k)];
            det *= pivot;
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                if f.norm() != 0.0 {
                    for j in k..n {
                        let v = a[(k, j)];
                        a[(i, j)] -= f * v;
                    }
                }
            }
        }
        det
    }

    /// Basis of `{v : A v = 0}`, read off the reduced row echelon form.
    ///
    /// Pivots below `tol` (relative to the largest entry) count as zero.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<Complex64>> {
        let mut a = self.clone();
        let scale = a.data.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        let (m, n) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let p = (r..m).max_by(|&i, &j| a[(i, c)].norm().total_cmp(&a[(j, c)].norm())).expect("nonempty");
            if a[(p, c)].norm() <= tol * scale {
                continue;
            }
            for j in 0..n {
                a.data.swap(p * n + j, r * n + j);
            }
            let inv = a[(r, c)].inv();
            for j in 0..n {
                a[(r, j)] *= inv;
            }
            for i in 0..m {
                if i != r {
                    let f = a[(i, c)];
                    if f.norm() != 0.0 {
                        for j in 0..n {
                            let v = a[(r, j)];
                            a[(i, j)] -= f * v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                v[f] = Complex64::new(1.0, 0.0);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(row, f)];
                }
                v
            })
            .collect()
    }
}

/// Rescales `v` so its largest-magnitude entry (first one on ties) is exactly 1.
pub fn normalize_phase(v: &mut [Complex64]) {
    let Some(k) = v
        .iter()
        .enumerate()
        .fold(None::<(usize, f64)>, |best, (i, z)| match best {
            Some((_, b)) if z.norm() <= b * (1.0 + 1e-12) => best,
            _ => Some((i, z.norm())),
        })
        .map(|(i, _)| i)
    else {
        return;
    };
    if v[k].norm() == 0.0 {
        return;
    }
    let s = v[k].inv();
    for z in v.iter_mut() {
        *z *= s;
    }
    v[k] = Complex64::new(1.0, 0.0);
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|&z| format_complex(z)).collect()).collect();
        rows.serialize(s)
    }
}
