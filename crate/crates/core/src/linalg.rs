//! Small dense linear algebra: matrices, a cyclic Jacobi eigensolver, the
//! generalized symmetric eigenproblem, linear solves and exact integer rank.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Off-diagonal threshold of the Jacobi sweeps, relative to the Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Row-major dense matrix of `f64`.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn from_columns(cols: &[Vec<f64>]) -> Self {
        Matrix::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.data[k * o.cols + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "shape mismatch");
        (0..self.rows).map(|r| dot(self.row(r), x)).collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    pub fn symmetrize(&self) -> Matrix {
        self.add(&self.transpose()).scale(0.5)
    }

    /// Rows and columns restricted to `idx`.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_p(a: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        a.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        a.iter().map(|v| v.abs()).sum()
    } else if p == 2.0 {
        norm2(a)
    } else {
        a.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Hölder conjugate exponent.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub sweeps: usize,
}

impl SymEigen {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }
}

/// Cyclic Jacobi for a symmetric matrix.
pub fn symmetric_eigen(a: &Matrix) -> Result<SymEigen> {
    if a.rows != a.cols {
        return Err(Error::Dimension { expected: a.rows, got: a.cols });
    }
    let n = a.rows;
    let mut m = a.symmetrize();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n).map(|i| (0..n).filter(|&j| j != i).map(|j| m[(i, j)] * m[(i, j)]).sum::<f64>()).sum();
        if off.sqrt() <= JACOBI_TOL * scale || off == 0.0 {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(format!("Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| m[(a, a)].partial_cmp(&m[(b, b)]).unwrap_or(std::cmp::Ordering::Equal));
    let values = idx.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (c, &i) in idx.iter().enumerate() {
        for r in 0..n {
            vectors[(r, c)] = v[(r, i)];
        }
    }
    Ok(SymEigen { values, vectors, sweeps })
}

pub fn eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(a)?.values)
}

/// `B^{-1/2}` of a symmetric positive definite matrix.
pub fn inverse_sqrt(b: &Matrix) -> Result<Matrix> {
    let e = symmetric_eigen(b)?;
    let scale = b.max_abs().max(f64::MIN_POSITIVE);
    if e.values.iter().any(|&l| l <= 1e-12 * scale) {
        return Err(Error::NotPositiveDefinite);
    }
    let n = b.rows;
    let mut out = Matrix::zeros(n, n);
    for k in 0..n {
        let s = 1.0 / e.values[k].sqrt();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += s * e.vectors[(i, k)] * e.vectors[(j, k)];
            }
        }
    }
    Ok(out)
}

/// Generalized eigenpairs `A v = λ B v`, ascending, with `vᵀBv = 1`.
#[derive(Debug, Clone)]
pub struct GenEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub max_residual: f64,
}

pub fn generalized_eigen(a: &Matrix, b: &Matrix) -> Result<GenEigen> {
    if a.rows != b.rows || a.cols != b.cols || a.rows != a.cols {
        return Err(Error::Dimension { expected: a.rows, got: b.rows });
    }
    let bi = inverse_sqrt(b)?;
    let c = bi.mul(a).mul(&bi).symmetrize();
    let e = symmetric_eigen(&c)?;
    let w = bi.mul(&e.vectors);
    let n = a.rows;
    let mut vectors = Vec::with_capacity(n);
    let mut max_residual: f64 = 0.0;
    let an = a.frobenius().max(1.0);
    for k in 0..n {
        let v = w.column(k);
        let av = a.mul_vec(&v);
        let bv = b.mul_vec(&v);
        let r: f64 = av.iter().zip(&bv).map(|(x, y)| (x - e.values[k] * y).powi(2)).sum::<f64>().sqrt();
        max_residual = max_residual.max(r / an);
        vectors.push(v);
    }
    Ok(GenEigen { values: e.values, vectors, max_residual })
}

/// Gaussian elimination with partial pivoting.
pub fn solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.rows;
    if a.cols != n || b.len() != n {
        return Err(Error::Dimension { expected: n, got: b.len() });
    }
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[(i, col)].abs().partial_cmp(&m[(j, col)].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if m[(piv, col)].abs() <= 1e-14 * scale {
            return Err(Error::Invalid("singular system".into()));
        }
        if piv != col {
            for c in 0..n {
                let t = m[(col, c)];
                m[(col, c)] = m[(piv, c)];
                m[(piv, c)] = t;
            }
            rhs.swap(col, piv);
        }
        for r in (col + 1)..n {
            let f = m[(r, col)] / m[(col, col)];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[(r, c)] -= f * m[(col, c)];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = ((r + 1)..n).map(|c| m[(r, c)] * x[c]).sum();
        x[r] = (rhs[r] - s) / m[(r, r)];
    }
    Ok(x)
}

/// Orthonormal basis of the orthogonal complement of `span(basis)` in `R^n`.
pub fn orthogonal_complement(basis: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::new();
    let push = |v: &[f64], q: &mut Vec<Vec<f64>>| -> bool {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for u in q.iter() {
                let c = dot(&w, u);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= c * ui;
                }
            }
        }
        let nw = norm2(&w);
        if nw > 1e-10 {
            q.push(w.iter().map(|a| a / nw).collect());
            true
        } else {
            false
        }
    };
    for b in basis {
        push(b, &mut q);
    }
    let start = q.len();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        push(&e, &mut q);
    }
    q.split_off(start)
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.data[k * o.cols + j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn scale(&self, s: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn map_abs(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.abs()).collect() }
    }

    pub fn to_f64(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| a as f64).collect() }
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Exact rank by rational elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| Rational::from_integer(self[(r, c)] as i128)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| *m[r][col].numer() != 0) else { continue };
            m.swap(rank, piv);
            for r in 0..self.rows {
                if r != rank && *m[r][col].numer() != 0 {
                    let f = m[r][col] / m[rank][col];
                    for c in col..self.cols {
                        let sub = f * m[rank][c];
                        m[r][c] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_p3_adjacency() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]);
        let e = symmetric_eigen(&a).unwrap();
        let s = 2f64.sqrt();
        for (v, t) in e.values.iter().zip([-s, 0.0, s]) {
            assert!((v - t).abs() < 1e-12);
        }
        let vt = e.vectors.transpose().mul(&e.vectors);
        assert!(vt.sub(&Matrix::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn generalized_normalized_laplacian_p3() {
        let l = Matrix::from_rows(&[vec![1.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 1.0]]);
        let d = Matrix::diag(&[1.0, 2.0, 1.0]);
        let g = generalized_eigen(&l, &d).unwrap();
        for (v, t) in g.values.iter().zip([0.0, 1.0, 2.0]) {
            assert!((v - t).abs() < 1e-12);
        }
        assert!(g.max_residual < 1e-9);
    }

    #[test]
    fn not_positive_definite() {
        let b = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert!(matches!(generalized_eigen(&Matrix::identity(2), &b), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn solves_and_complements() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        let q = orthogonal_complement(&[vec![1.0, 1.0, 1.0]], 3);
        assert_eq!(q.len(), 2);
        for v in &q {
            assert!(dot(v, &[1.0, 1.0, 1.0]).abs() < 1e-12);
        }
    }

    #[test]
    fn integer_rank() {
        let mut m = IntMatrix::zeros(3, 3);
        m[(0, 0)] = 1;
        m[(0, 1)] = -1;
        m[(1, 1)] = 1;
        m[(1, 2)] = -1;
        m[(2, 0)] = -1;
        m[(2, 2)] = 1;
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
    }
}
