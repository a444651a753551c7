//! Small dense matrices: complex double-precision and exact rational.
//!
//! Everything here is desk scale. Complex matrices carry representation
//! data and the maps assembled by the limit functor; rational matrices
//! carry the lattice projectors of the quantum double oracle, where
//! exactness makes disagreements decisive.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for automorphism weights, groupoid
/// cardinalities and oracle matrices.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Desk-scale rationals fit comfortably; fall back to string parsing
    // only if the parts exceed i128.
    match (i128::try_from(num.clone()), i128::try_from(den.clone())) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => num.to_string().parse::<f64>().unwrap_or(f64::NAN)
            / den.to_string().parse::<f64>().unwrap_or(f64::NAN),
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn scalar(z: Complex64) -> Self {
        CMat { rows: 1, cols: 1, data: vec![z] }
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= z;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry; zero for empty matrices.
    pub fn norm_inf(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<Complex64>>) -> CMat {
        let c = cols.len();
        let mut out = CMat::zeros(rows, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                out[(i, j)] = col[i];
            }
        }
        out
    }

    /// Orthonormal basis of the column space, by modified Gram-Schmidt.
    /// Columns whose residual norm falls below `tol` are discarded.
    pub fn column_space_basis(&self, tol: f64) -> CMat {
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        for j in 0..self.cols {
            let mut v = self.col(j);
            for b in &basis {
                let coeff: Complex64 =
                    b.iter().zip(&v).map(|(bi, vi)| bi.conj() * vi).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= coeff * bi;
                }
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > tol {
                for vi in v.iter_mut() {
                    *vi /= norm;
                }
                basis.push(v);
            }
        }
        CMat::from_cols(self.rows, basis)
    }

    /// Entries as row-major `[re, im]` pairs for serialization.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Rounds a float to the nearest integer, failing if it is farther than
/// `tol` from every integer.
pub fn round_to_integer(x: f64, tol: f64, what: &str) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() > tol {
        return Err(Error::numerical(format!(
            "{what}: value {x} is not within {tol} of an integer"
        )));
    }
    Ok(r as i64)
}

/// Dense row-major matrix over exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += self[(i, i)].clone();
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Exact rank by fraction-preserving Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            // partial pivoting by largest absolute value keeps numerators small
            let pivot = (rank..m.rows)
                .filter(|&i| !m[(i, col)].is_zero())
                .max_by(|&a, &b| m[(a, col)].abs().cmp(&m[(b, col)].abs()));
            let Some(p) = pivot else { continue };
            if p != rank {
                for j in 0..m.cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(rank, j)].clone();
                    m[(rank, j)] = tmp;
                }
            }
            let inv = m[(rank, col)].recip();
            for j in col..m.cols {
                let v = &m[(rank, j)] * &inv;
                m[(rank, j)] = v;
            }
            for i in 0..m.rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in col..m.cols {
                        let sub = &f * &m[(rank, j)];
                        m[(i, j)] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmat_mul_eye() {
        let mut a = CMat::zeros(2, 3);
        a[(0, 0)] = Complex64::new(1.0, 2.0);
        a[(1, 2)] = Complex64::new(-3.0, 0.5);
        assert_eq!(CMat::eye(2).mul(&a), a);
        assert_eq!(a.mul(&CMat::eye(3)), a);
    }

    #[test]
    fn cmat_kron_dims() {
        let a = CMat::eye(2);
        let b = CMat::eye(3);
        let k = a.kron(&b);
        assert_eq!((k.rows, k.cols), (6, 6));
        assert!(k.sub(&CMat::eye(6)).norm_inf() < 1e-15);
    }

    #[test]
    fn gram_schmidt_rank() {
        // projector onto span{(1,1)/sqrt(2)}
        let mut p = CMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                p[(i, j)] = Complex64::new(0.5, 0.0);
            }
        }
        let b = p.column_space_basis(1e-9);
        assert_eq!(b.cols, 1);
        let back = b.mul(&b.adjoint());
        assert!(back.sub(&p).norm_inf() < 1e-12);
    }

    #[test]
    fn qmat_rank_exact() {
        let mut m = QMat::zeros(3, 3);
        // rows: (1,2,3), (2,4,6), (0,1,1): rank 2
        let vals = [[1, 2, 3], [2, 4, 6], [0, 1, 1]];
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = rat_int(vals[i][j]);
            }
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn qmat_projector_trace_equals_rank() {
        // averaging projector of the swap action on Q^2
        let mut p = QMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                p[(i, j)] = rat(1, 2);
            }
        }
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.trace(), rat_int(1));
        assert_eq!(p.rank(), 1);
    }
}
