use super::field::Fp;
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of a row reduction: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    pub fn from_rows(field: Fp, rows: &[Vec<u32>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| x % field.p()));
        }
        Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(field: Fp, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.reduce(x)).collect())
            .collect();
        Mat::from_rows(field, &rows, cols)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: Fp, nrows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Mat::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let p = f.p() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Mat {
            field: f,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            m.data[i * m.cols..i * m.cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * m.cols + self.cols..(i + 1) * m.cols].copy_from_slice(other.row(i));
        }
        m
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let p = f.p() as u64;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.data[r * cols + c]);
            for j in c..cols {
                m.data[r * cols + j] = f.mul(m.data[r * cols + j], inv);
            }
            let (before, rest) = m.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for j in c..cols {
                    let b = prow[j];
                    if b != 0 {
                        row[j] = ((row[j] as u64 + neg * b as u64) % p) as u32;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            // eliminating the shorter side is cheaper and rank is transpose-invariant
            return self.transpose().rref().pivots.len();
        }
        self.rref().pivots.len()
    }

    /// Columns spanning `{v : M v = 0}`, in RREF-adapted form: each basis
    /// vector has a 1 at its own free column and 0 at all other free columns.
    pub fn nullspace(&self) -> Mat {
        let Rref { mat, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.field, self.cols, free.len());
        let f = self.field;
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * k.cols + j] = 1 % f.p();
            for (r, &pc) in pivots.iter().enumerate() {
                k.data[pc * k.cols + j] = f.neg(mat.get(r, fc));
            }
        }
        k
    }

    pub fn rank_nullspace(&self) -> (usize, Mat) {
        let k = self.nullspace();
        (self.cols - k.cols(), k)
    }

    /// Some `x` with `M x = b`, or `None` if `b` is not in the image.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Mat::from_cols(self.field, self.rows, &[b.to_vec()]));
        let Rref { mat, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = mat.get(r, self.cols);
        }
        Some(x)
    }

    /// Solve `M X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_many(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let Rref { mat, pivots } = aug.rref();
        let npiv = pivots.iter().filter(|&&c| c < self.cols).count();
        if (npiv..mat.rows).any(|r| (self.cols..aug.cols).any(|j| mat.get(r, j) != 0)) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate().take(npiv) {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = mat.get(r, self.cols + j);
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_many(&Mat::identity(self.field, self.rows))
            .filter(|_| self.rank() == self.rows)
    }
}

/// Projection `V -> V/W` together with a section `V/W -> V`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub projection: Mat,
    pub section: Mat,
}

/// Quotient of `F_p^v_dim` by the span of the columns of `w_basis`.
///
/// The section picks the standard basis vectors at the non-pivot positions of
/// `w_basis^T`; the projection reads coordinates with respect to the basis
/// `[w_basis | section]`.
pub fn quotient_basis(field: Fp, v_dim: usize, w_basis: &Mat) -> Result<Quotient> {
    assert_eq!(w_basis.rows(), v_dim);
    let wt = w_basis.transpose();
    let Rref { mat: red, pivots } = wt.rref();
    if pivots.len() != w_basis.cols() {
        return Err(Error::NotABasis);
    }
    let free: Vec<usize> = (0..v_dim).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();
    let mut section = Mat::zeros(field, v_dim, q);
    for (j, &c) in free.iter().enumerate() {
        section.set(c, j, 1);
    }
    // coordinate of v along the free directions: v_free - sum_r v_{pivot r} * red[r][free]
    let mut projection = Mat::zeros(field, q, v_dim);
    for (j, &c) in free.iter().enumerate() {
        projection.set(j, c, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            let x = red.get(r, c);
            if x != 0 {
                projection.set(j, pc, field.neg(x));
            }
        }
    }
    Ok(Quotient {
        projection,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn zero_matrix_rank() {
        let m = Mat::zeros(f(5), 2, 3);
        let (r, k) = m.rank_nullspace();
        assert_eq!((r, k.cols()), (0, 3));
    }

    #[test]
    fn identity_rank() {
        let (r, k) = Mat::identity(f(3), 4).rank_nullspace();
        assert_eq!((r, k.cols()), (4, 0));
    }

    #[test]
    fn rank_one_over_f5() {
        // brute force over F_5^2 finds exactly the multiples of (3,1)
        let fld = f(5);
        let m = Mat::from_i64(fld, &[&[1, 2], &[2, 4]]);
        let mut kernel = Vec::new();
        for x in 0..5u32 {
            for y in 0..5u32 {
                if m.mul_vec(&[x, y]) == vec![0, 0] {
                    kernel.push((x, y));
                }
            }
        }
        assert_eq!(kernel.len(), 5);
        assert!(kernel.contains(&(3, 1)));
        let (r, k) = m.rank_nullspace();
        assert_eq!(r, 1);
        assert_eq!(k.cols(), 1);
        let v = k.col(0);
        assert!(kernel.contains(&(v[0], v[1])));
    }

    #[test]
    fn solve_examples() {
        let fld = f(3);
        let m = Mat::from_i64(fld, &[&[1, 1], &[0, 2]]);
        let x = m.solve(&[0, 1]).unwrap();
        assert_eq!(x, vec![1, 2]);
        assert_eq!(m.mul_vec(&x), vec![0, 1]);
        let z = Mat::zeros(fld, 2, 2);
        assert!(z.solve(&[1, 0]).is_none());
        let i = Mat::identity(fld, 3);
        assert_eq!(i.solve(&[2, 0, 1]).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn quotient_examples() {
        let fld = f(2);
        let q = quotient_basis(fld, 3, &Mat::zeros(fld, 3, 0)).unwrap();
        assert_eq!(q.projection, Mat::identity(fld, 3));
        let q = quotient_basis(fld, 3, &Mat::identity(fld, 3)).unwrap();
        assert_eq!(q.projection.rows(), 0);
        let w = Mat::from_cols(fld, 3, &[vec![1, 0, 0]]);
        let q = quotient_basis(fld, 3, &w).unwrap();
        assert_eq!(q.projection.rows(), 2);
        assert!(q.projection.mul(&w).is_zero());
        assert_eq!(q.projection.mul(&q.section), Mat::identity(fld, 2));
        let dep = Mat::from_cols(fld, 3, &[vec![1, 0, 0], vec![1, 0, 0]]);
        assert!(matches!(quotient_basis(fld, 3, &dep), Err(Error::NotABasis)));
    }
}
