use super::dense::Mat;
use super::field::Fp;

/// Column-compressed sparse matrix over `F_p`.
///
/// Entries inside a column are kept sorted by row and never store zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    field: Fp,
    rows: usize,
    cols: Vec<Vec<(u32, u32)>>,
}

impl SparseMat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        SparseMat {
            field,
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        SparseMat {
            field,
            rows: n,
            cols: (0..n).map(|i| vec![(i as u32, 1 % field.p())]).collect(),
        }
    }

    /// Build from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(field: Fp, rows: usize, cols: usize, trips: &[(usize, usize, u32)]) -> Self {
        let mut dense_cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); cols];
        for &(r, c, v) in trips {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of bounds");
            dense_cols[c].push((r as u32, v % field.p()));
        }
        let mut m = SparseMat {
            field,
            rows,
            cols: Vec::with_capacity(cols),
        };
        for mut col in dense_cols {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(u32, u32)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 = field.add(last.1, v),
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            m.cols.push(merged);
        }
        m
    }

    pub fn from_dense_cols(field: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        SparseMat {
            field,
            rows,
            cols: cols.iter().map(|c| sparsify(c)).collect(),
        }
    }

    pub fn from_dense(m: &Mat) -> Self {
        Self::from_dense_cols(m.field(), m.rows(), &m.columns())
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
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(u32, u32)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn set_col(&mut self, j: usize, v: &[u32]) {
        assert_eq!(v.len(), self.rows);
        self.cols[j] = sparsify(v);
    }

    pub fn push_col(&mut self, v: Vec<(u32, u32)>) {
        self.cols.push(v);
    }

    pub fn triplets(&self) -> Vec<(usize, usize, u32)> {
        let mut t = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            for &(r, v) in c {
                t.push((r as usize, j, v));
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |e| e.0)
            .map_or(0, |k| self.cols[j][k].1)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.rows];
        self.mul_vec_acc(v, 1, &mut out);
        out
    }

    /// `out += scale * self * v`
    pub fn mul_vec_acc(&self, v: &[u32], scale: u32, out: &mut [u32]) {
        assert_eq!(v.len(), self.cols.len());
        let f = self.field;
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = f.mul(x, scale);
            for &(r, a) in &self.cols[j] {
                out[r as usize] = f.mul_add(out[r as usize], a, x);
            }
        }
    }

    /// `self * other`
    pub fn compose(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in composition");
        let f = self.field;
        let mut acc = vec![0u32; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut out = SparseMat::zeros(f, self.rows, 0);
        for col in &other.cols {
            for &(k, b) in col {
                for &(r, a) in &self.cols[k as usize] {
                    let slot = &mut acc[r as usize];
                    if *slot == 0 {
                        touched.push(r);
                    }
                    *slot = f.mul_add(*slot, a, b);
                    if *slot == 0 {
                        // keep the row registered; filtered below
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut c = Vec::with_capacity(touched.len());
            for &r in &touched {
                let v = acc[r as usize];
                if v != 0 {
                    c.push((r, v));
                }
                acc[r as usize] = 0;
            }
            touched.clear();
            out.cols.push(c);
        }
        out
    }

    pub fn transpose(&self) -> SparseMat {
        let mut cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(r, v) in c {
                cols[r as usize].push((j as u32, v));
            }
        }
        SparseMat {
            field: self.field,
            rows: self.cols.len(),
            cols,
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.add_scaled(other, 1)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &SparseMat, c: u32) -> SparseMat {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let f = self.field;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let ra = a.get(i).map_or(u32::MAX, |e| e.0);
                    let rb = b.get(j).map_or(u32::MAX, |e| e.0);
                    let (r, v) = if ra < rb {
                        i += 1;
                        (ra, a[i - 1].1)
                    } else if rb < ra {
                        j += 1;
                        (rb, f.mul(c, b[j - 1].1))
                    } else {
                        i += 1;
                        j += 1;
                        (ra, f.mul_add(a[i - 1].1, c, b[j - 1].1))
                    };
                    if v != 0 {
                        out.push((r, v));
                    }
                }
                out
            })
            .collect();
        SparseMat {
            field: f,
            rows: self.rows,
            cols,
        }
    }

    pub fn scale(&self, c: u32) -> SparseMat {
        self.add_scaled_zero(c)
    }

    fn add_scaled_zero(&self, c: u32) -> SparseMat {
        let f = self.field;
        let c = c % f.p();
        SparseMat {
            field: f,
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|col| {
                    if c == 0 {
                        Vec::new()
                    } else {
                        col.iter().map(|&(r, v)| (r, f.mul(v, c))).collect()
                    }
                })
                .collect(),
        }
    }

    /// Dense copy of the block `rows[r0..r1] x cols[c0..c1]`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut m = Mat::zeros(self.field, r1 - r0, c1 - c0);
        for j in c0..c1 {
            for &(r, v) in &self.cols[j] {
                let r = r as usize;
                if r >= r0 && r < r1 {
                    m.set(r - r0, j - c0, v);
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Mat {
        self.block(0, self.rows, 0, self.cols())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &SparseMat) -> SparseMat {
        let mut cols = self.cols.clone();
        let off = self.rows as u32;
        cols.extend(
            other
                .cols
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r + off, v)).collect()),
        );
        SparseMat {
            field: self.field,
            rows: self.rows + other.rows,
            cols,
        }
    }

    /// Reindex rows and columns: entry `(r, c)` moves to `(row_map[r], col_map[c])`.
    pub fn permute(&self, rows: usize, cols: usize, row_map: &[usize], col_map: &[usize]) -> SparseMat {
        let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); cols];
        for (j, c) in self.cols.iter().enumerate() {
            let nj = col_map[j];
            out[nj] = c.iter().map(|&(r, v)| (row_map[r as usize] as u32, v)).collect();
            out[nj].sort_by_key(|e| e.0);
        }
        SparseMat {
            field: self.field,
            rows,
            cols: out,
        }
    }
}

pub fn sparsify(v: &[u32]) -> Vec<(u32, u32)> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i as u32, x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_dense() {
        let f = Fp::new(7).unwrap();
        let a = Mat::from_i64(f, &[&[1, 2, 0], &[0, 3, 4]]);
        let b = Mat::from_i64(f, &[&[1, 0], &[5, 6], &[0, 2]]);
        let sa = SparseMat::from_dense(&a);
        let sb = SparseMat::from_dense(&b);
        assert_eq!(sa.compose(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        assert_eq!(sa.mul_vec(&[1, 1, 1]), a.mul_vec(&[1, 1, 1]));
        let sum = sa.add_scaled(&sa, 6);
        assert!(sum.is_zero());
    }
}
