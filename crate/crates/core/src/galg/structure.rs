use crate::exactla::{Echelon, Fp, Mat};

/// Bare structure constants of a finite-dimensional algebra, without grading.
///
/// `mult[i * n + j]` lists `(k, c)` with `a_i a_j = sum c a_k`, sorted by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub field: Fp,
    pub n: usize,
    pub mult: Vec<Vec<(u32, u32)>>,
    pub unit: Vec<u32>,
}

impl Structure {
    pub fn product(&self, i: usize, j: usize) -> &[(u32, u32)] {
        &self.mult[i * self.n + j]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        v[i] = 1 % self.field.p();
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = f.mul(x, y);
                for &(k, c) in self.product(i, j) {
                    out[k as usize] = f.mul_add(out[k as usize], xy, c);
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x`.
    pub fn left_mat(&self, a: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field, self.n, self.n);
        for j in 0..self.n {
            let col = self.mul(a, &self.basis_vec(j));
            for (i, &v) in col.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Matrix of `x -> x a`.
    pub fn right_mat(&self, a: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field, self.n, self.n);
        for j in 0..self.n {
            let col = self.mul(&self.basis_vec(j), a);
            for (i, &v) in col.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Structure constants of the subalgebra spanned by the basis elements
    /// `idx`, or the first offending product.
    pub fn restrict(&self, idx: &[usize]) -> std::result::Result<Structure, String> {
        let mut pos = vec![usize::MAX; self.n];
        for (a, &i) in idx.iter().enumerate() {
            pos[i] = a;
        }
        let m = idx.len();
        let mut mult = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                let mut entry = Vec::new();
                for &(k, c) in self.product(i, j) {
                    let q = pos[k as usize];
                    if q == usize::MAX {
                        return Err(format!("a{i} * a{j} has a component along a{k}"));
                    }
                    entry.push((q as u32, c));
                }
                entry.sort_by_key(|e| e.0);
                mult.push(entry);
            }
        }
        let mut unit = vec![0; m];
        for (k, &c) in self.unit.iter().enumerate() {
            if c != 0 {
                let q = pos[k];
                if q == usize::MAX {
                    return Err(format!("the unit has a component along a{k}"));
                }
                unit[q] = c;
            }
        }
        Ok(Structure {
            field: self.field,
            n: m,
            mult,
            unit,
        })
    }

    pub fn opposite(&self) -> Structure {
        let n = self.n;
        let mut mult = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                mult[i * n + j] = self.product(j, i).to_vec();
            }
        }
        Structure {
            field: self.field,
            n,
            mult,
            unit: self.unit.clone(),
        }
    }

    /// Span of all products of the given elements together with the unit.
    pub fn generated(&self, elems: &[Vec<u32>]) -> Echelon {
        let mut span = Echelon::new(self.field, self.n);
        let mut frontier = vec![self.unit.clone()];
        span.insert(&self.unit);
        while let Some(w) = frontier.pop() {
            for g in elems {
                let v = self.mul(g, &w);
                if span.insert(&v) {
                    frontier.push(v);
                }
            }
        }
        span
    }
}
