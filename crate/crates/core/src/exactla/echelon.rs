use super::dense::Mat;
use super::field::Fp;

/// Incrementally maintained semi-echelon basis of a subspace of `F_p^n`.
///
/// Row `k` has a 1 at `pivots[k]` and zeros at the pivots of all rows
/// inserted before it, so a single in-order pass reduces any vector.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Fp, n: usize) -> Self {
        Echelon {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` in place against the basis.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        let p = f.p() as u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (x, &r) in v[pc..].iter_mut().zip(&row[pc..]) {
                if r != 0 {
                    *x = ((*x as u64 + neg * r as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns true iff it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        if self.rows.len() == self.n {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]);
        for x in w[pc..].iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Basis of the span as matrix columns.
    pub fn basis(&self) -> Mat {
        Mat::from_cols(self.field, self.n, &self.rows)
    }

    /// Kernel of the linear map whose rows were inserted (solution space of
    /// the homogeneous system).
    pub fn kernel(&self) -> Mat {
        Mat::from_rows(self.field, &self.rows, self.n).nullspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_tracks_rank() {
        let f = Fp::new(5).unwrap();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(!e.insert(&[2, 4, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(e.contains(&[1, 3, 1]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.kernel().cols(), 1);
    }
}
