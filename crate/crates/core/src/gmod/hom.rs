use super::module::{BlockKey, Module};
use super::sub::echelon_coords;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, SparseMat};

/// Largest number of unknowns accepted by a single equivariance system.
pub const HOM_UNKNOWN_CAP: usize = 8_000;

/// A space of homogeneous module maps `M -> N` raising weights by `shift`.
///
/// Unknowns are the entries of the blocks `(w, c) -> (w + shift, c)`; maps
/// across different base characters vanish automatically. The basis is kept
/// in semi-echelon form so coordinates of a given map are cheap.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: i32,
    /// `(source key, offset)` per unknown block.
    layout: Vec<(BlockKey, usize)>,
    nvars: usize,
    basis: Echelon,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Unknown blocks as `(source key, offset)`.
    pub fn layout(&self) -> &[(BlockKey, usize)] {
        &self.layout
    }

    /// Basis vectors in unknown coordinates.
    pub fn basis_vectors(&self) -> &[Vec<u32>] {
        self.basis.rows()
    }

    /// Unknown-coordinate vector of an arbitrary blockwise linear map.
    pub fn flatten(&self, m: &Module, n: &Module, f: &SparseMat) -> Vec<u32> {
        let mut v = vec![0u32; self.nvars];
        for &(key, off) in &self.layout {
            let src = m.block(key);
            let tgt_key = (key.0 + self.shift, key.1);
            let cols = src.len();
            for (c, &j) in src.iter().enumerate() {
                for &(i, x) in f.col(j) {
                    let i = i as usize;
                    if n.weights()[i] == tgt_key.0 && n.chars()[i] == tgt_key.1 {
                        v[off + n.local_index(i) * cols + c] = x;
                    }
                }
            }
        }
        v
    }

    /// The map with the given unknown coordinates.
    pub fn unflatten(&self, m: &Module, n: &Module, v: &[u32]) -> SparseMat {
        let mut trips = Vec::new();
        for &(key, off) in &self.layout {
            let src = m.block(key);
            let tgt = n.block((key.0 + self.shift, key.1));
            let cols = src.len();
            for (r, &i) in tgt.iter().enumerate() {
                for (c, &j) in src.iter().enumerate() {
                    let x = v[off + r * cols + c];
                    if x != 0 {
                        trips.push((i, j, x));
                    }
                }
            }
        }
        SparseMat::from_triplets(m.field(), n.dim(), m.dim(), &trips)
    }

    /// Basis element `k` as a matrix.
    pub fn map(&self, m: &Module, n: &Module, k: usize) -> SparseMat {
        self.unflatten(m, n, &self.basis.rows()[k])
    }

    pub fn maps(&self, m: &Module, n: &Module) -> Vec<SparseMat> {
        (0..self.dim()).map(|k| self.map(m, n, k)).collect()
    }

    /// Coordinates of a module map in this basis.
    pub fn coords(&self, m: &Module, n: &Module, f: &SparseMat) -> Option<Vec<u32>> {
        echelon_coords(m.field(), &self.basis, &self.flatten(m, n, f))
    }
}

/// Layout of unknowns for maps `M -> N` of the given shift.
pub fn hom_layout(m: &Module, n: &Module, shift: i32) -> (Vec<(BlockKey, usize)>, usize) {
    let mut layout = Vec::new();
    let mut off = 0;
    for (&(w, c), src) in m.blocks() {
        let t = n.block((w + shift, c)).len();
        if t > 0 {
            layout.push(((w, c), off));
            off += t * src.len();
        }
    }
    (layout, off)
}

/// Equivariance rows for unknowns in `layout`: one row per generator,
/// source vector and target coordinate.
pub(crate) fn equivariance_rows(
    m: &Module,
    n: &Module,
    shift: i32,
    layout: &[(BlockKey, usize)],
    nvars: usize,
    mut sink: impl FnMut(Vec<u32>) -> bool,
) {
    let f = m.field();
    let alg = m.alg();
    let nb = alg.base().ngens;
    let offset_of = |key: BlockKey| -> Option<usize> {
        layout
            .binary_search_by(|probe| probe.0.cmp(&key))
            .ok()
            .map(|i| layout[i].1)
    };
    for g in nb..alg.gens().len() {
        let d = alg.degree(alg.gens()[g]);
        let gm = m.act(g);
        let gn = n.act(g);
        for (&(w, c), src) in m.blocks() {
            let tgt_w = w + d + shift;
            let tgt_idx = n.weight_indices(tgt_w);
            if tgt_idx.is_empty() {
                continue;
            }
            let own = offset_of((w, c));
            let own_rows = n.block((w + shift, c));
            for (xc, &x) in src.iter().enumerate() {
                // F(g x) - g F(x), coordinate y
                let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); tgt_idx.len()];
                let tpos = |i: usize| tgt_idx.binary_search(&i).ok();
                for &(xp, gx) in gm.col(x) {
                    let xp = xp as usize;
                    let key = (m.weights()[xp], m.chars()[xp]);
                    let Some(off) = offset_of(key) else { continue };
                    let cols = m.block(key).len();
                    let lx = m.local_index(xp);
                    for (r, &yi) in n.block((key.0 + shift, key.1)).iter().enumerate() {
                        if let Some(t) = tpos(yi) {
                            rows[t].push((off + r * cols + lx, gx));
                        }
                    }
                }
                if let Some(off) = own {
                    let cols = src.len();
                    for (r, &yp) in own_rows.iter().enumerate() {
                        for &(yi, h) in gn.col(yp) {
                            if let Some(t) = tpos(yi as usize) {
                                rows[t].push((off + r * cols + xc, f.neg(h)));
                            }
                        }
                    }
                }
                for entries in rows {
                    if entries.is_empty() {
                        continue;
                    }
                    let mut row = vec![0u32; nvars];
                    for (v, x) in entries {
                        row[v] = f.add(row[v], x);
                    }
                    if !sink(row) {
                        return;
                    }
                }
            }
        }
    }
}

/// Module maps `M -> N` raising weights by `shift`.
pub fn hom_space(m: &Module, n: &Module, shift: i32) -> Result<HomSpace> {
    if !m.same_alg(n) {
        return Err(Error::Incompatible("hom between modules over different algebras".into()));
    }
    let f = m.field();
    let (layout, nvars) = hom_layout(m, n, shift);
    if nvars > HOM_UNKNOWN_CAP {
        return Err(Error::SizeGuard(format!(
            "equivariance system with {nvars} unknowns"
        )));
    }
    let mut eqs = Echelon::new(f, nvars);
    equivariance_rows(m, n, shift, &layout, nvars, |row| {
        eqs.insert(&row);
        !eqs.is_full()
    });
    let ker = eqs.kernel();
    let mut basis = Echelon::new(f, nvars);
    for col in ker.columns() {
        basis.insert(&col);
    }
    Ok(HomSpace {
        shift,
        layout,
        nvars,
        basis,
    })
}

/// Range of shifts for which `Hom(M, N)` can be nonzero.
pub fn shift_range(m: &Module, n: &Module) -> Option<(i32, i32)> {
    Some((n.min_weight()? - m.max_weight()?, n.max_weight()? - m.min_weight()?))
}

/// Total dimension of `Hom(M, N)` over all shifts.
pub fn hom_total_dim(m: &Module, n: &Module) -> Result<usize> {
    let Some((lo, hi)) = shift_range(m, n) else { return Ok(0) };
    let mut t = 0;
    for s in lo..=hi {
        t += hom_space(m, n, s)?.dim();
    }
    Ok(t)
}

/// Find an isomorphism `M -> N` of shift 0 by trying seeded random
/// combinations of a Hom basis.
pub fn find_isomorphism(
    m: &Module,
    n: &Module,
    rng: &mut impl rand::Rng,
    tries: usize,
) -> Result<Option<SparseMat>> {
    if m.dim() != n.dim() || m.weight_dims() != n.weight_dims() {
        return Ok(None);
    }
    let h = hom_space(m, n, 0)?;
    if h.dim() == 0 {
        return Ok(if m.dim() == 0 { Some(SparseMat::zeros(m.field(), 0, 0)) } else { None });
    }
    let f = m.field();
    for attempt in 0..tries {
        let mut v = vec![0u32; h.nvars()];
        for row in h.basis_vectors() {
            let c = if attempt == 0 && h.dim() == 1 {
                1
            } else {
                rng.gen_range(0..f.p())
            };
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = f.mul_add(*x, c, r);
            }
        }
        let map = h.unflatten(m, n, &v);
        if is_invertible_blockwise(m, n, &map) {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Whether a shift-0 blockwise map is bijective.
pub fn is_invertible_blockwise(m: &Module, n: &Module, f: &SparseMat) -> bool {
    if m.dim() != n.dim() {
        return false;
    }
    m.blocks().iter().all(|(&key, src)| {
        let tgt = n.block(key);
        tgt.len() == src.len() && Module::dense_block(f, tgt, src, m.field()).rank() == src.len()
    }) && n.blocks().keys().all(|k| !m.block(*k).is_empty())
}
