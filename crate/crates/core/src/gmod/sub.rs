//! Submodules, quotients, kernels and images, all computed blockwise.

use std::collections::BTreeMap;

use super::module::{BlockKey, Module};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Fp, SparseMat};

/// A subspace of a module spanned blockwise, i.e. stable under the base.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    spaces: BTreeMap<BlockKey, Echelon>,
}

/// A submodule with its inclusion map.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Module,
    pub incl: SparseMat,
    pub space: GradedSubspace,
}

/// A quotient module with projection and a linear section.
#[derive(Clone, Debug)]
pub struct Quo {
    pub module: Module,
    pub proj: SparseMat,
    pub section: SparseMat,
}

/// Split a sparse global vector into block-local dense components.
pub(crate) fn split_blocks(m: &Module, v: &[(u32, u32)]) -> BTreeMap<BlockKey, Vec<u32>> {
    let mut out: BTreeMap<BlockKey, Vec<u32>> = BTreeMap::new();
    for &(i, x) in v {
        if x == 0 {
            continue;
        }
        let i = i as usize;
        let key = (m.weights()[i], m.chars()[i]);
        let len = m.block(key).len();
        out.entry(key).or_insert_with(|| vec![0; len])[m.local_index(i)] = x;
    }
    out
}

fn accumulate(field: Fp, acc: &mut BTreeMap<u32, u32>, col: &[(u32, u32)], scale: u32) {
    for &(i, v) in col {
        let e = acc.entry(i).or_insert(0);
        *e = field.mul_add(*e, v, scale);
    }
}

/// `mat` applied to a block-local vector, as a sparse global vector.
pub(crate) fn apply_local(
    m: &Module,
    mat: &SparseMat,
    key: BlockKey,
    v: &[u32],
) -> Vec<(u32, u32)> {
    let f = m.field();
    let idx = m.block(key);
    let mut acc = BTreeMap::new();
    for (r, &x) in v.iter().enumerate() {
        if x != 0 {
            accumulate(f, &mut acc, mat.col(idx[r]), x);
        }
    }
    acc.into_iter().filter(|&(_, x)| x != 0).collect()
}

/// Coordinates of `v` in the semi-echelon basis, or `None` if outside.
pub(crate) fn echelon_coords(f: Fp, ech: &Echelon, v: &[u32]) -> Option<Vec<u32>> {
    let mut w = v.to_vec();
    let mut coords = Vec::with_capacity(ech.dim());
    for (row, &pc) in ech.rows().iter().zip(ech.pivots()) {
        let c = w[pc];
        coords.push(c);
        if c != 0 {
            let neg = f.neg(c);
            for (x, &r) in w[pc..].iter_mut().zip(&row[pc..]) {
                if r != 0 {
                    *x = f.mul_add(*x, neg, r);
                }
            }
        }
    }
    w.iter().all(|&x| x == 0).then_some(coords)
}

impl GradedSubspace {
    pub fn empty() -> Self {
        GradedSubspace {
            spaces: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(Echelon::dim).sum()
    }

    pub fn block(&self, key: BlockKey) -> Option<&Echelon> {
        self.spaces.get(&key)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockKey, &Echelon)> {
        self.spaces.iter()
    }

    /// Insert a block-local vector; returns the reduced new row if the span
    /// grew.
    pub fn insert_local(&mut self, m: &Module, key: BlockKey, v: &[u32]) -> bool {
        let len = m.block(key).len();
        self.spaces
            .entry(key)
            .or_insert_with(|| Echelon::new(m.field(), len))
            .insert(v)
    }

    /// Insert every block component of a global sparse vector.
    pub fn insert_global(&mut self, m: &Module, v: &[(u32, u32)]) -> Vec<(BlockKey, Vec<u32>)> {
        let mut grown = Vec::new();
        for (key, loc) in split_blocks(m, v) {
            if self.insert_local(m, key, &loc) {
                let row = self.spaces[&key].rows().last().unwrap().clone();
                grown.push((key, row));
            }
        }
        grown
    }

    pub fn contains_global(&self, m: &Module, v: &[(u32, u32)]) -> bool {
        split_blocks(m, v).iter().all(|(key, loc)| {
            self.spaces
                .get(key)
                .is_some_and(|e| e.contains(loc))
        })
    }

    /// The subspace spanned by the given global vectors, split into blocks.
    pub fn span(m: &Module, vecs: &[Vec<(u32, u32)>]) -> Self {
        let mut s = Self::empty();
        for v in vecs {
            s.insert_global(m, v);
        }
        s
    }

    /// Submodule generated by the given global vectors.
    pub fn generated(m: &Module, vecs: &[Vec<(u32, u32)>]) -> Self {
        let mut s = Self::empty();
        s.extend_generated(m, vecs);
        s
    }

    /// Enlarge a submodule by the submodule generated by `vecs`.
    pub fn extend_generated(&mut self, m: &Module, vecs: &[Vec<(u32, u32)>]) {
        let mut frontier: Vec<(BlockKey, Vec<u32>)> = Vec::new();
        for v in vecs {
            frontier.extend(self.insert_global(m, v));
        }
        let nb = m.alg().base().ngens;
        while let Some((key, row)) = frontier.pop() {
            for g in nb..m.acts().len() {
                let img = apply_local(m, m.act(g), key, &row);
                frontier.extend(self.insert_global(m, &img));
            }
        }
    }

    /// Whether the subspace is stable under all generators.
    pub fn is_submodule(&self, m: &Module) -> bool {
        let nb = m.alg().base().ngens;
        self.spaces.iter().all(|(&key, e)| {
            e.rows().iter().all(|row| {
                (nb..m.acts().len()).all(|g| {
                    self.contains_global(m, &apply_local(m, m.act(g), key, row))
                })
            })
        })
    }

    fn offsets(&self) -> BTreeMap<BlockKey, usize> {
        let mut off = BTreeMap::new();
        let mut t = 0;
        for (k, e) in &self.spaces {
            off.insert(*k, t);
            t += e.dim();
        }
        off
    }

    /// Coordinates of a global vector in the subspace basis.
    pub fn coords(&self, m: &Module, v: &[(u32, u32)]) -> Option<Vec<(u32, u32)>> {
        let off = self.offsets();
        let mut out = Vec::new();
        for (key, loc) in split_blocks(m, v) {
            let e = self.spaces.get(&key)?;
            let c = echelon_coords(m.field(), e, &loc)?;
            let o = off[&key];
            out.extend(
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| *x != 0)
                    .map(|(r, x)| ((o + r) as u32, x)),
            );
        }
        out.sort_unstable();
        Some(out)
    }

    /// Inclusion matrix, columns being the subspace basis.
    pub fn inclusion(&self, m: &Module) -> SparseMat {
        let mut incl = SparseMat::zeros(m.field(), m.dim(), 0);
        for (&key, e) in &self.spaces {
            let idx = m.block(key);
            for row in e.rows() {
                let mut col: Vec<(u32, u32)> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(r, &x)| (idx[r] as u32, x))
                    .collect();
                col.sort_unstable();
                incl.push_col(col);
            }
        }
        incl
    }

    /// The submodule on this subspace; fails if it is not stable.
    pub fn submodule(self, m: &Module) -> Result<Sub> {
        let incl = self.inclusion(m);
        let mut weights = Vec::with_capacity(incl.cols());
        let mut chars = Vec::with_capacity(incl.cols());
        for (&(w, c), e) in &self.spaces {
            for _ in 0..e.dim() {
                weights.push(w);
                chars.push(c);
            }
        }
        let n = incl.cols();
        let mut acts = Vec::with_capacity(m.acts().len());
        for act in m.acts() {
            let img = act.compose(&incl);
            let mut trips = Vec::new();
            for j in 0..n {
                let c = self.coords(m, img.col(j)).ok_or_else(|| {
                    Error::ModuleAxiom("subspace is not a submodule".into())
                })?;
                trips.extend(c.into_iter().map(|(i, x)| (i as usize, j, x)));
            }
            acts.push(SparseMat::from_triplets(m.field(), n, n, &trips));
        }
        let module = Module::assemble(m.alg().clone(), weights, chars, acts);
        Ok(Sub {
            module,
            incl,
            space: self,
        })
    }

    /// Quotient of `m` by this subspace, which must be a submodule.
    pub fn quotient(&self, m: &Module) -> Quo {
        let f = m.field();
        let mut weights = Vec::new();
        let mut chars = Vec::new();
        let mut sec_cols: Vec<Vec<(u32, u32)>> = Vec::new();
        // for each block: map local position -> quotient index (non-pivots)
        let mut qpos: BTreeMap<BlockKey, Vec<Option<usize>>> = BTreeMap::new();
        for (&key, idx) in m.blocks() {
            let mut is_piv = vec![false; idx.len()];
            if let Some(e) = self.spaces.get(&key) {
                for &pc in e.pivots() {
                    is_piv[pc] = true;
                }
            }
            let mut pos = vec![None; idx.len()];
            for r in 0..idx.len() {
                if !is_piv[r] {
                    pos[r] = Some(weights.len());
                    weights.push(key.0);
                    chars.push(key.1);
                    sec_cols.push(vec![(idx[r] as u32, 1)]);
                }
            }
            qpos.insert(key, pos);
        }
        let nq = weights.len();
        let mut section = SparseMat::zeros(f, m.dim(), 0);
        for c in sec_cols {
            section.push_col(c);
        }
        let mut trips = Vec::new();
        for (&key, idx) in m.blocks() {
            let pos = &qpos[&key];
            for (r, &gi) in idx.iter().enumerate() {
                let mut v = vec![0u32; idx.len()];
                v[r] = 1;
                if let Some(e) = self.spaces.get(&key) {
                    e.reduce(&mut v);
                }
                for (t, &x) in v.iter().enumerate() {
                    if x != 0 {
                        let q = pos[t].expect("reduced vector vanishes on pivots");
                        trips.push((q, gi, x));
                    }
                }
            }
        }
        let proj = SparseMat::from_triplets(f, nq, m.dim(), &trips);
        let acts = m
            .acts()
            .iter()
            .map(|a| proj.compose(&a.compose(&section)))
            .collect();
        let module = Module::assemble(m.alg().clone(), weights, chars, acts);
        Quo {
            module,
            proj,
            section,
        }
    }
}

/// Kernel of a module map `f: M -> N` raising weights by `shift`.
pub fn kernel(m: &Module, n: &Module, f: &SparseMat, shift: i32) -> GradedSubspace {
    let field = m.field();
    let mut s = GradedSubspace::empty();
    for (&(w, c), idx) in m.blocks() {
        let tgt = n.block((w + shift, c));
        let dense = Module::dense_block(f, tgt, idx, field);
        let ker = dense.nullspace();
        for col in ker.columns() {
            s.insert_local(m, (w, c), &col);
        }
    }
    s
}

/// Image of a module map as a subspace of the target.
pub fn image(m: &Module, n: &Module, f: &SparseMat, shift: i32) -> GradedSubspace {
    let field = m.field();
    let mut s = GradedSubspace::empty();
    for (&(w, c), idx) in m.blocks() {
        let key = (w + shift, c);
        let tgt = n.block(key);
        if tgt.is_empty() {
            continue;
        }
        let dense = Module::dense_block(f, tgt, idx, field);
        for col in dense.columns() {
            s.insert_local(n, key, &col);
        }
    }
    s
}

/// Whether `f: M -> N` (raising weights by `shift`) commutes with the action.
pub fn is_module_map(m: &Module, n: &Module, f: &SparseMat, shift: i32) -> bool {
    if f.rows() != n.dim() || f.cols() != m.dim() {
        return false;
    }
    for j in 0..m.dim() {
        for &(i, _) in f.col(j) {
            let (i, j) = (i as usize, j);
            if n.weights()[i] != m.weights()[j] + shift || n.chars()[i] != m.chars()[j] {
                return false;
            }
        }
    }
    m.acts()
        .iter()
        .zip(n.acts())
        .all(|(a, b)| f.compose(a) == b.compose(f))
}

/// Rank of a blockwise map, computed block by block.
pub fn block_rank(m: &Module, n: &Module, f: &SparseMat, shift: i32) -> usize {
    m.blocks()
        .iter()
        .map(|(&(w, c), idx)| {
            let tgt = n.block((w + shift, c));
            if tgt.is_empty() {
                0
            } else {
                Module::dense_block(f, tgt, idx, m.field()).rank()
            }
        })
        .sum()
}
