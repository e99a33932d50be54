use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Fp, Mat, SparseMat};
use crate::galg::{GradedAlgebra, Piece};

/// Key of a basis block: weight and base character.
pub type BlockKey = (i32, u16);

/// Finite-dimensional graded left module.
///
/// The basis is adapted to the base subalgebra: every basis vector has a
/// weight and a base character, and base generators act diagonally. Only the
/// action of algebra generators is stored; other elements act through the
/// word basis of the algebra. Right modules are left modules over the
/// opposite algebra.
#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<GradedAlgebra>,
    weights: Vec<i32>,
    chars: Vec<u16>,
    acts: Vec<SparseMat>,
    blocks: BTreeMap<BlockKey, Vec<usize>>,
    local: Vec<u32>,
}

/// Word matrices `rho(w_j)` for the ancestors of the requested words.
pub(crate) fn word_matrices(
    alg: &GradedAlgebra,
    acts: &[SparseMat],
    dim: usize,
    wanted: &[usize],
) -> Vec<Option<SparseMat>> {
    let words = alg.words();
    let mut need = vec![false; alg.dim()];
    for &j in wanted {
        let mut k = j;
        while !need[k] {
            need[k] = true;
            if k == 0 {
                break;
            }
            k = words.parent[k];
        }
    }
    let mut out: Vec<Option<SparseMat>> = vec![None; alg.dim()];
    for j in 0..alg.dim() {
        if !need[j] {
            continue;
        }
        let m = if j == 0 {
            SparseMat::identity(alg.field(), dim)
        } else {
            let parent = out[words.parent[j]].as_ref().expect("parent computed first");
            acts[words.letter[j]].compose(parent)
        };
        out[j] = Some(m);
    }
    out
}

/// `rho(a)` for each element of `elems`, sharing word products.
pub(crate) fn act_elements(
    alg: &GradedAlgebra,
    acts: &[SparseMat],
    dim: usize,
    elems: &[Vec<u32>],
) -> Vec<SparseMat> {
    let f = alg.field();
    let coeffs: Vec<Vec<u32>> = elems.iter().map(|a| alg.word_coeffs(a)).collect();
    let wanted: Vec<usize> = (0..alg.dim())
        .filter(|&j| coeffs.iter().any(|c| c[j] != 0))
        .collect();
    let mats = word_matrices(alg, acts, dim, &wanted);
    coeffs
        .iter()
        .map(|c| {
            let mut acc = SparseMat::zeros(f, dim, dim);
            for (j, &x) in c.iter().enumerate() {
                if x != 0 {
                    acc = acc.add_scaled(mats[j].as_ref().unwrap(), x);
                }
            }
            acc
        })
        .collect()
}

impl Module {
    /// Build a module on an already adapted basis. Checks sizes, grading and
    /// the diagonal action of base generators.
    pub fn new(
        alg: Arc<GradedAlgebra>,
        weights: Vec<i32>,
        chars: Vec<u16>,
        acts: Vec<SparseMat>,
    ) -> Result<Module> {
        let m = Self::assemble(alg, weights, chars, acts);
        m.check_shape()?;
        Ok(m)
    }

    /// Trusted constructor for internal builders whose output is adapted by
    /// construction.
    pub(crate) fn assemble(
        alg: Arc<GradedAlgebra>,
        weights: Vec<i32>,
        chars: Vec<u16>,
        acts: Vec<SparseMat>,
    ) -> Module {
        let mut blocks: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0u32; weights.len()];
        for (i, (&w, &c)) in weights.iter().zip(&chars).enumerate() {
            let b = blocks.entry((w, c)).or_default();
            local[i] = b.len() as u32;
            b.push(i);
        }
        let m = Module {
            alg,
            weights,
            chars,
            acts,
            blocks,
            local,
        };
        debug_assert!(m.check_shape().is_ok(), "{:?}", m.check_shape());
        m
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.dim();
        let alg = &self.alg;
        if self.chars.len() != n || self.acts.len() != alg.gens().len() {
            return Err(Error::ModuleAxiom("size mismatch".into()));
        }
        let base = alg.base();
        for (gi, &g) in alg.gens().iter().enumerate() {
            let act = &self.acts[gi];
            if act.rows() != n || act.cols() != n {
                return Err(Error::ModuleAxiom(format!(
                    "action of {} is not {n}x{n}",
                    alg.names()[g]
                )));
            }
            let d = alg.degree(g);
            for j in 0..n {
                for &(i, v) in act.col(j) {
                    let i = i as usize;
                    if self.weights[i] != self.weights[j] + d {
                        return Err(Error::ModuleAxiom(format!(
                            "{} maps weight {} to weight {}",
                            alg.names()[g],
                            self.weights[j],
                            self.weights[i]
                        )));
                    }
                    if gi < base.ngens {
                        let val = base.gen_values[self.chars[j] as usize][gi];
                        if i != j || v != val {
                            return Err(Error::ModuleAxiom(format!(
                                "base generator {} is not diagonal on the basis",
                                alg.names()[g]
                            )));
                        }
                    }
                }
                if gi < base.ngens {
                    let val = base.gen_values[self.chars[j] as usize][gi];
                    if val != 0 && act.get(j, j) != val {
                        return Err(Error::ModuleAxiom(format!(
                            "base generator {} has the wrong eigenvalue",
                            alg.names()[g]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full module axiom check: `rho(g) rho(w_j) = rho(g w_j)` for every
    /// generator `g` and word `w_j`.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        let alg = &self.alg;
        let all: Vec<usize> = (0..alg.dim()).collect();
        let mats = word_matrices(alg, &self.acts, self.dim(), &all);
        for (gi, &g) in alg.gens().iter().enumerate() {
            for (j, wj) in alg.words().values.iter().enumerate() {
                let prod = alg.mul(&alg.basis_vec(g), wj);
                let c = alg.word_coeffs(&prod);
                let mut expect = SparseMat::zeros(alg.field(), self.dim(), self.dim());
                for (l, &x) in c.iter().enumerate() {
                    if x != 0 {
                        expect = expect.add_scaled(mats[l].as_ref().unwrap(), x);
                    }
                }
                let got = self.acts[gi].compose(mats[j].as_ref().unwrap());
                if got != expect {
                    return Err(Error::ModuleAxiom(format!(
                        "relation fails for {} times word {j}",
                        alg.names()[g]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: Arc<GradedAlgebra>) -> Module {
        let f = alg.field();
        let acts = alg.gens().iter().map(|_| SparseMat::zeros(f, 0, 0)).collect();
        Self::assemble(alg, Vec::new(), Vec::new(), acts)
    }

    pub fn alg(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }
    pub fn field(&self) -> Fp {
        self.alg.field()
    }
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }
    pub fn weights(&self) -> &[i32] {
        &self.weights
    }
    pub fn chars(&self) -> &[u16] {
        &self.chars
    }
    pub fn acts(&self) -> &[SparseMat] {
        &self.acts
    }
    pub fn act(&self, gen_pos: usize) -> &SparseMat {
        &self.acts[gen_pos]
    }
    pub fn blocks(&self) -> &BTreeMap<BlockKey, Vec<usize>> {
        &self.blocks
    }
    pub fn block(&self, key: BlockKey) -> &[usize] {
        self.blocks.get(&key).map_or(&[], Vec::as_slice)
    }
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i] as usize
    }

    /// Indices of all basis vectors of weight `w`.
    pub fn weight_indices(&self, w: i32) -> Vec<usize> {
        self.blocks
            .range((w, 0)..=(w, u16::MAX))
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    pub fn min_weight(&self) -> Option<i32> {
        self.weights.iter().copied().min()
    }
    pub fn max_weight(&self) -> Option<i32> {
        self.weights.iter().copied().max()
    }

    /// Dimension of each weight space.
    pub fn weight_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &w in &self.weights {
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    pub fn same_alg(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || self.alg.same_structure(&other.alg)
    }

    /// The same module viewed over an algebra with identical structure.
    pub fn rebase(&self, alg: &Arc<GradedAlgebra>) -> Result<Module> {
        if Arc::ptr_eq(&self.alg, alg) {
            return Ok(self.clone());
        }
        if !self.alg.same_structure(alg) || self.alg.gens() != alg.gens() {
            return Err(Error::Incompatible(
                "module lives over a different algebra".into(),
            ));
        }
        let mut m = self.clone();
        m.alg = alg.clone();
        Ok(m)
    }

    /// Indices of basis vectors grouped by base character.
    pub fn char_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.alg.base().nchars()];
        for (i, &c) in self.chars.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }

    pub fn act_elem(&self, a: &[u32]) -> SparseMat {
        self.act_elems(&[a.to_vec()]).pop().unwrap()
    }

    pub fn act_elems(&self, elems: &[Vec<u32>]) -> Vec<SparseMat> {
        act_elements(&self.alg, &self.acts, self.dim(), elems)
    }

    /// `b_k x` for every basis element `b_k` of the algebra, as dense vectors.
    pub fn orbit(&self, x: &[u32]) -> Vec<Vec<u32>> {
        let f = self.field();
        let words = self.alg.words();
        let n = self.alg.dim();
        let mut w: Vec<Vec<u32>> = Vec::with_capacity(n);
        w.push(x.to_vec());
        for j in 1..n {
            let prev = &w[words.parent[j]];
            w.push(self.acts[words.letter[j]].mul_vec(prev));
        }
        (0..n)
            .map(|k| {
                let mut out = vec![0u32; self.dim()];
                for &(j, c) in &words.to_words[k] {
                    for (o, &y) in out.iter_mut().zip(&w[j as usize]) {
                        if y != 0 {
                            *o = f.mul_add(*o, c, y);
                        }
                    }
                }
                out
            })
            .collect()
    }

    /// Action of basis element `k`.
    pub fn act_basis(&self, k: usize) -> SparseMat {
        if let Some(g) = self.alg.gens().iter().position(|&x| x == k) {
            return self.acts[g].clone();
        }
        self.act_elem(&self.alg.basis_vec(k))
    }

    /// Shift the grading: weight `w` becomes `w + s`.
    pub fn shift(&self, s: i32) -> Module {
        let weights = self.weights.iter().map(|w| w + s).collect();
        Self::assemble(self.alg.clone(), weights, self.chars.clone(), self.acts.clone())
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        assert!(self.same_alg(other), "direct sum over different algebras");
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        let mut chars = self.chars.clone();
        chars.extend_from_slice(&other.chars);
        let acts = self
            .acts
            .iter()
            .zip(&other.acts)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::assemble(self.alg.clone(), weights, chars, acts)
    }

    pub fn direct_sum_all(alg: &Arc<GradedAlgebra>, parts: &[&Module]) -> Module {
        parts
            .iter()
            .fold(Module::zero(alg.clone()), |acc, m| acc.direct_sum(m))
    }

    /// Linear dual `M^*` as a left module over the opposite algebra: weights
    /// are negated and `a` acts by the transpose of `rho(a)`.
    pub fn dual(&self) -> Module {
        let op = self.alg.opposite();
        let acts = op
            .gens()
            .iter()
            .map(|&g| self.act_basis(g).transpose())
            .collect();
        let weights = self.weights.iter().map(|w| -w).collect();
        Self::assemble(op, weights, self.chars.clone(), acts)
    }

    /// Restriction to a piece of the triangular decomposition.
    pub fn restrict(&self, piece: Piece) -> Result<Module> {
        let sub = self.alg.piece(piece)?;
        if piece == Piece::Full {
            return Ok(self.clone());
        }
        let idx = self.alg.piece_indices(piece)?;
        let acts = sub
            .gens()
            .iter()
            .map(|&g| self.act_basis(idx[g]))
            .collect();
        if sub.base().basis_values != self.alg.base().basis_values {
            return Err(Error::Internal("base mismatch under restriction".into()));
        }
        let chars = self.chars.clone();
        Ok(Self::assemble(sub, self.weights.clone(), chars, acts))
    }

    /// Restriction to the degree-zero base algebra; works on pieces too,
    /// which carry no triangular data of their own.
    pub fn restrict_to_base(&self) -> Result<Module> {
        let sub = self.alg.base_algebra()?;
        let idx = &self.alg.base().idx;
        let acts = sub.gens().iter().map(|&g| self.act_basis(idx[g])).collect();
        Ok(Self::assemble(sub, self.weights.clone(), self.chars.clone(), acts))
    }

    /// Dense matrix of `rho(a)` restricted to source block `src` and target
    /// index list `tgt`.
    pub fn dense_block(m: &SparseMat, tgt: &[usize], src: &[usize], field: Fp) -> Mat {
        let mut pos = std::collections::HashMap::with_capacity(tgt.len());
        for (r, &i) in tgt.iter().enumerate() {
            pos.insert(i as u32, r);
        }
        let mut out = Mat::zeros(field, tgt.len(), src.len());
        for (c, &j) in src.iter().enumerate() {
            for &(i, v) in m.col(j) {
                if let Some(&r) = pos.get(&i) {
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

/// A module given by generator actions on an arbitrary (not yet adapted)
/// graded basis.
pub struct RawModule {
    pub alg: Arc<GradedAlgebra>,
    pub weights: Vec<i32>,
    pub acts: Vec<SparseMat>,
}

/// Change to an adapted basis. Returns the module and the matrix whose
/// columns are the new basis vectors in old coordinates.
pub fn adapt(raw: RawModule) -> Result<(Module, SparseMat)> {
    let alg = raw.alg.clone();
    let f = alg.field();
    let n = raw.weights.len();
    if raw.acts.len() != alg.gens().len() {
        return Err(Error::ModuleAxiom("one action matrix per generator expected".into()));
    }
    let idems: Vec<SparseMat> = act_elements(&alg, &raw.acts, n, &alg.base().idem);
    let mut by_weight: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, &w) in raw.weights.iter().enumerate() {
        by_weight.entry(w).or_default().push(i);
    }
    let mut new_cols: Vec<Vec<(u32, u32)>> = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut chars = Vec::with_capacity(n);
    // inverse change of basis per weight: old coords -> new coords
    let mut inv_blocks: BTreeMap<i32, (Vec<usize>, Mat, usize)> = BTreeMap::new();
    for (&w, idx) in &by_weight {
        let start = weights.len();
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for (c, e) in idems.iter().enumerate() {
            let block = Module::dense_block(e, idx, idx, f);
            let red = block.transpose().rref();
            for r in 0..red.pivots.len() {
                cols.push(red.mat.row(r).to_vec());
                weights.push(w);
                chars.push(c as u16);
            }
        }
        if cols.len() != idx.len() {
            return Err(Error::ModuleAxiom(format!(
                "weight {w}: base idempotents do not decompose the space"
            )));
        }
        let b = Mat::from_cols(f, idx.len(), &cols);
        let binv = b
            .inverse()
            .ok_or_else(|| Error::ModuleAxiom(format!("weight {w}: idempotent images overlap")))?;
        for col in &cols {
            new_cols.push(
                col.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(r, &x)| (idx[r] as u32, x))
                    .collect(),
            );
        }
        inv_blocks.insert(w, (idx.clone(), binv, start));
    }
    let mut change = SparseMat::zeros(f, n, 0);
    for c in new_cols {
        change.push_col(c);
    }
    let mut acts = Vec::with_capacity(raw.acts.len());
    for act in &raw.acts {
        let image = act.compose(&change);
        let mut trips = Vec::new();
        for j in 0..n {
            let col = image.col(j);
            if col.is_empty() {
                continue;
            }
            let tw = raw.weights[col[0].0 as usize];
            let (idx, binv, start) = &inv_blocks[&tw];
            let mut v = vec![0u32; idx.len()];
            for &(i, x) in col {
                let r = idx.binary_search(&(i as usize)).map_err(|_| {
                    Error::ModuleAxiom("action does not respect the grading".into())
                })?;
                v[r] = x;
            }
            for (r, x) in binv.mul_vec(&v).into_iter().enumerate() {
                if x != 0 {
                    trips.push((start + r, j, x));
                }
            }
        }
        acts.push(SparseMat::from_triplets(f, n, n, &trips));
    }
    let module = Module::new(alg, weights, chars, acts)?;
    Ok((module, change))
}

/// The left regular module `A`.
pub fn regular_module(alg: &Arc<GradedAlgebra>) -> Result<(Module, SparseMat)> {
    let s = alg.structure();
    let acts = alg
        .gens()
        .iter()
        .map(|&g| SparseMat::from_dense(&s.left_mat(&alg.basis_vec(g))))
        .collect();
    adapt(RawModule {
        alg: alg.clone(),
        weights: alg.degrees().to_vec(),
        acts,
    })
}

/// The coregular module `A^*` with left action `(a f)(x) = f(x a)`; the dual
/// of basis element `a_k` has weight `-deg a_k`.
pub fn coregular_left(alg: &Arc<GradedAlgebra>) -> Result<(Module, SparseMat)> {
    let s = alg.structure();
    let acts = alg
        .gens()
        .iter()
        .map(|&g| SparseMat::from_dense(&s.right_mat(&alg.basis_vec(g)).transpose()))
        .collect();
    adapt(RawModule {
        alg: alg.clone(),
        weights: alg.degrees().iter().map(|d| -d).collect(),
        acts,
    })
}
