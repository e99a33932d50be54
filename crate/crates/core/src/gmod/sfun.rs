//! The functor `S = Hom_A(A^*, -)` in degree zero, the right dual
//! `M^v = Hom_A(M, A^*)`, and tensor products over `A`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::hom::{hom_space, shift_range, HomSpace};
use super::module::{adapt, coregular_left, Module, RawModule};
use super::sub::is_module_map;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Mat, SparseMat};
use crate::galg::GradedAlgebra;

/// `A^*` with its left action, plus the right action of every generator and
/// the map from old dual-basis coordinates to adapted ones.
pub struct Coregular {
    pub module: Module,
    /// `right[g]`: `f -> f g` in adapted coordinates.
    pub right: Vec<SparseMat>,
    /// Old dual-basis coordinates to adapted coordinates.
    pub to_adapted: Mat,
}

pub fn coregular(alg: &Arc<GradedAlgebra>) -> Result<Arc<Coregular>> {
    alg.memo("coregular", || {
        let (module, change) = coregular_left(alg)?;
        let c = change.to_dense();
        let inv = c
            .inverse()
            .ok_or_else(|| Error::Internal("adapted basis of A* is singular".into()))?;
        let s = alg.structure();
        let right = alg
            .gens()
            .iter()
            .map(|&g| {
                let r = s.left_mat(&alg.basis_vec(g)).transpose();
                SparseMat::from_dense(&inv.mul(&r).mul(&c))
            })
            .collect();
        Ok(Coregular {
            module,
            right,
            to_adapted: inv,
        })
    })
}

/// For each basis functional `phi_j` of `M^*`, the module map
/// `M -> A^*, m -> (x -> phi_j(x m))`, of weight shift `-w_j`.
pub fn dual_maps(m: &Module) -> Result<Vec<SparseMat>> {
    let alg = m.alg();
    let co = coregular(alg)?;
    let f = m.field();
    let reps: Vec<SparseMat> = (0..alg.dim()).map(|k| m.act_basis(k)).collect();
    let mut out = Vec::with_capacity(m.dim());
    for j in 0..m.dim() {
        // entry (k, i) = coefficient of m_j in b_k m_i
        let mut old = Mat::zeros(f, alg.dim(), m.dim());
        for (k, r) in reps.iter().enumerate() {
            for i in 0..m.dim() {
                if let Some(&(_, x)) = r.col(i).iter().find(|&&(row, _)| row as usize == j) {
                    old.set(k, i, x);
                }
            }
        }
        out.push(SparseMat::from_dense(&co.to_adapted.mul(&old)));
    }
    Ok(out)
}

/// The right module `M^v = M^*` (a module over the opposite algebra), after
/// checking that the functionals give a basis of `Hom_A(M, A^*)`.
pub fn check_dual(m: &Module) -> Result<Module> {
    let co = coregular(m.alg())?;
    let maps = dual_maps(m)?;
    let mut span = Echelon::new(m.field(), co.module.dim() * m.dim());
    for (j, phi) in maps.iter().enumerate() {
        if !is_module_map(m, &co.module, phi, -m.weights()[j]) {
            return Err(Error::Internal(format!("functional {j} does not give a module map")));
        }
        let d = phi.to_dense();
        let flat: Vec<u32> = (0..d.rows()).flat_map(|r| d.row(r).to_vec()).collect();
        if !span.insert(&flat) {
            return Err(Error::Internal("comparison map to Hom(M, A*) is not injective".into()));
        }
    }
    let total = super::hom::hom_total_dim(m, &co.module)?;
    if total != m.dim() {
        return Err(Error::Internal(format!(
            "Hom(M, A*) has dimension {total}, expected {}",
            m.dim()
        )));
    }
    Ok(m.dual())
}

/// `S(N) = Hom_A(A^*, N)` with its left module structure.
#[derive(Clone, Debug)]
pub struct SModule {
    pub module: Module,
    /// Hom spaces by weight shift, in the order the raw basis was built.
    pub spaces: Vec<HomSpace>,
    /// Columns: adapted basis vectors in raw coordinates (raw basis runs
    /// through `spaces` in order).
    pub change: SparseMat,
}

impl SModule {
    /// The module map `A^* -> N` represented by basis element `b`.
    pub fn map(&self, n: &Module, b: usize) -> Result<SparseMat> {
        let co = coregular(n.alg())?;
        let f = n.field();
        let mut acc = SparseMat::zeros(f, n.dim(), co.module.dim());
        let mut off = 0;
        for h in &self.spaces {
            for k in 0..h.dim() {
                let c = self
                    .change
                    .col(b)
                    .iter()
                    .find(|&&(r, _)| r as usize == off + k)
                    .map_or(0, |&(_, x)| x);
                if c != 0 {
                    acc = acc.add_scaled(&h.map(&co.module, n, k), c);
                }
            }
            off += h.dim();
        }
        Ok(acc)
    }
}

pub fn s_zero(n: &Module) -> Result<SModule> {
    let alg = n.alg().clone();
    let co = coregular(&alg)?;
    let a = &co.module;
    let Some((lo, hi)) = shift_range(a, n) else {
        return Ok(SModule {
            module: Module::zero(alg.clone()),
            spaces: Vec::new(),
            change: SparseMat::zeros(n.field(), 0, 0),
        });
    };
    let spaces: Vec<HomSpace> = (lo..=hi)
        .map(|s| hom_space(a, n, s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|h| h.dim() > 0)
        .collect();
    let mut offsets = BTreeMap::new();
    let mut weights = Vec::new();
    let mut off = 0;
    for (idx, h) in spaces.iter().enumerate() {
        offsets.insert(h.shift, (idx, off));
        weights.extend(std::iter::repeat_n(h.shift, h.dim()));
        off += h.dim();
    }
    let f = n.field();
    let total = off;
    let mut acts = Vec::with_capacity(alg.gens().len());
    for (gp, &g) in alg.gens().iter().enumerate() {
        let d = alg.degree(g);
        let mut trips = Vec::new();
        for h in &spaces {
            let (_, src_off) = offsets[&h.shift];
            for k in 0..h.dim() {
                // (g f)(phi) = f(phi g)
                let img = h.map(a, n, k).compose(&co.right[gp]);
                if img.is_zero() {
                    continue;
                }
                let &(tidx, tgt_off) = offsets
                    .get(&(h.shift + d))
                    .ok_or_else(|| Error::Internal("S(N) not closed under the action".into()))?;
                let coords = spaces[tidx]
                    .coords(a, n, &img)
                    .ok_or_else(|| Error::Internal("S(N) not closed under the action".into()))?;
                for (r, x) in coords.into_iter().enumerate() {
                    if x != 0 {
                        trips.push((tgt_off + r, src_off + k, x));
                    }
                }
            }
        }
        acts.push(SparseMat::from_triplets(f, total, total, &trips));
    }
    let (module, change) = adapt(RawModule {
        alg,
        weights,
        acts,
    })?;
    Ok(SModule {
        module,
        spaces,
        change,
    })
}

/// Graded dimensions of `M (x)_A N` for a right module `M` (over the
/// opposite algebra) and a left module `N`.
pub fn tensor_over_a(m: &Module, n: &Module) -> Result<BTreeMap<i32, usize>> {
    let alg = n.alg();
    if !m.alg().same_structure(&alg.opposite()) {
        return Err(Error::Incompatible("tensor product needs a right and a left module".into()));
    }
    let f = n.field();
    let (Some(mlo), Some(mhi), Some(nlo), Some(nhi)) =
        (m.min_weight(), m.max_weight(), n.min_weight(), n.max_weight())
    else {
        return Ok(BTreeMap::new());
    };
    let mut out = BTreeMap::new();
    for w in (mlo + nlo)..=(mhi + nhi) {
        // basis of (M (x) N)_w: pairs (i, j) with w_i + w_j = w
        let mut index = BTreeMap::new();
        for i in 0..m.dim() {
            for &j in &n.weight_indices(w - m.weights()[i]) {
                let next = index.len();
                index.insert((i, j), next);
            }
        }
        if index.is_empty() {
            continue;
        }
        let mut rel = Echelon::new(f, index.len());
        for &g in alg.gens() {
            let d = alg.degree(g);
            let ma = m.act_basis(g);
            let na = n.act_basis(g);
            for i in 0..m.dim() {
                for &j in &n.weight_indices(w - m.weights()[i] - d) {
                    // (m_i g) (x) n_j - m_i (x) (g n_j)
                    let mut v = vec![0u32; index.len()];
                    for &(r, x) in ma.col(i) {
                        if let Some(&p) = index.get(&(r as usize, j)) {
                            v[p] = f.add(v[p], x);
                        }
                    }
                    for &(r, x) in na.col(j) {
                        if let Some(&p) = index.get(&(i, r as usize)) {
                            v[p] = f.sub(v[p], x);
                        }
                    }
                    rel.insert(&v);
                }
            }
        }
        let d = index.len() - rel.dim();
        if d > 0 {
            out.insert(w, d);
        }
    }
    Ok(out)
}
