//! Minimal projective and injective resolutions.

use std::sync::Arc;

use super::simple::{indecomposable_projectives, radical_submodule, IndecProjective};
use crate::error::Result;
use crate::exactla::SparseMat;
use crate::galg::GradedAlgebra;
use crate::gmod::{kernel, GradedSubspace, Module};
use crate::homcx::{Complex, Continuation};

/// A summand `B e (w)` of a projective term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjGen {
    pub weight: i32,
    pub chi: usize,
    /// Index into the list of indecomposable projectives for `chi`.
    pub idx: usize,
}

/// `P_j -> ... -> P_0 -> M` with each `P_j` a sum of indecomposable
/// projectives, built on demand.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    alg: Arc<GradedAlgebra>,
    module: Module,
    projectives: Arc<(Vec<Vec<IndecProjective>>, bool)>,
    pub gens: Vec<Vec<ProjGen>>,
    pub terms: Vec<Module>,
    /// Offsets of the summands inside each term.
    pub offsets: Vec<Vec<usize>>,
    /// `diffs[j - 1]: P_j -> P_{j-1}`.
    pub diffs: Vec<SparseMat>,
    /// `coeffs[j - 1][t]`: pairs `(s, b)` with `d(g_t) = sum b g_s`.
    pub coeffs: Vec<Vec<Vec<(usize, Vec<u32>)>>>,
    pub aug: SparseMat,
    /// The last kernel and its inclusion into the last term.
    pending: Option<(Module, SparseMat)>,
    complete: bool,
}

impl ProjectiveResolution {
    pub fn new(m: &Module) -> Result<Self> {
        let alg = m.alg().clone();
        let projectives = indecomposable_projectives(&alg)?;
        Ok(ProjectiveResolution {
            alg,
            module: m.clone(),
            projectives,
            gens: Vec::new(),
            terms: Vec::new(),
            offsets: Vec::new(),
            diffs: Vec::new(),
            coeffs: Vec::new(),
            aug: SparseMat::zeros(m.field(), m.dim(), 0),
            pending: None,
            complete: false,
        })
    }

    /// Resolution with terms `P_0 .. P_depth`.
    pub fn build(m: &Module, depth: usize) -> Result<Self> {
        let mut r = Self::new(m)?;
        r.extend(depth)?;
        Ok(r)
    }

    pub fn alg(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    /// Whether every summand is indecomposable (minimality guarantee).
    pub fn is_minimal(&self) -> bool {
        self.projectives.1
    }

    /// Whether the resolution has terminated.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn projective(&self, g: ProjGen) -> &IndecProjective {
        &self.projectives.0[g.chi][g.idx]
    }

    /// Term `P_j`, zero past the end of a complete resolution.
    pub fn term(&self, j: usize) -> Module {
        self.terms
            .get(j)
            .cloned()
            .unwrap_or_else(|| Module::zero(self.alg.clone()))
    }

    /// Extend until `P_depth` is stored or the resolution terminates.
    pub fn extend(&mut self, depth: usize) -> Result<()> {
        while !self.complete && self.terms.len() <= depth {
            self.step()?;
        }
        Ok(())
    }

    fn step(&mut self) -> Result<()> {
        let (k, incl) = match self.pending.take() {
            Some(p) => p,
            None if self.terms.is_empty() => {
                let id = SparseMat::identity(self.module.field(), self.module.dim());
                (self.module.clone(), id)
            }
            None => unreachable!("pending kernel missing"),
        };
        let f = k.field();
        let j = self.terms.len();
        if k.is_zero() {
            self.complete = true;
            return Ok(());
        }
        let chosen = self.cover(&k)?;
        let mut parts = Vec::with_capacity(chosen.len());
        let mut offs = Vec::with_capacity(chosen.len());
        let mut off = 0;
        for (g, _) in &chosen {
            let p = self.projective(*g).module.shift(g.weight);
            offs.push(off);
            off += p.dim();
            parts.push(p);
        }
        let refs: Vec<&Module> = parts.iter().collect();
        let term = Module::direct_sum_all(&self.alg, &refs);
        // pi: P_j -> K, determined by the generators
        let mut cols: Vec<Vec<(u32, u32)>> = Vec::with_capacity(term.dim());
        for (g, x) in &chosen {
            let orbit = k.orbit(x);
            for el in &self.projective(*g).elems {
                let mut v = vec![0u32; k.dim()];
                for (c, o) in el.iter().zip(&orbit) {
                    if *c != 0 {
                        for (vi, &oi) in v.iter_mut().zip(o) {
                            if oi != 0 {
                                *vi = f.mul_add(*vi, *c, oi);
                            }
                        }
                    }
                }
                cols.push(crate::exactla::sparsify(&v));
            }
        }
        let mut pi = SparseMat::zeros(f, k.dim(), 0);
        for c in cols {
            pi.push_col(c);
        }
        if j == 0 {
            self.aug = pi.clone();
        } else {
            let prev_offs = &self.offsets[j - 1];
            let prev_gens = &self.gens[j - 1];
            let mut row = Vec::with_capacity(chosen.len());
            for (_, x) in &chosen {
                let y = incl.mul_vec(x);
                let mut entry = Vec::new();
                for (s, g) in prev_gens.iter().enumerate() {
                    let p = self.projective(*g);
                    let lo = prev_offs[s];
                    let local: Vec<(u32, u32)> = y[lo..lo + p.module.dim()]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i as u32, c))
                        .collect();
                    if !local.is_empty() {
                        entry.push((s, p.element_of(&local)));
                    }
                }
                row.push(entry);
            }
            self.coeffs.push(row);
            self.diffs.push(incl.compose(&pi));
        }
        let ker = kernel(&term, &k, &pi, 0).submodule(&term)?;
        self.gens.push(chosen.iter().map(|(g, _)| *g).collect());
        self.offsets.push(offs);
        self.terms.push(term);
        if ker.module.is_zero() {
            self.complete = true;
        } else {
            self.pending = Some((ker.module, ker.incl));
        }
        Ok(())
    }

    /// Generators of a projective cover: one per simple summand of the top.
    fn cover(&self, k: &Module) -> Result<Vec<(ProjGen, Vec<u32>)>> {
        let mut span: GradedSubspace = radical_submodule(k)?;
        let mut chosen = Vec::new();
        let keys: Vec<_> = k.blocks().keys().copied().collect();
        for (w, c) in keys {
            if span.block((w, c)).is_some_and(|e| e.dim() == k.block((w, c)).len()) {
                continue;
            }
            for (idx, p) in self.projectives.0[c as usize].iter().enumerate() {
                let proj = k.act_elem(&p.idem);
                for &x in k.block((w, c)) {
                    let v = proj.col(x).to_vec();
                    if v.is_empty() || span.contains_global(k, &v) {
                        continue;
                    }
                    span.extend_generated(k, std::slice::from_ref(&v));
                    let mut dense = vec![0u32; k.dim()];
                    for &(i, y) in &v {
                        dense[i as usize] = y;
                    }
                    chosen.push((
                        ProjGen {
                            weight: w,
                            chi: c as usize,
                            idx,
                        },
                        dense,
                    ));
                }
            }
        }
        Ok(chosen)
    }
}

/// Minimal injective coresolution `M -> I^0 -> I^1 -> ...` through the dual
/// projective resolution over the opposite algebra. Returns the complex and
/// the augmentation `M -> I^0`.
pub fn minimal_injective_resolution(m: &Module, depth: usize) -> Result<(Complex, SparseMat)> {
    let alg = m.alg().clone();
    let q = ProjectiveResolution::build(&m.dual(), depth)?;
    let mut terms = Vec::new();
    for t in &q.terms {
        terms.push(t.dual().rebase(&alg)?);
    }
    if terms.is_empty() {
        terms.push(Module::zero(alg.clone()));
    }
    let diffs = q.diffs.iter().map(SparseMat::transpose).collect();
    let continuation = if q.is_complete() {
        Continuation::Complete
    } else {
        Continuation::Open
    };
    let aug = if q.terms.is_empty() {
        SparseMat::zeros(m.field(), 0, m.dim())
    } else {
        q.aug.transpose()
    };
    Ok((Complex::new(0, terms, diffs, continuation)?, aug))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homcx::{quasi_iso_check, ChainMap};
    use crate::zoo;

    #[test]
    fn dual_numbers_resolution_is_periodic() {
        let z = zoo::dual_numbers(2, 1).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let r = ProjectiveResolution::build(&k, 5).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.terms.iter().all(|t| t.dim() == 2));
        for w in r.diffs.windows(2) {
            assert!(w[0].compose(&w[1]).is_zero());
        }
    }

    #[test]
    fn projective_module_resolves_in_one_step() {
        let z = zoo::restricted_sl2(3).unwrap();
        let p = &indecomposable_projectives(&z.alg).unwrap().0[0][0];
        let r = ProjectiveResolution::build(&p.module, 4).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn sl2_trivial_resolution_is_minimal_and_exact() {
        let z = zoo::restricted_sl2(3).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let r = ProjectiveResolution::build(&k, 3).unwrap();
        assert!(r.is_minimal());
        for (j, d) in r.diffs.iter().enumerate() {
            // image lies in the radical of the target
            let rad = radical_submodule(&r.terms[j]).unwrap();
            for c in 0..d.cols() {
                assert!(rad.contains_global(&r.terms[j], d.col(c)));
            }
        }
        assert!(r.aug.compose(&r.diffs[0]).is_zero());
    }

    #[test]
    fn injective_resolution_is_quasi_isomorphic() {
        let z = zoo::restricted_sl2(2).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let (i, aug) = minimal_injective_resolution(&k, 4).unwrap();
        let src = Complex::single(k.clone(), 0);
        let f = ChainMap {
            start: 0,
            maps: vec![aug],
        };
        assert!(quasi_iso_check(&src, &i, &f, 4).unwrap());
        // dims match the projective resolution of the trivial right module
        let op = zoo::trivial(&z.alg.opposite()).unwrap();
        let q = ProjectiveResolution::build(&op, 4).unwrap();
        let a: Vec<usize> = i.terms.iter().map(Module::dim).collect();
        let b: Vec<usize> = q.terms.iter().map(Module::dim).collect();
        assert_eq!(a, b);
    }
}
