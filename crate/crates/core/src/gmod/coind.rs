//! Coinduction `Hom_B(R, M)` and induction along a piece of a triangular
//! decomposition, with unit and counit maps.
//!
//! When multiplication `B (x)_{A0} C -> R` is bijective, `Hom_B(R, M)` is
//! `Hom_{A0}(C, M)`. We fix a basis `y_s` of `C` with `y_s` in
//! `e_chi C e_psi`; a basis of the coinduced module is then given by pairs
//! `(s, v)` with `v` in `e_chi M`, the map sending `y_s` to `v` and all other
//! `y_t` to zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::Module;
use crate::error::{Error, Result};
use crate::exactla::{Mat, SparseMat};
use crate::galg::{GradedAlgebra, Piece};

/// Which subalgebra to coinduce from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum From {
    /// `A^{>=0}` inside a triangular algebra.
    Ge,
    /// `A^{<=0}` inside a triangular algebra.
    Le,
    /// The base subalgebra inside any algebra.
    Base,
}

/// Precomputed data for coinducing along `B -> R`.
pub struct Coinduction {
    r: Arc<GradedAlgebra>,
    b: Arc<GradedAlgebra>,
    /// `y_s` in `R` coordinates.
    ys: Vec<Vec<u32>>,
    y_deg: Vec<i32>,
    y_left: Vec<u16>,
    y_right: Vec<u16>,
    /// `beta[g][s']`: entries `(b, s, c)` with `y_{s'} g = sum c b y_s`.
    beta: Vec<Vec<Vec<(usize, usize, u32)>>>,
    /// Coefficients of the unit along `y_s`.
    unit_coords: Vec<u32>,
}

fn pieces_for(r: &Arc<GradedAlgebra>, from: From) -> Result<(Arc<GradedAlgebra>, Vec<usize>, Vec<usize>)> {
    Ok(match from {
        From::Ge => (
            r.piece(Piece::Ge)?,
            r.piece_indices(Piece::Ge)?,
            r.piece_indices(Piece::Le)?,
        ),
        From::Le => (
            r.piece(Piece::Le)?,
            r.piece_indices(Piece::Le)?,
            r.piece_indices(Piece::Ge)?,
        ),
        From::Base => (
            r.base_algebra()?,
            r.base().idx.clone(),
            (0..r.dim()).collect(),
        ),
    })
}

impl Coinduction {
    /// Cached coinduction data for `(R, from)`.
    pub fn get(r: &Arc<GradedAlgebra>, from: From) -> Result<Arc<Coinduction>> {
        let key = match from {
            From::Ge => "coind_ge",
            From::Le => "coind_le",
            From::Base => "coind_base",
        };
        r.memo(key, || Self::build(r, from))
    }

    fn build(r: &Arc<GradedAlgebra>, from: From) -> Result<Coinduction> {
        let (b, b_idx, c_idx) = pieces_for(r, from)?;
        let f = r.field();
        let n = r.dim();
        let base = r.base();
        let nch = base.nchars();
        // bi-eigen basis of C, per degree
        let mut by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for &k in &c_idx {
            by_deg.entry(r.degree(k)).or_default().push(k);
        }
        let mut ys = Vec::new();
        let mut y_deg = Vec::new();
        let mut y_left = Vec::new();
        let mut y_right = Vec::new();
        for (&d, idx) in &by_deg {
            let mut found = 0;
            for chi in 0..nch {
                for psi in 0..nch {
                    let mut cols = Vec::new();
                    for &k in idx {
                        let v = r.mul(&r.mul(&base.idem[chi], &r.basis_vec(k)), &base.idem[psi]);
                        cols.push(v);
                    }
                    let span = Mat::from_cols(f, n, &cols).transpose().rref();
                    for row in 0..span.pivots.len() {
                        ys.push(span.mat.row(row).to_vec());
                        y_deg.push(d);
                        y_left.push(chi as u16);
                        y_right.push(psi as u16);
                        found += 1;
                    }
                }
            }
            if found != idx.len() {
                return Err(Error::Precondition(format!(
                    "degree {d} of the complement does not split under the base"
                )));
            }
        }
        // section of multiplication B (x) C -> R, per degree of R
        let mut r_by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            r_by_deg.entry(r.degree(k)).or_default().push(k);
        }
        let mut sections: BTreeMap<i32, (Vec<(usize, usize)>, Mat)> = BTreeMap::new();
        for (&d, ridx) in &r_by_deg {
            let mut pairs = Vec::new();
            let mut cols = Vec::new();
            for (bi, &bk) in b_idx.iter().enumerate() {
                for (s, y) in ys.iter().enumerate() {
                    if r.degree(bk) + y_deg[s] != d {
                        continue;
                    }
                    let prod = r.mul(&r.basis_vec(bk), y);
                    pairs.push((bi, s));
                    cols.push(ridx.iter().map(|&k| prod[k]).collect::<Vec<u32>>());
                }
            }
            let mu = Mat::from_cols(f, ridx.len(), &cols);
            let red = mu.rref();
            if red.pivots.len() != ridx.len() {
                return Err(Error::Precondition(format!(
                    "multiplication onto degree {d} is not surjective"
                )));
            }
            let piv_cols: Vec<Vec<u32>> = red.pivots.iter().map(|&c| cols[c].clone()).collect();
            let sq = Mat::from_cols(f, ridx.len(), &piv_cols);
            let inv = sq.inverse().ok_or_else(|| Error::Internal("singular pivot block".into()))?;
            let piv_pairs = red.pivots.iter().map(|&c| pairs[c]).collect();
            sections.insert(d, (piv_pairs, inv));
        }
        // bijectivity over A0: dim R = sum_chi dim(B e_chi) dim(e_chi C)
        let mut b_right = vec![0usize; nch];
        for (chi, e) in base.idem.iter().enumerate() {
            let mut rank_cols = Vec::new();
            for &bk in &b_idx {
                rank_cols.push(r.mul(&r.basis_vec(bk), e));
            }
            b_right[chi] = Mat::from_cols(f, n, &rank_cols).rank();
        }
        let expected: usize = y_left.iter().map(|&c| b_right[c as usize]).sum();
        if expected != n {
            return Err(Error::Precondition(
                "multiplication over the base is not bijective".into(),
            ));
        }
        let section = |v: &[u32]| -> Vec<(usize, usize, u32)> {
            let mut out: BTreeMap<(usize, usize), u32> = BTreeMap::new();
            for (&d, ridx) in &r_by_deg {
                let part: Vec<u32> = ridx.iter().map(|&k| v[k]).collect();
                if part.iter().all(|&x| x == 0) {
                    continue;
                }
                let (pairs, inv) = &sections[&d];
                for (t, c) in inv.mul_vec(&part).into_iter().enumerate() {
                    if c != 0 {
                        let e = out.entry(pairs[t]).or_insert(0);
                        *e = f.add(*e, c);
                    }
                }
            }
            out.into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|((bi, s), c)| (bi, s, c))
                .collect()
        };
        let beta = r
            .gens()
            .iter()
            .map(|&g| {
                ys.iter()
                    .map(|y| section(&r.mul(y, &r.basis_vec(g))))
                    .collect()
            })
            .collect();
        let unit_coords = Mat::from_cols(f, n, &ys)
            .solve(r.unit())
            .ok_or_else(|| Error::Precondition("the complement does not contain the unit".into()))?;
        Ok(Coinduction {
            r: r.clone(),
            b,
            ys,
            y_deg,
            y_left,
            y_right,
            beta,
            unit_coords,
        })
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.b
    }
    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.r
    }

    fn layout(&self, m: &Module) -> (Vec<usize>, Vec<Vec<usize>>, Vec<usize>) {
        let by_char = m.char_indices();
        let mut pos = vec![0usize; m.dim()];
        for list in &by_char {
            for (t, &i) in list.iter().enumerate() {
                pos[i] = t;
            }
        }
        let mut offsets = Vec::with_capacity(self.ys.len() + 1);
        let mut t = 0;
        for s in 0..self.ys.len() {
            offsets.push(t);
            t += by_char[self.y_left[s] as usize].len();
        }
        offsets.push(t);
        (offsets, by_char, pos)
    }

    /// `CoInd_B^R(M)` for a `B`-module `M`.
    pub fn apply(&self, m: &Module) -> Result<Module> {
        let m = m.rebase(&self.b)?;
        let f = m.field();
        let (offsets, by_char, pos) = self.layout(&m);
        let dim = *offsets.last().unwrap();
        let mut weights = Vec::with_capacity(dim);
        let mut chars = Vec::with_capacity(dim);
        for s in 0..self.ys.len() {
            for &i in &by_char[self.y_left[s] as usize] {
                weights.push(m.weights()[i] - self.y_deg[s]);
                chars.push(self.y_right[s]);
            }
        }
        let b_elems: Vec<Vec<u32>> = (0..self.b.dim()).map(|k| self.b.basis_vec(k)).collect();
        let rho_b = m.act_elems(&b_elems);
        let mut acts = Vec::with_capacity(self.beta.len());
        for beta_g in &self.beta {
            let mut cols: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); dim];
            for (s2, entries) in beta_g.iter().enumerate() {
                let want = self.y_left[s2];
                for &(bi, s, c) in entries {
                    for (t, &i) in by_char[self.y_left[s] as usize].iter().enumerate() {
                        let col = &mut cols[offsets[s] + t];
                        for &(u, x) in rho_b[bi].col(i) {
                            let u = u as usize;
                            if m.chars()[u] != want {
                                continue;
                            }
                            let row = (offsets[s2] + pos[u]) as u32;
                            let e = col.entry(row).or_insert(0);
                            *e = f.mul_add(*e, c, x);
                        }
                    }
                }
            }
            let mut mat = SparseMat::zeros(f, dim, 0);
            for col in cols {
                mat.push_col(col.into_iter().filter(|&(_, x)| x != 0).collect());
            }
            acts.push(mat);
        }
        Ok(Module::assemble(self.r.clone(), weights, chars, acts))
    }

    /// `CoInd(h)` for a map `h: M -> N` of `B`-modules.
    pub fn apply_map(&self, m: &Module, n: &Module, h: &SparseMat) -> SparseMat {
        let f = m.field();
        let (om, cm, _) = self.layout(m);
        let (on, _, pn) = self.layout(n);
        let mut trips = Vec::new();
        for s in 0..self.ys.len() {
            for (t, &i) in cm[self.y_left[s] as usize].iter().enumerate() {
                for &(u, x) in h.col(i) {
                    trips.push((on[s] + pn[u as usize], om[s] + t, x));
                }
            }
        }
        SparseMat::from_triplets(f, *on.last().unwrap(), *om.last().unwrap(), &trips)
    }

    /// Unit `M -> CoInd(Res M)` for an `R`-module `M`, `m -> (r -> r m)`.
    pub fn unit_map(&self, m: &Module, coind_res: &Module) -> Result<SparseMat> {
        let f = m.field();
        let (offsets, _, pos) = self.layout(m);
        debug_assert_eq!(*offsets.last().unwrap(), coind_res.dim());
        let rho_y = m.act_elems(&self.ys);
        let mut trips = Vec::new();
        for (s, rho) in rho_y.iter().enumerate() {
            for j in 0..m.dim() {
                for &(u, x) in rho.col(j) {
                    let u = u as usize;
                    if m.chars()[u] != self.y_left[s] {
                        return Err(Error::Internal("y_s moved a vector out of its eigenspace".into()));
                    }
                    trips.push((offsets[s] + pos[u], j, x));
                }
            }
        }
        Ok(SparseMat::from_triplets(f, coind_res.dim(), m.dim(), &trips))
    }

    /// Counit `Res CoInd(N) -> N`, evaluation at the unit.
    pub fn counit_map(&self, n: &Module) -> SparseMat {
        let f = n.field();
        let (offsets, by_char, _) = self.layout(n);
        let mut trips = Vec::new();
        for s in 0..self.ys.len() {
            let c = self.unit_coords[s];
            if c == 0 {
                continue;
            }
            for (t, &i) in by_char[self.y_left[s] as usize].iter().enumerate() {
                trips.push((i, offsets[s] + t, c));
            }
        }
        SparseMat::from_triplets(f, n.dim(), *offsets.last().unwrap(), &trips)
    }
}

/// `CoInd_B^R(M)` where `R` is the algebra and `B` is selected by `from`.
pub fn coinduce(r: &Arc<GradedAlgebra>, from: From, m: &Module) -> Result<Module> {
    Coinduction::get(r, from)?.apply(m)
}

/// `Ind_B^R(N) = R (x)_B N`, computed as the dual of coinduction over the
/// opposite algebras.
pub fn induce(r: &Arc<GradedAlgebra>, from: From, n: &Module) -> Result<Module> {
    let op = r.opposite();
    let co = Coinduction::get(&op, from)?;
    let nd = n.dual().rebase(co.source())?;
    Ok(co.apply(&nd)?.dual())
}
