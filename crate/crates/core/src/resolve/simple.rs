//! Simple modules, the graded Jacobson radical and indecomposable
//! projectives `B e` for algebras with a split base.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{Echelon, Mat, SparseMat};
use crate::galg::radical::{radical, split_characters};
use crate::galg::{GradedAlgebra, Structure};
use crate::gmod::{rng_from_seed, GradedSubspace, Module};

/// Largest algebra handled by the generic trace-form radical.
const GENERIC_RADICAL_CAP: usize = 64;

/// Homogeneous basis of `rad(B)` as `(degree, element)` pairs.
pub fn radical_basis(b: &Arc<GradedAlgebra>) -> Result<Arc<Vec<(i32, Vec<u32>)>>> {
    b.memo("radical_basis", || compute_radical(b))
}

fn homogenize(b: &GradedAlgebra, cols: &[Vec<u32>]) -> Vec<(i32, Vec<u32>)> {
    let n = b.dim();
    let mut by_deg: std::collections::BTreeMap<i32, Echelon> = Default::default();
    for v in cols {
        let mut parts: std::collections::BTreeMap<i32, Vec<u32>> = Default::default();
        for (k, &x) in v.iter().enumerate() {
            if x != 0 {
                parts.entry(b.degree(k)).or_insert_with(|| vec![0; n])[k] = x;
            }
        }
        for (d, part) in parts {
            by_deg
                .entry(d)
                .or_insert_with(|| Echelon::new(b.field(), n))
                .insert(&part);
        }
    }
    by_deg
        .into_iter()
        .flat_map(|(d, e)| e.rows().iter().map(move |r| (d, r.clone())).collect::<Vec<_>>())
        .collect()
}

fn is_one_signed(b: &GradedAlgebra) -> bool {
    let degs = b.degrees();
    let zero = degs.iter().filter(|&&d| d == 0).count();
    b.base().split
        && b.base().idx.len() == zero
        && (degs.iter().all(|&d| d >= 0) || degs.iter().all(|&d| d <= 0))
}

fn compute_radical(b: &Arc<GradedAlgebra>) -> Result<Vec<(i32, Vec<u32>)>> {
    let n = b.dim();
    let f = b.field();
    if b.tri().is_some() {
        // rad(B) is the common annihilator of all simple modules
        let simples = simples(b)?;
        let rows: usize = simples.iter().map(|s| s.dim() * s.dim()).sum();
        let mut m = Mat::zeros(f, rows, n);
        let mut off = 0;
        for s in simples.iter() {
            let d = s.dim();
            for k in 0..n {
                for (i, j, x) in s.act_basis(k).triplets() {
                    m.set(off + i * d + j, k, x);
                }
            }
            off += d * d;
        }
        return Ok(homogenize(b, &m.nullspace().columns()));
    }
    if is_one_signed(b) {
        return Ok((0..n)
            .filter(|&k| b.degree(k) != 0)
            .map(|k| (b.degree(k), b.basis_vec(k)))
            .collect());
    }
    if n > GENERIC_RADICAL_CAP {
        return Err(Error::SizeGuard(format!(
            "radical of a {n}-dimensional algebra without triangular data"
        )));
    }
    let rad = radical(b.structure())?;
    Ok(homogenize(b, &rad.columns()))
}

/// Complete list of graded simple modules up to shift.
///
/// Triangular algebras use heads of baby Verma modules; otherwise simples are
/// the one-dimensional characters of a split commutative `B / rad B`.
pub fn simples(b: &Arc<GradedAlgebra>) -> Result<Arc<Vec<Module>>> {
    b.memo("simples", || {
        if b.tri().is_some() {
            let mut out = Vec::new();
            for chi in 0..b.base().nchars() {
                out.push(head(&crate::zoo::baby_verma(b, chi)?)?);
            }
            return Ok(out);
        }
        let rad = radical_basis(b)?;
        let n = b.dim();
        let cols: Vec<Vec<u32>> = rad.iter().map(|(_, v)| v.clone()).collect();
        let rad_mat = Mat::from_cols(b.field(), n, &cols);
        let chars = split_characters(b.structure(), &rad_mat)?;
        let f = b.field();
        let base = b.base();
        let mut out = Vec::new();
        for vals in chars {
            let gv: Vec<u32> = (0..base.ngens).map(|g| vals[b.gens()[g]]).collect();
            let c = base.char_of_gen_values(&gv).ok_or_else(|| {
                Error::Internal("simple character does not restrict to a base character".into())
            })?;
            let acts = b
                .gens()
                .iter()
                .map(|&k| {
                    let v = if b.degree(k) == 0 { vals[k] } else { 0 };
                    SparseMat::from_triplets(f, 1, 1, &[(0, 0, v)])
                })
                .collect();
            out.push(Module::new(b.clone(), vec![0], vec![c as u16], acts)?);
        }
        Ok(out)
    })
}

/// Quotient of a module generated by its top weight space by the largest
/// submodule missing that weight.
pub fn head(z: &Module) -> Result<Module> {
    let Some(top) = z.max_weight() else { return Ok(z.clone()) };
    let alg = z.alg();
    let f = z.field();
    let top_idx = z.weight_indices(top);
    let mut sub = GradedSubspace::empty();
    for (&(w, c), idx) in z.blocks() {
        if w == top {
            continue;
        }
        let d = top - w;
        let elems: Vec<usize> = (0..alg.dim()).filter(|&k| alg.degree(k) == d).collect();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for k in elems {
            let mat = z.act_basis(k);
            let block = Module::dense_block(&mat, &top_idx, idx, f);
            for r in 0..block.rows() {
                rows.push(block.row(r).to_vec());
            }
        }
        let ker = Mat::from_rows(f, &rows, idx.len()).nullspace();
        for v in ker.columns() {
            sub.insert_local(z, (w, c), &v);
        }
    }
    if !sub.is_submodule(z) {
        return Err(Error::Internal("maximal submodule is not stable".into()));
    }
    Ok(sub.quotient(z).module)
}

/// The submodule `rad(B) M`.
pub fn radical_submodule(m: &Module) -> Result<GradedSubspace> {
    let rad = radical_basis(m.alg())?;
    if m.is_zero() || rad.is_empty() {
        return Ok(GradedSubspace::empty());
    }
    let elems: Vec<Vec<u32>> = rad.iter().map(|(_, v)| v.clone()).collect();
    let mut vecs = Vec::new();
    for r in m.act_elems(&elems) {
        for j in 0..m.dim() {
            if !r.col(j).is_empty() {
                vecs.push(r.col(j).to_vec());
            }
        }
    }
    Ok(GradedSubspace::generated(m, &vecs))
}

/// An indecomposable projective `B e` with `e` a homogeneous primitive
/// idempotent of degree 0, generated in weight 0.
#[derive(Clone, Debug)]
pub struct IndecProjective {
    pub chi: usize,
    pub idem: Vec<u32>,
    pub module: Module,
    /// Algebra element represented by each basis vector.
    pub elems: Vec<Vec<u32>>,
    /// The generator `e` in module coordinates.
    pub gen: Vec<(u32, u32)>,
}

impl IndecProjective {
    /// The algebra element `a` with `a e` equal to the given module vector.
    pub fn element_of(&self, v: &[(u32, u32)]) -> Vec<u32> {
        let f = self.module.field();
        let n = self.idem.len();
        let mut out = vec![0u32; n];
        for &(i, x) in v {
            for (o, &y) in out.iter_mut().zip(&self.elems[i as usize]) {
                if y != 0 {
                    *o = f.mul_add(*o, x, y);
                }
            }
        }
        out
    }
}

/// Per base character, the decomposition `B e_chi = B e_1 + ... + B e_r`.
/// The second component reports whether every summand is indecomposable.
pub fn indecomposable_projectives(
    b: &Arc<GradedAlgebra>,
) -> Result<Arc<(Vec<Vec<IndecProjective>>, bool)>> {
    b.memo("indecomposable_projectives", || {
        let mut all = Vec::new();
        let mut minimal = true;
        for chi in 0..b.base().nchars() {
            let (idems, ok) = primitive_idempotents(b, chi)?;
            minimal &= ok;
            let mut list = Vec::new();
            for e in idems {
                list.push(left_ideal(b, chi, e)?);
            }
            all.push(list);
        }
        Ok((all, minimal))
    })
}

/// Orthogonal primitive idempotents of the degree-zero corner
/// `e_chi B_0 e_chi` summing to `e_chi`; falls back to `[e_chi]` (and
/// reports `false`) when the corner is not split commutative.
fn primitive_idempotents(b: &Arc<GradedAlgebra>, chi: usize) -> Result<(Vec<Vec<u32>>, bool)> {
    let f = b.field();
    let n = b.dim();
    let e = b.base().idem[chi].clone();
    let mut corner = Echelon::new(f, n);
    for k in (0..n).filter(|&k| b.degree(k) == 0) {
        let v = b.mul(&b.mul(&e, &b.basis_vec(k)), &e);
        corner.insert(&v);
    }
    let basis: Vec<Vec<u32>> = corner.rows().to_vec();
    let r = basis.len();
    if r <= 1 {
        return Ok((vec![e], true));
    }
    if r > GENERIC_RADICAL_CAP {
        return Ok((vec![e], false));
    }
    let coords = |v: &[u32]| -> Option<Vec<u32>> { crate::gmod::echelon_coords(f, &corner, v) };
    // structure constants of the corner on its echelon basis
    let mut mult = vec![Vec::new(); r * r];
    for i in 0..r {
        for j in 0..r {
            let ij = b.mul(&basis[i], &basis[j]);
            if ij != b.mul(&basis[j], &basis[i]) {
                return Ok((vec![e], false));
            }
            let c = coords(&ij).ok_or_else(|| Error::Internal("corner not closed".into()))?;
            mult[i * r + j] = c
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (k as u32, x))
                .collect();
        }
    }
    let unit = coords(&e).ok_or_else(|| Error::Internal("idempotent outside corner".into()))?;
    let s = Structure {
        field: f,
        n: r,
        mult,
        unit,
    };
    let target = r - radical(&s)?.cols();
    if target == 1 {
        return Ok((vec![e], true));
    }
    let mut rng = rng_from_seed(0x1de);
    for _ in 0..64 {
        let a: Vec<u32> = (0..r).map(|_| rng.gen_range(0..f.p())).collect();
        let la = s.left_mat(&a);
        let mut spaces = Vec::new();
        let mut total = 0;
        for lambda in 0..f.p() {
            let shifted = la.add(&Mat::identity(f, r).scale(f.neg(lambda)));
            let mut pw = Mat::identity(f, r);
            for _ in 0..r {
                pw = pw.mul(&shifted);
            }
            let ker = pw.nullspace();
            if ker.cols() > 0 {
                total += ker.cols();
                spaces.push(ker);
            }
        }
        if total != r || spaces.len() != target {
            continue;
        }
        // decompose the unit along the generalized eigenspaces
        let mut all = spaces[0].clone();
        for sp in &spaces[1..] {
            all = all.hstack(sp);
        }
        let x = all
            .solve(&s.unit)
            .ok_or_else(|| Error::Internal("unit outside eigenspace sum".into()))?;
        let mut out = Vec::new();
        let mut off = 0;
        for sp in &spaces {
            let k = sp.cols();
            let part = sp.mul_vec(&x[off..off + k]);
            off += k;
            let mut elem = vec![0u32; n];
            for (i, &c) in part.iter().enumerate() {
                for (o, &y) in elem.iter_mut().zip(&basis[i]) {
                    if y != 0 {
                        *o = f.mul_add(*o, c, y);
                    }
                }
            }
            if b.mul(&elem, &elem) != elem {
                return Err(Error::Internal("eigenspace component is not idempotent".into()));
            }
            out.push(elem);
        }
        return Ok((out, true));
    }
    Ok((vec![e], false))
}

/// The left ideal `B e` as a graded module with generator in weight 0.
fn left_ideal(b: &Arc<GradedAlgebra>, chi: usize, e: Vec<u32>) -> Result<IndecProjective> {
    let f = b.field();
    let n = b.dim();
    let base = b.base();
    let nchars = base.nchars();
    let mut blocks: std::collections::BTreeMap<(i32, u16), Echelon> = Default::default();
    for k in 0..n {
        let be = b.mul(&b.basis_vec(k), &e);
        if be.iter().all(|&x| x == 0) {
            continue;
        }
        for psi in 0..nchars {
            let v = b.mul(&base.idem[psi], &be);
            if v.iter().any(|&x| x != 0) {
                blocks
                    .entry((b.degree(k), psi as u16))
                    .or_insert_with(|| Echelon::new(f, n))
                    .insert(&v);
            }
        }
    }
    let mut weights = Vec::new();
    let mut chars = Vec::new();
    let mut elems = Vec::new();
    let mut offsets = std::collections::BTreeMap::new();
    for (&(w, c), ech) in &blocks {
        offsets.insert((w, c), elems.len());
        for row in ech.rows() {
            weights.push(w);
            chars.push(c);
            elems.push(row.clone());
        }
    }
    let dim = elems.len();
    let locate = |v: &[u32]| -> Result<Vec<(usize, u32)>> {
        let mut out = Vec::new();
        for psi in 0..nchars {
            let comp = b.mul(&base.idem[psi], v);
            if comp.iter().all(|&x| x == 0) {
                continue;
            }
            let d = b
                .degree_of(&comp)
                .ok_or_else(|| Error::Internal("inhomogeneous ideal element".into()))?;
            let key = (d, psi as u16);
            let ech = blocks
                .get(&key)
                .ok_or_else(|| Error::Internal("ideal not closed".into()))?;
            let c = crate::gmod::echelon_coords(f, ech, &comp)
                .ok_or_else(|| Error::Internal("ideal not closed".into()))?;
            let off = offsets[&key];
            out.extend(c.into_iter().enumerate().filter(|(_, x)| *x != 0).map(|(i, x)| (off + i, x)));
        }
        Ok(out)
    };
    let mut acts = Vec::with_capacity(b.gens().len());
    for &g in b.gens() {
        let mut trips = Vec::new();
        for (j, el) in elems.iter().enumerate() {
            let ge = b.mul(&b.basis_vec(g), el);
            for (i, x) in locate(&ge)? {
                trips.push((i, j, x));
            }
        }
        acts.push(SparseMat::from_triplets(f, dim, dim, &trips));
    }
    let gen = locate(&e)?
        .into_iter()
        .map(|(i, x)| (i as u32, x))
        .collect();
    let module = Module::new(b.clone(), weights, chars, acts)?;
    Ok(IndecProjective {
        chi,
        idem: e,
        module,
        elems,
        gen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn sl2_simples_have_dimensions_one_to_p() {
        let z = zoo::restricted_sl2(3).unwrap();
        let mut dims: Vec<usize> = simples(&z.alg).unwrap().iter().map(Module::dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 3]);
        for s in simples(&z.alg).unwrap().iter() {
            s.validate().unwrap();
        }
        // dim rad = 27 - (1 + 4 + 9)
        assert_eq!(radical_basis(&z.alg).unwrap().len(), 13);
    }

    #[test]
    fn projectives_decompose_the_regular_module() {
        for z in [zoo::restricted_sl2(2).unwrap(), zoo::restricted_sl2(3).unwrap()] {
            let pr = indecomposable_projectives(&z.alg).unwrap();
            assert!(pr.1);
            let mut total = 0;
            for list in &pr.0 {
                for p in list {
                    p.module.validate().unwrap();
                    total += p.module.dim();
                    // top of B e is simple
                    let rad = radical_submodule(&p.module).unwrap();
                    let top = p.module.dim() - rad.dim();
                    assert!(simples(&z.alg).unwrap().iter().any(|s| s.dim() == top));
                }
            }
            assert_eq!(total, z.alg.dim());
        }
    }

    #[test]
    fn one_signed_radical() {
        let z = zoo::restricted_sl2(3).unwrap();
        let ge = z.alg.piece(crate::galg::Piece::Ge).unwrap();
        assert_eq!(radical_basis(&ge).unwrap().len(), 6);
        assert_eq!(simples(&ge).unwrap().len(), 3);
    }
}
