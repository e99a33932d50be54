use std::sync::Arc;

use serde::Serialize;

use super::radical::{radical, trace_form_nondegenerate};
use super::{GradedAlgebra, Piece, Structure};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularWitness {
    pub ok: bool,
    pub dim: usize,
    /// Dimensions of `A^{>=0} (x)_{A^0} A^{<=0}` and `A^{<=0} (x)_{A^0} A^{>=0}`.
    pub ge_le: usize,
    pub le_ge: usize,
    /// Ranks of the two multiplication maps.
    pub ge_le_rank: usize,
    pub le_ge_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleReport {
    pub ok: bool,
    pub radical_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfInjectiveReport {
    pub ok: bool,
    /// `dim Ext^1(S, B)` per simple `S`, summed over weight shifts.
    pub ext1: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub triangular: TriangularWitness,
    pub semisimple: SemisimpleReport,
    pub self_injective: SelfInjectiveReport,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.triangular.ok && self.semisimple.ok && self.self_injective.ok
    }

    /// 0 when everything holds, else the code of the first failing check in
    /// the order semisimple (3), triangular (4), self-injective (5).
    pub fn exit_code(&self) -> i32 {
        if !self.semisimple.ok {
            3
        } else if !self.triangular.ok {
            4
        } else if !self.self_injective.ok {
            5
        } else {
            0
        }
    }
}

/// `(dim X (x)_{A^0} Y, rank of multiplication)` for basis index sets `x`
/// and `y` of two pieces.
fn tensor_over_base(s: &Structure, x: &[usize], y: &[usize], a0: &[usize]) -> (usize, usize) {
    let f = s.field;
    let pos = |set: &[usize], v: &[u32]| -> Vec<(usize, u32)> {
        set.iter()
            .enumerate()
            .filter_map(|(p, &i)| (v[i] != 0).then_some((p, v[i])))
            .collect()
    };
    let ny = y.len();
    let mut rel = Echelon::new(f, x.len() * ny);
    for &t in a0 {
        let tv = s.basis_vec(t);
        for (px, &xi) in x.iter().enumerate() {
            let xt = pos(x, &s.mul(&s.basis_vec(xi), &tv));
            for (py, &yi) in y.iter().enumerate() {
                let ty = pos(y, &s.mul(&tv, &s.basis_vec(yi)));
                let mut v = vec![0u32; x.len() * ny];
                for &(p, c) in &xt {
                    v[p * ny + py] = f.add(v[p * ny + py], c);
                }
                for &(q, c) in &ty {
                    v[px * ny + q] = f.sub(v[px * ny + q], c);
                }
                rel.insert(&v);
            }
        }
    }
    let cols: Vec<Vec<u32>> = x
        .iter()
        .flat_map(|&xi| y.iter().map(move |&yi| (xi, yi)))
        .map(|(xi, yi)| s.mul(&s.basis_vec(xi), &s.basis_vec(yi)))
        .collect();
    let rank = Mat::from_cols(f, s.n, &cols).rank();
    (x.len() * ny - rel.dim(), rank)
}

/// Bijectivity of `A^{>=0} (x)_{A^0} A^{<=0} -> A` and the mirror map.
pub fn check_triangular(a: &Arc<GradedAlgebra>) -> Result<TriangularWitness> {
    let t = a.tri().ok_or(Error::NoTriangular)?.clone();
    for piece in [Piece::Ge, Piece::Le, Piece::Zero] {
        a.piece(piece)?;
    }
    let s = a.structure();
    let (ge_le, ge_le_rank) = tensor_over_base(s, &t.ge, &t.le, &t.a0);
    let (le_ge, le_ge_rank) = tensor_over_base(s, &t.le, &t.ge, &t.a0);
    let dim = a.dim();
    Ok(TriangularWitness {
        ok: ge_le == dim && le_ge == dim && ge_le_rank == dim && le_ge_rank == dim,
        dim,
        ge_le,
        le_ge,
        ge_le_rank,
        le_ge_rank,
    })
}

pub fn check_semisimple(s: &Structure) -> Result<SemisimpleReport> {
    if trace_form_nondegenerate(s) {
        return Ok(SemisimpleReport { ok: true, radical_dim: 0 });
    }
    let r = radical(s)?.cols();
    Ok(SemisimpleReport { ok: r == 0, radical_dim: r })
}

/// `Ext^1_B(S, B) = 0` for every simple `S`.
pub fn check_self_injective(b: &Arc<GradedAlgebra>) -> Result<SelfInjectiveReport> {
    let (reg, _) = crate::gmod::regular_module(b)?;
    let simples = crate::resolve::simples(b)?;
    let ext1 = simples
        .iter()
        .map(|s| crate::sinf::ext_degree_total(s, &reg, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(SelfInjectiveReport {
        ok: ext1.iter().all(|&d| d == 0),
        ext1,
    })
}

/// All standing assumptions: triangular decomposition, semisimple `A^0`,
/// self-injective `A^{>=0}`.
pub fn verify_axioms(a: &Arc<GradedAlgebra>) -> Result<AxiomReport> {
    let triangular = check_triangular(a)?;
    let semisimple = check_semisimple(a.piece(Piece::Zero)?.structure())?;
    let self_injective = if semisimple.ok {
        check_self_injective(&a.piece(Piece::Ge)?)?
    } else {
        // simples of A^{>=0} need a split semisimple A^0
        SelfInjectiveReport { ok: false, ext1: Vec::new() }
    };
    Ok(AxiomReport {
        triangular,
        semisimple,
        self_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn zoo_algebras_satisfy_the_axioms() {
        for z in [zoo::restricted_sl2(3).unwrap(), zoo::small_quantum_sl2(3, 7).unwrap()] {
            let r = verify_axioms(&z.alg).unwrap();
            assert!(r.all_ok(), "{r:?}");
            assert_eq!(r.triangular.ge_le, 27);
            assert_eq!(r.exit_code(), 0);
        }
    }

    #[test]
    fn semisimplicity_examples() {
        let g = zoo::group_algebra_cyclic(3, 7).unwrap();
        assert!(check_semisimple(g.alg.structure()).unwrap().ok);
        let d = zoo::dual_numbers(2, 0).unwrap();
        let r = check_semisimple(d.alg.structure()).unwrap();
        assert!(!r.ok);
        assert_eq!(r.radical_dim, 1);
    }

    #[test]
    fn self_injectivity_examples() {
        let d = zoo::dual_numbers(2, 1).unwrap();
        assert!(check_self_injective(&d.alg).unwrap().ok);
        let q = zoo::path_a2(3).unwrap();
        assert!(!check_self_injective(&q.alg).unwrap().ok);
    }
}
