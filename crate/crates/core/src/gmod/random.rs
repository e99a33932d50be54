//! Seeded random modules for test panels.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coind::{coinduce, induce, From};
use super::module::Module;
use super::sub::GradedSubspace;
use crate::error::Result;
use crate::exactla::SparseMat;
use crate::galg::{GradedAlgebra, Piece};

/// The generator used for every randomized panel.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One-dimensional module of the base algebra with character `chi`.
pub fn base_character(alg: &Arc<GradedAlgebra>, chi: usize) -> Result<Module> {
    let b = alg.base_algebra()?;
    let f = b.field();
    let acts = b
        .gens()
        .iter()
        .enumerate()
        .map(|(g, _)| SparseMat::from_triplets(f, 1, 1, &[(0, 0, b.base().gen_values[chi][g])]))
        .collect();
    Module::new(b, vec![0], vec![chi as u16], acts)
}

/// The indecomposable relative projective `alg e_chi`, generated in weight 0.
pub fn peirce_projective(alg: &Arc<GradedAlgebra>, chi: usize) -> Result<Module> {
    induce(alg, From::Base, &base_character(alg, chi)?)
}

/// Quotient of `m` by the submodule generated by `ngens` random homogeneous
/// vectors. Falls back to `m` when the quotient would vanish.
pub fn random_quotient(m: &Module, rng: &mut impl Rng, ngens: usize) -> Module {
    if m.is_zero() {
        return m.clone();
    }
    let keys: Vec<_> = m.blocks().keys().copied().collect();
    let f = m.field();
    let mut vecs = Vec::new();
    for _ in 0..ngens {
        let key = keys[rng.gen_range(0..keys.len())];
        let idx = m.block(key);
        let v: Vec<(u32, u32)> = idx
            .iter()
            .map(|&i| (i as u32, rng.gen_range(0..f.p())))
            .filter(|&(_, x)| x != 0)
            .collect();
        vecs.push(v);
    }
    let sub = GradedSubspace::generated(m, &vecs);
    if sub.dim() == m.dim() {
        return m.clone();
    }
    sub.quotient(m).module
}

/// A random module over any algebra whose base is split: a quotient of a
/// random relative projective, randomly shifted.
pub fn random_module(alg: &Arc<GradedAlgebra>, rng: &mut impl Rng) -> Result<Module> {
    let chi = rng.gen_range(0..alg.base().nchars());
    let p = peirce_projective(alg, chi)?;
    let ngens = rng.gen_range(1..=2);
    let q = random_quotient(&p, rng, ngens);
    Ok(q.shift(rng.gen_range(-2..=2)))
}

/// Labelled panel of modules over a triangular algebra, mixing injective and
/// non-injective members over `A^{<=0}`.
pub fn module_panel(
    alg: &Arc<GradedAlgebra>,
    seed: u64,
    count: usize,
) -> Result<Vec<(String, Module)>> {
    let mut rng = rng_from_seed(seed);
    let ge = alg.piece(Piece::Ge)?;
    let le = alg.piece(Piece::Le)?;
    let mut out = Vec::with_capacity(count);
    let triv = crate::zoo::trivial(alg)?;
    let tchi = triv.chars()[0] as usize;
    for k in 0..count {
        let (label, m) = match k % 10 {
            0 => ("trivial".to_string(), triv.shift(rng.gen_range(-1..=1))),
            1 => {
                let chi = rng.gen_range(0..alg.base().nchars());
                ("baby_verma".into(), crate::zoo::baby_verma(alg, chi)?)
            }
            2 => ("coind_ge".into(), coinduce(alg, From::Ge, &random_module(&ge, &mut rng)?)?),
            3 => ("coind_le".into(), coinduce(alg, From::Le, &random_module(&le, &mut rng)?)?),
            4 => ("quotient".into(), random_module(alg, &mut rng)?),
            5 => {
                let op = alg.opposite();
                let q = random_module(&op, &mut rng)?;
                ("dual_quotient".into(), q.dual().rebase(alg)?)
            }
            6 => {
                let a = coinduce(alg, From::Ge, &random_module(&ge, &mut rng)?)?;
                let b = coinduce(alg, From::Ge, &random_module(&ge, &mut rng)?)?;
                ("coind_ge_sum".into(), a.direct_sum(&b.shift(rng.gen_range(1..=3))))
            }
            7 => {
                let chi = rng.gen_range(0..alg.base().nchars());
                ("peirce_projective".into(), peirce_projective(alg, chi)?)
            }
            8 => {
                let v = crate::zoo::baby_verma(alg, tchi)?;
                ("verma_plus_trivial".into(), v.direct_sum(&triv.shift(rng.gen_range(-2..=2))))
            }
            _ => {
                let m = random_module(alg, &mut rng)?;
                let c = coinduce(alg, From::Ge, &random_module(&ge, &mut rng)?)?;
                ("quotient_plus_coind".into(), m.direct_sum(&c))
            }
        };
        out.push((format!("{k}:{label}"), m));
    }
    Ok(out)
}
