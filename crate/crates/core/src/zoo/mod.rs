//! Built-in algebras: restricted enveloping algebras of sl2, small quantum
//! groups, Taft Borel algebras and a few small test algebras.

mod pbw;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use pbw::{Pbw, Rules};

use crate::error::{Error, Result};
use crate::exactla::{Fp, SparseMat};
use crate::galg::{AlgebraData, GradedAlgebra, Piece, TriangularData};
use crate::gmod::{induce, From, Module};

/// Parameters identifying a zoo algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ZooSpec {
    RestrictedSl2 { p: u32 },
    SmallQuantumSl2 { l: u32, p: u32, zeta: u32 },
    TaftBorel { n: u32, p: u32, zeta: u32 },
    DualNumbers { p: u32, deg: i32 },
    PathA2 { p: u32 },
    GroupAlgebraCyclic { n: u32, p: u32 },
}

/// A zoo algebra together with its defining parameters.
#[derive(Clone, Debug)]
pub struct ZooAlgebra {
    pub alg: Arc<GradedAlgebra>,
    pub spec: ZooSpec,
}

impl ZooAlgebra {
    pub fn label(&self) -> String {
        match &self.spec {
            ZooSpec::RestrictedSl2 { p } => format!("restricted_sl2({p})"),
            ZooSpec::SmallQuantumSl2 { l, p, .. } => format!("small_quantum_sl2({l},{p})"),
            ZooSpec::TaftBorel { n, p, .. } => format!("taft_borel({n},{p})"),
            ZooSpec::DualNumbers { p, deg } => format!("dual_numbers({p},{deg})"),
            ZooSpec::PathA2 { p } => format!("path_a2({p})"),
            ZooSpec::GroupAlgebraCyclic { n, p } => format!("group_algebra_cyclic({n},{p})"),
        }
    }

    /// Whether the algebra carries a Hopf structure in the zoo.
    pub fn is_hopf(&self) -> bool {
        matches!(
            self.spec,
            ZooSpec::RestrictedSl2 { .. }
                | ZooSpec::SmallQuantumSl2 { .. }
                | ZooSpec::TaftBorel { .. }
                | ZooSpec::GroupAlgebraCyclic { .. }
        )
    }
}

/// Smallest primitive root modulo a prime.
pub fn primitive_root(f: Fp) -> u32 {
    let p = f.p();
    (1..p).find(|&g| f.order(g) == p - 1).unwrap_or(1)
}

/// The canonical primitive `l`-th root of unity: `g^((p-1)/l)` for the
/// smallest primitive root `g`.
pub fn root_of_unity(f: Fp, l: u32) -> Result<u32> {
    let p = f.p();
    if l == 0 || !(p - 1).is_multiple_of(l) {
        return Err(Error::Precondition(format!(
            "F_{p} has no primitive root of unity of order {l}"
        )));
    }
    Ok(f.pow(primitive_root(f), ((p - 1) / l) as u64))
}

fn build_pbw(
    pbw: &mut Pbw,
    tri: Option<(usize, usize)>,
) -> Result<Arc<GradedAlgebra>> {
    let monos = pbw.monomials();
    let index: BTreeMap<Vec<u32>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut mult = Vec::new();
    for (i, a) in monos.iter().enumerate() {
        for (j, b) in monos.iter().enumerate() {
            for (m, c) in pbw.mul(a, b) {
                mult.push((i, j, index[&m], c as i64));
            }
        }
    }
    let names = monos.iter().map(|m| pbw.name(m)).collect();
    let degrees = monos.iter().map(|m| pbw.degree(m)).collect();
    let mut unit = vec![0i64; monos.len()];
    unit[index[&vec![0; pbw.rules().letters.len()]]] = 1;
    let tri = tri.map(|(neg, pos)| {
        let pick = |ok: &dyn Fn(&Vec<u32>) -> bool| -> Vec<usize> {
            monos.iter().enumerate().filter(|(_, m)| ok(m)).map(|(i, _)| i).collect()
        };
        TriangularData {
            a0: pick(&|m| m[neg] == 0 && m[pos] == 0),
            ge: pick(&|m| m[neg] == 0),
            le: pick(&|m| m[pos] == 0),
        }
    });
    GradedAlgebra::new(AlgebraData {
        p: pbw.rules().field.p(),
        names,
        degrees,
        mult,
        unit,
        tri,
    })
}

/// `u(sl2)` over `F_p`: letters `f, h, e` with `he - eh = 2e`,
/// `hf - fh = -2f`, `ef - fe = h`, `e^p = f^p = 0`, `h^p = h`.
/// `e` has degree 1 and `f` degree -1.
pub fn restricted_sl2(p: u32) -> Result<ZooAlgebra> {
    let f = Fp::new(p)?;
    let (lf, lh, le) = (0usize, 1usize, 2usize);
    let mut swap = BTreeMap::new();
    swap.insert((lh, lf), vec![(1, vec![lf, lh]), (f.reduce(-2), vec![lf])]);
    swap.insert((le, lf), vec![(1, vec![lf, le]), (1, vec![lh])]);
    swap.insert((le, lh), vec![(1, vec![lh, le]), (f.reduce(-2), vec![le])]);
    let rules = Rules {
        field: f,
        letters: vec!["f".into(), "h".into(), "e".into()],
        degrees: vec![-1, 0, 1],
        bound: vec![p, p, p],
        power: vec![vec![], vec![(1, vec![lh])], vec![]],
        swap,
    };
    let alg = build_pbw(&mut Pbw::new(rules), Some((lf, le)))?;
    Ok(ZooAlgebra {
        alg,
        spec: ZooSpec::RestrictedSl2 { p },
    })
}

/// Small quantum group `u_zeta(sl2)` with `zeta` a primitive `l`-th root of
/// unity in `F_p`: letters `F, K, E` with `K E = zeta^2 E K`,
/// `K F = zeta^-2 F K`, `E F - F E = (K - K^{l-1}) / (zeta - zeta^{-1})`,
/// `E^l = F^l = 0`, `K^l = 1`.
pub fn small_quantum_sl2(l: u32, p: u32) -> Result<ZooAlgebra> {
    let f = Fp::new(p)?;
    if l < 3 || l.is_multiple_of(2) {
        return Err(Error::Precondition(format!("order {l} must be odd and at least 3")));
    }
    let z = root_of_unity(f, l)?;
    let zinv = f.inv(z);
    let (lf, lk, le) = (0usize, 1usize, 2usize);
    let c = f.inv(f.sub(z, zinv));
    let mut swap = BTreeMap::new();
    // K F = zeta^-2 F K ; E K = zeta^-2 K E ; E F = F E + c K - c K^{l-1}
    swap.insert((lk, lf), vec![(f.mul(zinv, zinv), vec![lf, lk])]);
    swap.insert((le, lk), vec![(f.mul(zinv, zinv), vec![lk, le])]);
    swap.insert(
        (le, lf),
        vec![
            (1, vec![lf, le]),
            (c, vec![lk]),
            (f.neg(c), vec![lk; (l - 1) as usize]),
        ],
    );
    let rules = Rules {
        field: f,
        letters: vec!["F".into(), "K".into(), "E".into()],
        degrees: vec![-1, 0, 1],
        bound: vec![l, l, l],
        power: vec![vec![], vec![(1, vec![])], vec![]],
        swap,
    };
    let alg = build_pbw(&mut Pbw::new(rules), Some((lf, le)))?;
    Ok(ZooAlgebra {
        alg,
        spec: ZooSpec::SmallQuantumSl2 { l, p, zeta: z },
    })
}

/// Taft algebra of order `n`: `g^n = 1`, `x^n = 0`, `x g = zeta g x`, with
/// `x` in degree 1. No triangular data.
pub fn taft_borel(n: u32, p: u32) -> Result<ZooAlgebra> {
    let f = Fp::new(p)?;
    if n < 2 {
        return Err(Error::Precondition("Taft order must be at least 2".into()));
    }
    let z = root_of_unity(f, n)?;
    let mut swap = BTreeMap::new();
    swap.insert((1, 0), vec![(z, vec![0, 1])]);
    let rules = Rules {
        field: f,
        letters: vec!["g".into(), "x".into()],
        degrees: vec![0, 1],
        bound: vec![n, n],
        power: vec![vec![(1, vec![])], vec![]],
        swap,
    };
    let alg = build_pbw(&mut Pbw::new(rules), None)?;
    Ok(ZooAlgebra {
        alg,
        spec: ZooSpec::TaftBorel { n, p, zeta: z },
    })
}

/// `F_p[x]/(x^2)` with `x` in degree `deg`.
pub fn dual_numbers(p: u32, deg: i32) -> Result<ZooAlgebra> {
    let alg = GradedAlgebra::new(AlgebraData {
        p,
        names: vec!["1".into(), "x".into()],
        degrees: vec![0, deg],
        mult: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        unit: vec![1, 0],
        tri: None,
    })?;
    Ok(ZooAlgebra {
        alg,
        spec: ZooSpec::DualNumbers { p, deg },
    })
}

/// Path algebra of the quiver `1 -> 2` with the arrow in degree 1. The unit
/// `e1 + e2` is not a basis vector.
pub fn path_a2(p: u32) -> Result<ZooAlgebra> {
    // basis e1, e2, a with a = e2 a e1
    let alg = GradedAlgebra::new(AlgebraData {
        p,
        names: vec!["e1".into(), "e2".into(), "a".into()],
        degrees: vec![0, 0, 1],
        mult: vec![(0, 0, 0, 1), (1, 1, 1, 1), (1, 2, 2, 1), (2, 0, 2, 1)],
        unit: vec![1, 1, 0],
        tri: None,
    })?;
    Ok(ZooAlgebra {
        alg,
        spec: ZooSpec::PathA2 { p },
    })
}

/// Group algebra of the cyclic group of order `n`, concentrated in degree 0.
pub fn group_algebra_cyclic(n: u32, p: u32) -> Result<ZooAlgebra> {
    let n = n as usize;
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mult.push((i, j, (i + j) % n, 1));
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let alg = GradedAlgebra::new(AlgebraData {
        p,
        names: (0..n).map(|i| format!("g^{i}")).collect(),
        degrees: vec![0; n],
        mult,
        unit,
        tri: None,
    })?;
    Ok(ZooAlgebra {
        alg,
        spec: ZooSpec::GroupAlgebraCyclic { n: n as u32, p },
    })
}

/// Build a zoo algebra from a family name as used on the command line.
pub fn by_name(family: &str, p: u32, l: Option<u32>) -> Result<ZooAlgebra> {
    match family {
        "restricted-sl2" | "restricted_sl2" | "rsl2" => restricted_sl2(p),
        "small-quantum-sl2" | "small_quantum_sl2" | "quantum" => {
            small_quantum_sl2(l.ok_or_else(|| Error::Precondition("--l is required".into()))?, p)
        }
        "taft-borel" | "taft_borel" | "taft" => {
            taft_borel(l.ok_or_else(|| Error::Precondition("--l is required".into()))?, p)
        }
        "dual-numbers" | "dual_numbers" => dual_numbers(p, l.map_or(1, |d| d as i32)),
        "path-a2" | "path_a2" => path_a2(p),
        "group-algebra-cyclic" | "group_algebra_cyclic" => {
            group_algebra_cyclic(l.ok_or_else(|| Error::Precondition("--l is required".into()))?, p)
        }
        other => Err(Error::Parse(format!("unknown family {other}"))),
    }
}

/// The algebras the acceptance suite runs on.
pub fn standard_panel() -> Result<Vec<ZooAlgebra>> {
    Ok(vec![
        restricted_sl2(2)?,
        restricted_sl2(3)?,
        restricted_sl2(5)?,
        small_quantum_sl2(3, 7)?,
        small_quantum_sl2(5, 11)?,
    ])
}

/// One-dimensional module of weight 0 on which the base acts by character
/// `chi` and all other generators act by zero, if that is a module.
pub fn one_dim(alg: &Arc<GradedAlgebra>, chi: usize) -> Option<Module> {
    let f = alg.field();
    let base = alg.base();
    let acts = alg
        .gens()
        .iter()
        .enumerate()
        .map(|(g, _)| {
            let v = if g < base.ngens { base.gen_values[chi][g] } else { 0 };
            SparseMat::from_triplets(f, 1, 1, &[(0, 0, v)])
        })
        .collect();
    let m = Module::new(alg.clone(), vec![0], vec![chi as u16], acts).ok()?;
    m.validate().ok().map(|_| m)
}

/// The trivial module: the unique one-dimensional module of weight 0 killed
/// by every generator of nonzero degree. Errors if it is not unique.
pub fn trivial(alg: &Arc<GradedAlgebra>) -> Result<Module> {
    let found: Vec<Module> = (0..alg.base().nchars())
        .filter_map(|c| one_dim(alg, c))
        .filter(|m| {
            alg.gens()
                .iter()
                .enumerate()
                .all(|(g, &k)| alg.degree(k) == 0 || m.act(g).is_zero())
        })
        .collect();
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::Precondition("no one-dimensional trivial module".into())),
        n => Err(Error::Precondition(format!("{n} candidate trivial modules"))),
    }
}

/// Character of the trivial module.
pub fn trivial_char(alg: &Arc<GradedAlgebra>) -> Result<usize> {
    Ok(trivial(alg)?.chars()[0] as usize)
}

/// Baby Verma module `A (x)_{A>=0} k_chi` for a base character `chi`.
pub fn baby_verma(alg: &Arc<GradedAlgebra>, chi: usize) -> Result<Module> {
    let ge = alg.piece(Piece::Ge)?;
    let k = one_dim(&ge, chi).ok_or_else(|| {
        Error::Precondition(format!("character {chi} does not extend to A>=0"))
    })?;
    induce(alg, From::Ge, &k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_associativity() {
        for p in [2, 3, 5] {
            assert_eq!(restricted_sl2(p).unwrap().alg.dim(), (p * p * p) as usize);
        }
        let q = small_quantum_sl2(3, 7).unwrap();
        assert_eq!(q.alg.dim(), 27);
        assert_eq!(taft_borel(3, 7).unwrap().alg.dim(), 9);
        assert!(small_quantum_sl2(4, 13).is_err());
    }

    #[test]
    fn generators_and_base() {
        let a = restricted_sl2(3).unwrap().alg;
        let names: Vec<&str> = a.gens().iter().map(|&g| a.names()[g].as_str()).collect();
        assert_eq!(names, vec!["h", "e", "f"]);
        assert_eq!(a.base().nchars(), 3);
        assert_eq!(a.base().ngens, 1);
    }

    #[test]
    fn trivial_and_verma() {
        for z in standard_panel().unwrap().into_iter().take(4) {
            let k = trivial(&z.alg).unwrap();
            assert_eq!(k.dim(), 1);
            let v = baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
            v.validate().unwrap();
            let l = match z.spec {
                ZooSpec::RestrictedSl2 { p } => p,
                ZooSpec::SmallQuantumSl2 { l, .. } => l,
                _ => unreachable!(),
            } as i32;
            let ws: Vec<i32> = v.weight_dims().keys().copied().collect();
            assert_eq!(ws, (-(l - 1)..=0).collect::<Vec<_>>());
        }
    }

    #[test]
    fn test_algebras_build() {
        assert_eq!(path_a2(5).unwrap().alg.dim(), 3);
        assert_eq!(dual_numbers(3, 1).unwrap().alg.base().nchars(), 1);
        let g = group_algebra_cyclic(3, 7).unwrap();
        assert_eq!(g.alg.base().nchars(), 3);
    }
}
