//! Coresolutions by coinduced modules, relative injectivity and the
//! coinduced filtration.

use std::sync::Arc;

use super::simple::simples;
use crate::error::{Error, Result};
use crate::exactla::SparseMat;
use crate::galg::{GradedAlgebra, Piece};
use crate::gmod::{kernel, Coinduction, From, GradedSubspace, Module, Quo};
use crate::homcx::{assemble, ChainMap, Complex, Continuation};

fn piece_of(from: From) -> Piece {
    match from {
        From::Ge => Piece::Ge,
        From::Le => Piece::Le,
        From::Base => Piece::Zero,
    }
}

/// One step `M -> I -> coker` with `I = CoInd(Res M)`.
#[derive(Clone, Debug)]
pub struct CoStep {
    pub injective: Module,
    pub embed: SparseMat,
    pub coker: Quo,
}

pub fn coresolution_step(from: From, m: &Module) -> Result<CoStep> {
    let co = Coinduction::get(m.alg(), from)?;
    step_with(&co, from, m)
}

fn step_with(co: &Coinduction, from: From, m: &Module) -> Result<CoStep> {
    let injective = co.apply(&m.restrict(piece_of(from))?)?;
    let embed = co.unit_map(m, &injective)?;
    let img = GradedSubspace::span(
        &injective,
        &(0..embed.cols()).map(|j| embed.col(j).to_vec()).collect::<Vec<_>>(),
    );
    let coker = img.quotient(&injective);
    Ok(CoStep {
        injective,
        embed,
        coker,
    })
}

struct Level {
    j: Module,
    embed: SparseMat,
    quo: Quo,
}

/// Functorial coinduction coresolution of a finite complex, totalized.
///
/// Column `a` resolves `X^a` by iterated coinduction steps; the differential
/// of `X` induces the horizontal maps. Coinduction from `A^{>=0}` gives the
/// concave resolution, from `A^{<=0}` the convex one.
pub struct CoindResolution {
    from: From,
    x: Complex,
    co: Arc<Coinduction>,
    /// `levels[b][a]`.
    levels: Vec<Vec<Level>>,
    /// `cmaps[b][a]: C^{a,b} -> C^{a+1,b}` with `C^{a,0} = X^a`.
    cmaps: Vec<Vec<SparseMat>>,
    /// `jmaps[b][a]: J^{a,b} -> J^{a+1,b}`.
    jmaps: Vec<Vec<SparseMat>>,
    cur: Vec<Module>,
    complete: bool,
}

impl CoindResolution {
    pub fn new(from: From, x: &Complex) -> Result<Self> {
        if x.continuation != Continuation::Complete {
            return Err(Error::Precondition("only finite complexes are resolved".into()));
        }
        let alg = x.terms[0].alg().clone();
        let co = Coinduction::get(&alg, from)?;
        let cmaps0: Vec<SparseMat> = x.diffs.clone();
        Ok(CoindResolution {
            from,
            x: x.clone(),
            co,
            levels: Vec::new(),
            cmaps: vec![cmaps0],
            jmaps: Vec::new(),
            cur: x.terms.clone(),
            complete: false,
        })
    }

    pub fn of_module(from: From, m: &Module) -> Result<Self> {
        Self::new(from, &Complex::single(m.clone(), 0))
    }

    pub fn from(&self) -> From {
        self.from
    }

    pub fn source(&self) -> &Complex {
        &self.x
    }

    fn add_level(&mut self) -> Result<()> {
        let b = self.levels.len();
        let mut row = Vec::with_capacity(self.cur.len());
        for c in &self.cur {
            let s = step_with(&self.co, self.from, c)?;
            row.push(Level {
                j: s.injective,
                embed: s.embed,
                quo: s.coker,
            });
        }
        let mut jrow = Vec::new();
        let mut next_c = Vec::new();
        for a in 0..self.cur.len().saturating_sub(1) {
            let h = &self.cmaps[b][a];
            let hj = self.co.apply_map(&self.cur[a], &self.cur[a + 1], h);
            let hc = row[a + 1].quo.proj.compose(&hj).compose(&row[a].quo.section);
            jrow.push(hj);
            next_c.push(hc);
        }
        self.cur = row.iter().map(|l| l.quo.module.clone()).collect();
        self.complete = self.cur.iter().all(Module::is_zero);
        self.levels.push(row);
        self.jmaps.push(jrow);
        self.cmaps.push(next_c);
        Ok(())
    }

    /// Make levels `0..=depth` available.
    pub fn extend(&mut self, depth: usize) -> Result<()> {
        while self.levels.len() <= depth && !self.complete {
            self.add_level()?;
        }
        Ok(())
    }

    /// The continuation bound: `alpha` for `Le`, `beta` for `Ge`.
    pub fn weight_bound(&self) -> Option<i32> {
        let start = self.x.start;
        let it = self.x.terms.iter().enumerate();
        match self.from {
            From::Ge => it
                .filter_map(|(a, t)| Some(t.min_weight()? - (start + a as i32)))
                .min(),
            _ => it
                .filter_map(|(a, t)| Some(t.max_weight()? + start + a as i32))
                .max(),
        }
    }

    /// The total complex in degrees `start..=start + depth`, and the
    /// augmentation from the source complex.
    pub fn complex(&mut self, depth: usize) -> Result<(Complex, ChainMap)> {
        self.extend(depth)?;
        let alg = self.x.terms[0].alg().clone();
        let f = alg.field();
        let ncols = self.x.terms.len();
        let start = self.x.start;
        let nlev = self.levels.len();
        let zero = Module::zero(alg.clone());
        let j_at = |a: usize, b: usize| -> &Module {
            if b < nlev {
                &self.levels[b][a].j
            } else {
                &zero
            }
        };
        let mut terms = Vec::new();
        let mut layout: Vec<Vec<(usize, usize)>> = Vec::new();
        for n in 0..=depth {
            let mut parts = Vec::new();
            let mut lay = Vec::new();
            for a in 0..ncols.min(n + 1) {
                let b = n - a;
                lay.push((a, b));
                parts.push(j_at(a, b));
            }
            terms.push(Module::direct_sum_all(&alg, &parts));
            layout.push(lay);
        }
        let mut diffs = Vec::new();
        for n in 0..depth {
            let src = &layout[n];
            let tgt = &layout[n + 1];
            let rdims: Vec<usize> = tgt.iter().map(|&(a, b)| j_at(a, b).dim()).collect();
            let cdims: Vec<usize> = src.iter().map(|&(a, b)| j_at(a, b).dim()).collect();
            let mut blocks = Vec::new();
            for (ci, &(a, b)) in src.iter().enumerate() {
                if b >= nlev || j_at(a, b).dim() == 0 {
                    continue;
                }
                if a + 1 < ncols {
                    if let Some(ri) = tgt.iter().position(|&t| t == (a + 1, b)) {
                        if rdims[ri] > 0 {
                            blocks.push(((ri, ci), self.jmaps[b][a].clone()));
                        }
                    }
                }
                if let Some(ri) = tgt.iter().position(|&t| t == (a, b + 1)) {
                    if rdims[ri] > 0 && b + 1 < nlev {
                        let dv = self.levels[b + 1][a]
                            .embed
                            .compose(&self.levels[b][a].quo.proj);
                        let sign = if (start + a as i32) % 2 == 0 { 1 } else { f.neg(1) };
                        blocks.push(((ri, ci), dv.scale(sign)));
                    }
                }
            }
            diffs.push(assemble(f, &rdims, &cdims, &blocks));
        }
        let mut maps = Vec::new();
        for a in 0..ncols.min(depth + 1) {
            let lay = &layout[a];
            let rdims: Vec<usize> = lay.iter().map(|&(x, y)| j_at(x, y).dim()).collect();
            let ri = lay.iter().position(|&t| t == (a, 0)).unwrap();
            let blocks = if nlev > 0 && rdims[ri] > 0 {
                vec![((ri, 0), self.levels[0][a].embed.clone())]
            } else {
                Vec::new()
            };
            maps.push(assemble(f, &rdims, &[self.x.terms[a].dim()], &blocks));
        }
        let continuation = if self.complete && nlev + ncols <= depth + 1 {
            Continuation::Complete
        } else {
            match (self.from, self.weight_bound()) {
                (_, None) => Continuation::Complete,
                (From::Ge, Some(b)) => Continuation::WeightsUp { bound: b },
                (_, Some(b)) => Continuation::WeightsDown { bound: b },
            }
        };
        let c = Complex::new(start, terms, diffs, continuation)?;
        Ok((c, ChainMap { start, maps }))
    }
}

/// Concave resolution by `A^{<=0}`-injective modules (coinduction from
/// `A^{>=0}`), with terms in degrees `start..=start + depth`.
pub fn concave_resolution(x: &Complex, depth: usize) -> Result<(Complex, ChainMap)> {
    CoindResolution::new(From::Ge, x)?.complex(depth)
}

/// Convex resolution by `A^{>=0}`-injective modules (coinduction from
/// `A^{<=0}`).
pub fn convex_resolution(x: &Complex, depth: usize) -> Result<(Complex, ChainMap)> {
    CoindResolution::new(From::Le, x)?.complex(depth)
}

/// Whether `Ext^1_B(S, M) = 0` for all simple `B`-modules `S`, with `B` a
/// piece of the algebra of `M`.
pub fn injectivity_test(m: &Module, piece: Piece) -> Result<bool> {
    let alg = m.alg();
    let b = match piece {
        Piece::Full => alg.clone(),
        p => alg.piece(p)?,
    };
    let mb = if piece == Piece::Full { m.clone() } else { m.restrict(piece)? };
    for s in simples(&b)?.iter() {
        if crate::sinf::ext_degree_total(s, &mb, 1)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Concave resolution by `A`-injective modules of a finite complex of
/// `A^{>=0}`-injective modules.
pub fn a_injective_concave_resolution(x: &Complex, depth: usize) -> Result<(Complex, ChainMap)> {
    for (t, m) in x.terms.iter().enumerate() {
        if !injectivity_test(m, Piece::Ge)? {
            return Err(Error::NotGeInjective { term: t });
        }
    }
    concave_resolution(x, depth)
}

/// One layer of the coinduced filtration: `N_l -> CoInd(N_l^-)` is onto.
#[derive(Clone, Debug)]
pub struct FifiLayer {
    pub weight: i32,
    /// The lowest weight component as an `A^{>=0}`-module.
    pub lowest: Module,
    /// `CoInd_{A^{>=0}}^A` of `lowest`.
    pub quotient: Module,
    /// Dimension of the kernel that remains.
    pub remaining: usize,
}

/// Filtration with coinduced subquotients, peeling lowest weights. Fails
/// with the offending layer if a surjection breaks down.
pub fn fifi_filtration(n: &Module) -> Result<Vec<FifiLayer>> {
    let alg: Arc<GradedAlgebra> = n.alg().clone();
    let ge = alg.piece(Piece::Ge)?;
    let co = Coinduction::get(&alg, From::Ge)?;
    let mut layers = Vec::new();
    let mut cur = n.clone();
    while !cur.is_zero() {
        let low = cur.min_weight().unwrap();
        let res = cur.restrict(Piece::Ge)?;
        // the lowest weight part is a quotient of the restriction
        let upper: Vec<Vec<(u32, u32)>> = (0..res.dim())
            .filter(|&i| res.weights()[i] > low)
            .map(|i| vec![(i as u32, 1)])
            .collect();
        let sub = GradedSubspace::span(&res, &upper);
        let q = sub.quotient(&res);
        let lowest = q.module.rebase(&ge)?;
        let target = co.apply(&lowest)?;
        let unit_target = co.apply(&res)?;
        let unit = co.unit_map(&cur, &unit_target)?;
        let psi = co.apply_map(&res, &lowest, &q.proj).compose(&unit);
        let rank = crate::gmod::block_rank(&cur, &target, &psi, 0);
        if rank != target.dim() {
            return Err(Error::NotLeInjective {
                layer: layers.len(),
            });
        }
        let ker = kernel(&cur, &target, &psi, 0).submodule(&cur)?;
        layers.push(FifiLayer {
            weight: low,
            lowest,
            quotient: target,
            remaining: ker.module.dim(),
        });
        cur = ker.module;
    }
    Ok(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::coinduce;
    use crate::homcx::quasi_iso_check;
    use crate::zoo;

    #[test]
    fn sl2_step_example() {
        let z = zoo::restricted_sl2(3).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let s = coresolution_step(From::Ge, &k).unwrap();
        assert_eq!(s.injective.dim(), 3);
        assert_eq!(s.coker.module.dim(), 2);
        let ws: Vec<i32> = s.coker.module.weight_dims().keys().copied().collect();
        assert_eq!(ws, vec![1, 2]);
    }

    #[test]
    fn resolutions_of_trivial_module() {
        let z = zoo::restricted_sl2(3).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let x = Complex::single(k.clone(), 0);
        let (up, aug) = concave_resolution(&x, 4).unwrap();
        let dims: Vec<usize> = up.terms.iter().map(Module::dim).collect();
        assert_eq!(&dims[..2], &[3, 6]);
        let mins: Vec<i32> = up.terms.iter().map(|t| t.min_weight().unwrap()).collect();
        assert_eq!(mins, vec![0, 1, 2, 3, 4]);
        assert!(up.is_concave().unwrap().0);
        assert!(!up.is_convex().unwrap().0);
        assert!(quasi_iso_check(&x, &up, &aug, 4).unwrap());
        let (down, aug) = convex_resolution(&x, 4).unwrap();
        let maxs: Vec<i32> = down.terms.iter().map(|t| t.max_weight().unwrap()).collect();
        assert_eq!(maxs, vec![0, -1, -2, -3, -4]);
        assert!(down.is_convex().unwrap().0);
        assert!(quasi_iso_check(&x, &down, &aug, 4).unwrap());
        // stupid truncations at n and n + 1 differ by one term
        let (t2, _) = down.stupid_truncation(2);
        let (t3, _) = down.stupid_truncation(3);
        assert_eq!(t3.total_dim() - t2.total_dim(), down.terms[2].dim());
    }

    #[test]
    fn complex_resolution_is_quasi_isomorphic() {
        let z = zoo::restricted_sl2(2).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
        // the surjection V -> k as a two-term complex
        let h = crate::gmod::hom_space(&v, &k, 0).unwrap();
        let map = h.map(&v, &k, 0);
        let x = Complex::new(0, vec![v, k], vec![map], Continuation::Complete).unwrap();
        for from in [From::Ge, From::Le] {
            let (j, aug) = CoindResolution::new(from, &x).unwrap().complex(4).unwrap();
            assert!(quasi_iso_check(&x, &j, &aug, 4).unwrap());
        }
    }

    #[test]
    fn injectivity_and_coinduced_filtration() {
        let z = zoo::restricted_sl2(3).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let ge = z.alg.piece(Piece::Ge).unwrap();
        let kge = k.restrict(Piece::Ge).unwrap();
        let ci = coinduce(&z.alg, From::Ge, &kge).unwrap();
        assert!(injectivity_test(&ci, Piece::Le).unwrap());
        assert!(!injectivity_test(&k, Piece::Ge).unwrap());
        assert!(!injectivity_test(&k, Piece::Le).unwrap());
        assert_eq!(fifi_filtration(&ci).unwrap().len(), 1);
        assert_eq!(fifi_filtration(&k).unwrap_err(), Error::NotLeInjective { layer: 0 });
        let two = ci.direct_sum(&ci.shift(2));
        let layers = fifi_filtration(&two).unwrap();
        assert_eq!(layers.iter().map(|l| l.weight).collect::<Vec<_>>(), vec![0, 2]);
        let _ = ge;
    }

    #[test]
    fn a_injective_resolution_needs_ge_injective_input() {
        let z = zoo::restricted_sl2(2).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let x = Complex::single(k.clone(), 0);
        assert_eq!(
            a_injective_concave_resolution(&x, 2).unwrap_err(),
            Error::NotGeInjective { term: 0 }
        );
        let c = coinduce(&z.alg, From::Le, &k.restrict(Piece::Le).unwrap()).unwrap();
        let (j, _) = a_injective_concave_resolution(&Complex::single(c, 0), 2).unwrap();
        for t in &j.terms {
            assert!(injectivity_test(t, Piece::Full).unwrap());
        }
    }
}
