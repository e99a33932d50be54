use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Complex, Continuation};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::gmod::{hom_layout, hom_space, HomSpace, Module};

/// Cohomology data of `Hom^*(J, I)` in one weight shift.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub m: i32,
    /// Term dimensions by degree `t`.
    pub dims: BTreeMap<i32, usize>,
    /// Ranks of `D^t: Hom^t -> Hom^{t+1}`.
    pub ranks: BTreeMap<i32, usize>,
    /// Cut `K(t)`: components `k > K(t)` vanish by the weight bounds.
    pub cuts: BTreeMap<i32, i32>,
    /// Whether the component just past each cut was observed to vanish.
    pub plateau: bool,
}

impl HomComplex {
    /// `dim H^t`, available for degrees whose neighbours were computed.
    pub fn cohomology(&self, t: i32) -> Option<usize> {
        let d = *self.dims.get(&t)?;
        let out = *self.ranks.get(&t)?;
        let inc = *self.ranks.get(&(t - 1))?;
        Some(d - out - inc)
    }
}

/// `alpha` with `max weight of J^k <= alpha - k` for all `k`.
pub fn convex_bound(j: &Complex) -> Result<Option<i32>> {
    let (ok, prof) = j.is_convex()?;
    if !ok {
        return Err(Error::CannotBound("first argument is not convex".into()));
    }
    let from_prof = prof.rows.iter().map(|&(n, _, hi)| hi + n).max();
    Ok(match j.continuation {
        Continuation::WeightsDown { bound } => Some(from_prof.map_or(bound, |b| b.max(bound))),
        _ => from_prof,
    })
}

/// `beta` with `min weight of I^k >= beta + k` for all `k`.
pub fn concave_bound(i: &Complex) -> Result<Option<i32>> {
    let (ok, prof) = i.is_concave()?;
    if !ok {
        return Err(Error::CannotBound("second argument is not concave".into()));
    }
    let from_prof = prof.rows.iter().map(|&(n, lo, _)| lo - n).min();
    Ok(match i.continuation {
        Continuation::WeightsUp { bound } => Some(from_prof.map_or(bound, |b| b.min(bound))),
        _ => from_prof,
    })
}

/// `K(t) = floor((alpha - beta + m - t) / 2)`.
pub fn cut(alpha: i32, beta: i32, m: i32, t: i32) -> i32 {
    (alpha - beta + m - t).div_euclid(2)
}

fn term_or_err(c: &Complex, n: i32) -> Result<Option<&Module>> {
    if n < c.start {
        return Ok(None);
    }
    match c.term(n) {
        Some(t) => Ok(Some(t)),
        None if c.continuation == Continuation::Complete => Ok(None),
        None => Err(Error::Inconclusive {
            have: c.terms.len(),
            need: (n - c.start + 1) as usize,
        }),
    }
}

struct Component {
    k: i32,
    space: Option<HomSpace>,
}

/// The complex `Hom^t = prod_k Hom_A(J^k, I^{k+t})_m` with differential
/// `f -> d_I f - (-1)^t f d_J`, for `t` in `lo - 1 ..= hi + 1`; ranks are
/// computed for `lo - 1 ..= hi`.
pub fn hom_complex(j: &Complex, i: &Complex, m: i32, lo: i32, hi: i32) -> Result<HomComplex> {
    let (Some(alpha), Some(beta)) = (convex_bound(j)?, concave_bound(i)?) else {
        // one side is zero
        let dims = ((lo - 1)..=(hi + 1)).map(|t| (t, 0)).collect();
        let ranks = ((lo - 1)..=hi).map(|t| (t, 0)).collect();
        return Ok(HomComplex {
            m,
            dims,
            ranks,
            cuts: BTreeMap::new(),
            plateau: true,
        });
    };
    let mut comps: BTreeMap<i32, Vec<Component>> = BTreeMap::new();
    let mut cuts = BTreeMap::new();
    let mut plateau = true;
    let top = cut(alpha, beta, m, lo - 1) + 1;
    for t in (lo - 1)..=(hi + 1) {
        let kc = cut(alpha, beta, m, t);
        cuts.insert(t, kc);
        let k0 = j.start.max(i.start - t);
        let mut pairs = Vec::new();
        for k in k0..=top.max(k0 - 1) {
            let src = term_or_err(j, k)?;
            let tgt = term_or_err(i, k + t)?;
            pairs.push((k, src, tgt));
        }
        let list: Vec<Result<Component>> = pairs
            .into_par_iter()
            .map(|(k, src, tgt)| {
                let space = match (src, tgt) {
                    (Some(s), Some(t2)) if hom_layout(s, t2, m).1 > 0 => Some(hom_space(s, t2, m)?),
                    _ => None,
                };
                Ok(Component { k, space })
            })
            .collect();
        let list = list.into_iter().collect::<Result<Vec<_>>>()?;
        for c in &list {
            if c.k > kc && c.space.as_ref().is_some_and(|s| s.dim() > 0) {
                plateau = false;
            }
        }
        comps.insert(t, list);
    }
    let dims: BTreeMap<i32, usize> = comps
        .iter()
        .map(|(&t, l)| (t, l.iter().map(|c| c.space.as_ref().map_or(0, HomSpace::dim)).sum()))
        .collect();
    let f = j.terms[0].field();
    let mut ranks = BTreeMap::new();
    for t in (lo - 1)..=hi {
        let src = &comps[&t];
        let tgt = &comps[&(t + 1)];
        let mut offs = BTreeMap::new();
        let mut width = 0;
        for c in tgt {
            if let Some(s) = &c.space {
                offs.insert(c.k, width);
                width += s.nvars();
            }
        }
        if width == 0 || dims[&t] == 0 {
            ranks.insert(t, 0);
            continue;
        }
        let sign = if t % 2 == 0 { f.neg(1) } else { 1 };
        let offs = &offs;
        let cols: Vec<Vec<u32>> = src
            .par_iter()
            .filter_map(|c| c.space.as_ref().map(|s| (c.k, s)))
            .flat_map_iter(|(k, s)| {
                let jk = j.term(k).unwrap();
                let ikt = i.term(k + t).unwrap();
                (0..s.dim()).map(move |b| {
                    let fmap = s.map(jk, ikt, b);
                    let mut col = vec![0u32; width];
                    // d_I o f lands in component k
                    if let (Some(di), Some(&off)) = (i.diff(k + t), offs.get(&k)) {
                        let tspace = tgt.iter().find(|c| c.k == k).unwrap().space.as_ref().unwrap();
                        let g = di.compose(&fmap);
                        let v = tspace.flatten(jk, i.term(k + t + 1).unwrap(), &g);
                        for (x, y) in col[off..].iter_mut().zip(v) {
                            *x = f.add(*x, y);
                        }
                    }
                    // f o d_J lands in component k - 1
                    if let (Some(dj), Some(&off)) = (j.diff(k - 1), offs.get(&(k - 1))) {
                        let tspace =
                            tgt.iter().find(|c| c.k == k - 1).unwrap().space.as_ref().unwrap();
                        let g = fmap.compose(dj);
                        let v = tspace.flatten(j.term(k - 1).unwrap(), ikt, &g);
                        for (x, y) in col[off..].iter_mut().zip(v) {
                            *x = f.mul_add(*x, sign, y);
                        }
                    }
                    col
                })
            })
            .collect();
        ranks.insert(t, Mat::from_cols(f, width, &cols).rank());
    }
    Ok(HomComplex {
        m,
        dims,
        ranks,
        cuts,
        plateau,
    })
}
