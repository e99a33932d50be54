//! Ordinary Ext and Tor tables.

use rayon::prelude::*;

use super::routes::{hom_route, tensor_route};
use super::table::{Entry, ExtTable, Window};
use crate::error::{Error, Result};
use crate::gmod::{coregular_left, Module};
use crate::homcx::Complex;
use crate::resolve::ProjectiveResolution;

fn collect(rows: Vec<Result<Vec<Entry>>>) -> Result<ExtTable> {
    let mut t = ExtTable::default();
    for r in rows {
        for e in r? {
            t.insert(e);
        }
    }
    Ok(t)
}

/// `Ext^i_A(X, Y)_m` through a minimal projective resolution of `X`.
pub fn ext(x: &Module, y: &Module, w: Window) -> Result<ExtTable> {
    if !x.same_alg(y) {
        return Err(Error::Incompatible("Ext between different algebras".into()));
    }
    let depth = (w.i.1 + 1).max(0) as usize;
    let p = ProjectiveResolution::build(x, depth)?;
    ext_with(&p, &Complex::single(y.clone(), 0), w)
}

/// Hyper-Ext from the resolved module into a finite complex.
pub fn ext_with(p: &ProjectiveResolution, d: &Complex, w: Window) -> Result<ExtTable> {
    let rows: Vec<Result<Vec<Entry>>> = w
        .shifts()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let h = hom_route(p, d, m, w.i.0, w.i.1)?;
            Ok(h.into_iter()
                .map(|(i, dim)| Entry { i, m, dim, certified: true })
                .collect())
        })
        .collect();
    collect(rows)
}

/// Injective resolution of `Y` for hyper-Ext from a finite complex: the
/// projective resolution of the dual right module, deep enough for degrees
/// up to `i_max`.
pub fn injective_side(y: &Module, x: &Complex, i_max: i32) -> Result<ProjectiveResolution> {
    let depth = (x.end() - 1 + i_max + 1).max(0) as usize;
    ProjectiveResolution::build(&y.dual(), depth)
}

/// `Hom_D(X, Y[i])_m` for a finite complex `X`, computed as the dual of
/// `Q (x)_A X` with `Q` resolving the dual of `Y`.
pub fn ext_from_complex(x: &Complex, y: &Module, w: Window) -> Result<ExtTable> {
    let q = injective_side(y, x, w.i.1)?;
    ext_from_complex_with(&q, x, w)
}

pub fn ext_from_complex_with(q: &ProjectiveResolution, x: &Complex, w: Window) -> Result<ExtTable> {
    let rows: Vec<Result<Vec<Entry>>> = w
        .shifts()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let h = tensor_route(q, x, -m, -w.i.1, -w.i.0)?;
            Ok(h.into_iter()
                .map(|(n, dim)| Entry { i: -n, m, dim, certified: true })
                .collect())
        })
        .collect();
    collect(rows)
}

/// `Tor_i^A(N, M)` in weight `m`, with `N` a right module given as a module
/// over the opposite algebra. Degrees in the window are Tor degrees.
pub fn tor(n: &Module, m: &Module, w: Window) -> Result<ExtTable> {
    if !n.alg().same_structure(&m.alg().opposite()) {
        return Err(Error::Incompatible("Tor needs a right and a left module".into()));
    }
    let depth = (w.i.1 + 1).max(0) as usize;
    let q = ProjectiveResolution::build(n, depth)?;
    let c = Complex::single(m.clone(), 0);
    let rows: Vec<Result<Vec<Entry>>> = w
        .shifts()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|wt| {
            let h = tensor_route(&q, &c, wt, -w.i.1, -w.i.0)?;
            Ok(h.into_iter()
                .map(|(deg, dim)| Entry { i: -deg, m: wt, dim, certified: true })
                .collect())
        })
        .collect();
    collect(rows)
}

/// Tor computed by resolving the left argument instead, using
/// `Tor^A(N, M) = Tor^{A^op}(M, N)`.
pub fn tor_left_route(n: &Module, m: &Module, w: Window) -> Result<ExtTable> {
    tor(m, n, w)
}

/// Derived `R^i S(N) = Ext^i_A(A*, N)`.
pub fn s_derived(n: &Module, w: Window) -> Result<ExtTable> {
    let (dual, _) = coregular_left(n.alg())?;
    ext(&dual, n, w)
}

/// `dim Ext^i_A(X, Y)` summed over all weight shifts.
pub fn ext_degree_total(x: &Module, y: &Module, i: usize) -> Result<usize> {
    if x.is_zero() || y.is_zero() {
        return Ok(0);
    }
    let p = ProjectiveResolution::build(x, i + 1)?;
    let (Some(ylo), Some(yhi)) = (y.min_weight(), y.max_weight()) else { return Ok(0) };
    let lo_j = i.saturating_sub(1);
    let weights: Vec<i32> = (lo_j..=i + 1)
        .filter(|&j| j < p.len())
        .flat_map(|j| p.gens[j].iter().map(|g| g.weight))
        .collect();
    let (Some(&gmin), Some(&gmax)) = (weights.iter().min(), weights.iter().max()) else {
        return Ok(0);
    };
    let d = Complex::single(y.clone(), 0);
    let i = i as i32;
    let dims: Vec<Result<usize>> = ((ylo - gmax)..=(yhi - gmin))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| Ok(hom_route(&p, &d, m, i, i)?[&i]))
        .collect();
    dims.into_iter().sum()
}
