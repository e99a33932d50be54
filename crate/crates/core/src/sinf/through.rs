//! Hom in the Verdier quotient by the subcategory generated by
//! `A^{>=0}`-injective modules, computed as a colimit of ordinary
//! hyper-Ext groups out of stupid truncations of a convex resolution.

use rayon::prelude::*;

use super::ext::{ext_from_complex_with, injective_side};
use super::table::{Entry, ExtTable, Window};
use crate::error::{Error, Result};
use crate::gmod::{From, Module};
use crate::homcx::{convex_bound, cut, Complex};
use crate::resolve::CoindResolution;

/// How many truncation steps past the first candidate are tried before
/// giving up on a plateau.
pub const THROUGH_EXTRA_STEPS: i32 = 4;

/// `Hom_{D/D'}(X, Y[i])_m` on a window, where `D'` is generated by
/// `A^{>=0}`-injective modules.
///
/// For each weight shift the truncation `J^{<n}` of the convex resolution
/// of `X` is used with `n` the first length past every weight cut of the
/// degrees involved; `Y` enters only through its concave weight bound. The
/// value at `n` and `n + 1` must agree, else longer truncations are tried.
/// Entries are certified when the plateau is reached at or past the cut.
pub fn hom_through(x: &Complex, y: &Module, w: Window) -> Result<ExtTable> {
    if y.is_zero() {
        return Ok(zero_table(w));
    }
    let mut rx = CoindResolution::new(From::Le, x)?;
    let Some(alpha) = rx.weight_bound() else {
        return Ok(zero_table(w));
    };
    let ycx = Complex::single(y.clone(), 0);
    let beta = CoindResolution::new(From::Ge, &ycx)?
        .weight_bound()
        .ok_or_else(|| Error::Internal("nonzero module without weights".into()))?;
    let first = |m: i32| cut(alpha, beta, m, w.i.0 - 1) + 1;
    let n_max = first(w.m.1) + THROUGH_EXTRA_STEPS + 1;
    let depth = (n_max - x.start).max(1) as usize;
    if depth > super::MAX_DEPTH {
        return Err(Error::DepthCap(format!(
            "truncation length {n_max} needed for weight shift {}",
            w.m.1
        )));
    }
    let (j, _) = rx.complex(depth)?;
    convex_bound(&j)?;
    let (longest, _) = j.stupid_truncation(n_max + 1);
    let q = injective_side(y, &longest, w.i.1)?;
    let rows: Vec<Result<Vec<Entry>>> = w
        .shifts()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let wm = Window::new(w.i, (m, m));
            let at = |n: i32| ext_from_complex_with(&q, &j.stupid_truncation(n).0, wm);
            let n0 = first(m);
            let mut prev = at(n0)?;
            for n in (n0 + 1)..=(n0 + THROUGH_EXTRA_STEPS + 1) {
                let cur = at(n)?;
                if cur == prev {
                    return Ok(cur.iter().copied().collect());
                }
                prev = cur;
            }
            Err(Error::DepthCap(format!(
                "no plateau for weight shift {m} up to truncation length {}",
                n0 + THROUGH_EXTRA_STEPS + 1
            )))
        })
        .collect();
    let mut t = ExtTable::default();
    for r in rows {
        for e in r? {
            t.insert(e);
        }
    }
    Ok(t)
}

fn zero_table(w: Window) -> ExtTable {
    ExtTable::from_entries(
        w.degrees()
            .flat_map(|i| w.shifts().map(move |m| Entry { i, m, dim: 0, certified: true })),
    )
}
