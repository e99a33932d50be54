//! Semi-infinite Ext through a convex resolution of the first argument and
//! a concave resolution of the second.

use rayon::prelude::*;

use super::table::{Entry, ExtTable, Window};
use crate::error::{Error, Result};
use crate::gmod::{From, Module};
use crate::homcx::{cut, hom_complex, Complex};
use crate::resolve::CoindResolution;

/// Largest resolution depth the engine will build.
pub const MAX_DEPTH: usize = 64;

/// A resolution pair ready for evaluation.
#[derive(Clone, Debug)]
pub struct SemiInfinite {
    /// Convex resolution of `X` (weights go down).
    pub down: Complex,
    /// Concave resolution of `Y` (weights go up).
    pub up: Complex,
    /// `None` when one of the arguments is zero.
    pub bounds: Option<(i32, i32)>,
    pub window: Window,
}

fn depth_for(len: i32, what: &str) -> Result<usize> {
    let d = len.max(1) as usize;
    if d > MAX_DEPTH {
        return Err(Error::DepthCap(format!(
            "{what} resolution would need depth {d}, cap is {MAX_DEPTH}"
        )));
    }
    Ok(d)
}

impl SemiInfinite {
    /// Resolve finite complexes `X` and `Y` deep enough for the window.
    pub fn new(x: &Complex, y: &Complex, w: Window) -> Result<Self> {
        let mut rx = CoindResolution::new(From::Le, x)?;
        let mut ry = CoindResolution::new(From::Ge, y)?;
        let (Some(alpha), Some(beta)) = (rx.weight_bound(), ry.weight_bound()) else {
            let (down, _) = rx.complex(0)?;
            let (up, _) = ry.complex(0)?;
            return Ok(SemiInfinite { down, up, bounds: None, window: w });
        };
        let top = cut(alpha, beta, w.m.1, w.i.0 - 1) + 1;
        let (down, _) = rx.complex(depth_for(top - x.start, "convex")?)?;
        let (up, _) = ry.complex(depth_for(top + w.i.1 + 1 - y.start, "concave")?)?;
        Ok(SemiInfinite {
            down,
            up,
            bounds: Some((alpha, beta)),
            window: w,
        })
    }

    pub fn for_modules(x: &Module, y: &Module, w: Window) -> Result<Self> {
        Self::new(&Complex::single(x.clone(), 0), &Complex::single(y.clone(), 0), w)
    }

    /// A second, non-minimal pair: each resolution gets a contractible
    /// summand `q -> q` with `q` its own term two steps in.
    pub fn with_contractible(&self) -> Result<Self> {
        let pad = |c: &Complex| -> Result<Complex> {
            match c.term(c.start + 2) {
                Some(q) if c.terms.len() >= 3 => c.add_contractible(c.start + 1, &q.clone()),
                _ => Ok(c.clone()),
            }
        };
        Ok(SemiInfinite {
            down: pad(&self.down)?,
            up: pad(&self.up)?,
            bounds: self.bounds,
            window: self.window,
        })
    }

    /// Dimensions on the window. An entry is certified when both weight
    /// profiles satisfy their bounds and the first Hom component past every
    /// cut was seen to vanish.
    pub fn table(&self) -> Result<ExtTable> {
        let w = self.window;
        if self.bounds.is_none() {
            return Ok(ExtTable::from_entries(w.degrees().flat_map(|i| {
                w.shifts().map(move |m| Entry { i, m, dim: 0, certified: true })
            })));
        }
        let rows: Vec<Result<Vec<Entry>>> = w
            .shifts()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|m| {
                let h = hom_complex(&self.down, &self.up, m, w.i.0, w.i.1)?;
                w.degrees()
                    .map(|i| {
                        let dim = h
                            .cohomology(i)
                            .ok_or_else(|| Error::Internal(format!("degree {i} not computed")))?;
                        Ok(Entry { i, m, dim, certified: h.plateau })
                    })
                    .collect()
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
}

/// Semi-infinite Ext of two modules on a window.
pub fn semi_infinite_ext(x: &Module, y: &Module, w: Window) -> Result<ExtTable> {
    SemiInfinite::for_modules(x, y, w)?.table()
}
