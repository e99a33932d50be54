use std::collections::BTreeMap;

use serde::Serialize;

use crate::sinf::ExtTable;

/// An affine map `(i, m) -> a*m + b*i + c` from table indices to weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regrading {
    pub a: i32,
    pub b: i32,
    pub c: i32,
    /// Weights of the target window where the pushed-forward dims agree.
    pub matched: usize,
    pub window: usize,
}

impl Regrading {
    pub fn exact(&self) -> bool {
        self.matched == self.window
    }
}

/// Search `a in [-r, r] \ {0}`, `b, c in [-r, r]` for the regrading whose
/// pushed-forward dimensions agree with `target` on the most weights.
/// Entries of `table` that land outside the target window are ignored; a
/// candidate must send at least one nonzero entry into the window.
pub fn search_regrading(table: &ExtTable, target: &BTreeMap<i32, usize>, r: i32) -> Option<Regrading> {
    let mut best: Option<Regrading> = None;
    for a in (-r..=r).filter(|&a| a != 0) {
        for b in -r..=r {
            for c in -r..=r {
                let mut pushed: BTreeMap<i32, usize> = target.keys().map(|&w| (w, 0)).collect();
                let mut hit = false;
                for e in table.iter() {
                    if let Some(v) = pushed.get_mut(&(a * e.m + b * e.i + c)) {
                        *v += e.dim;
                        hit |= e.dim > 0;
                    }
                }
                if !hit {
                    continue;
                }
                let matched = target.iter().filter(|(w, d)| pushed[w] == **d).count();
                let cand = Regrading { a, b, c, matched, window: target.len() };
                if best.as_ref().is_none_or(|x| cand.matched > x.matched) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}
