use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::gmod::Module;
use crate::sinf::{Entry, ExtTable, Window};

pub const BRUTE_MAX_DIM: usize = 8;
pub const BRUTE_MAX_DEGREE: i32 = 2;

/// Cochains of weight shift `m` in bar degree `n`: tuples of algebra basis
/// indices, a source index in `X` and a target index in `Y`.
struct Cochains {
    keys: Vec<(Vec<usize>, usize, usize)>,
    index: HashMap<(Vec<usize>, usize, usize), usize>,
}

fn cochains(degs: &[i32], x: &Module, y: &Module, n: usize, m: i32) -> Cochains {
    let mut keys = Vec::new();
    let mut tuple = vec![0usize; n];
    let dim = degs.len();
    loop {
        let d: i32 = tuple.iter().map(|&b| degs[b]).sum();
        for xi in 0..x.dim() {
            let target = d + x.weights()[xi] + m;
            for &yi in &y.weight_indices(target) {
                keys.push((tuple.clone(), xi, yi));
            }
        }
        // next tuple
        let mut pos = 0;
        loop {
            if pos == n {
                let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
                return Cochains { keys, index };
            }
            tuple[pos] += 1;
            if tuple[pos] < dim {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// `Ext^i_A(X, Y)_m` for `i <= 2` from the unnormalised bar resolution
/// `A (x) A^{(x)n} (x) X`, on algebras of dimension at most 8.
pub fn brute_small(x: &Module, y: &Module, w: Window) -> Result<ExtTable> {
    let alg = x.alg();
    if alg.dim() > BRUTE_MAX_DIM || w.i.1 > BRUTE_MAX_DEGREE || w.i.0 < 0 {
        return Err(Error::SizeGuard(format!(
            "bar resolution limited to dim <= {BRUTE_MAX_DIM} and degrees 0..={BRUTE_MAX_DEGREE}"
        )));
    }
    let f = alg.field();
    let s = alg.structure();
    let dim = alg.dim();
    let degs = alg.degrees();
    // (u, v, c) with u v = c b_k + ...
    let mut factor: Vec<Vec<(usize, usize, u32)>> = vec![Vec::new(); dim];
    for u in 0..dim {
        for v in 0..dim {
            for &(k, c) in s.product(u, v) {
                factor[k as usize].push((u, v, c));
            }
        }
    }
    let xacts: Vec<_> = (0..dim).map(|b| x.act_basis(b)).collect();
    let yacts: Vec<_> = (0..dim).map(|b| y.act_basis(b)).collect();
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { f.neg(1) };
    let mut t = ExtTable::default();
    for m in w.shifts() {
        let top = w.i.1 as usize + 1;
        let cs: Vec<Cochains> = (0..=top).map(|n| cochains(degs, x, y, n, m)).collect();
        let mut ranks = Vec::new();
        for n in 0..top {
            let (src, tgt) = (&cs[n], &cs[n + 1]);
            let mut d = Mat::zeros(f, tgt.keys.len(), src.keys.len());
            let mut add = |key: (Vec<usize>, usize, usize), col: usize, c: u32| {
                if let Some(&r) = tgt.index.get(&key) {
                    d.set(r, col, f.add(d.get(r, col), c));
                }
            };
            for (col, (tup, x0, y0)) in src.keys.iter().enumerate() {
                // b_1 f(b_2, ..., x)
                for b in 0..dim {
                    for &(yi, c) in yacts[b].col(*y0) {
                        let mut k = vec![b];
                        k.extend_from_slice(tup);
                        add((k, *x0, yi as usize), col, c);
                    }
                }
                // (-1)^i f(..., b_i b_{i+1}, ...)
                for i in 0..n {
                    for &(u, v, c) in &factor[tup[i]] {
                        let mut k = tup[..i].to_vec();
                        k.push(u);
                        k.push(v);
                        k.extend_from_slice(&tup[i + 1..]);
                        add((k, *x0, *y0), col, f.mul(sign(i + 1), c));
                    }
                }
                // (-1)^{n+1} f(b_1, ..., b_n, b_{n+1} x)
                for b in 0..dim {
                    for xi in 0..x.dim() {
                        let c = xacts[b].col(xi).iter().find(|e| e.0 as usize == *x0).map_or(0, |e| e.1);
                        if c != 0 {
                            let mut k = tup.clone();
                            k.push(b);
                            add((k, xi, *y0), col, f.mul(sign(n + 1), c));
                        }
                    }
                }
            }
            ranks.push(d.rank());
        }
        for i in w.degrees() {
            let i_u = i as usize;
            let inc = if i_u == 0 { 0 } else { ranks[i_u - 1] };
            let dim = cs[i_u].keys.len() - ranks[i_u] - inc;
            t.insert(Entry { i, m, dim, certified: true });
        }
    }
    Ok(t)
}
