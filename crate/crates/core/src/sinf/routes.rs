//! Total complexes built from a projective resolution and a complex of
//! modules: `Hom_A(P, D)` and `Q (x)_A C`. Cohomology is computed per weight
//! from ranks in ambient block coordinates.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactla::{Echelon, Mat, SparseMat};
use crate::gmod::Module;
use crate::homcx::{Complex, Continuation};
use crate::resolve::{ProjGen, ProjectiveResolution};

/// One summand `e_s D^k` of a total term, restricted to one block.
struct Piece {
    j: usize,
    k: i32,
    s: usize,
    block: Vec<usize>,
    basis: Vec<Vec<u32>>,
}

/// Shared caches for the action of algebra elements on the terms.
struct Actions<'a> {
    c: &'a Complex,
    cache: HashMap<(i32, Vec<u32>), SparseMat>,
}

impl<'a> Actions<'a> {
    fn new(c: &'a Complex) -> Self {
        Actions {
            c,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, k: i32, a: &[u32]) -> &SparseMat {
        let c = self.c;
        self.cache
            .entry((k, a.to_vec()))
            .or_insert_with(|| c.term(k).expect("term in range").act_elem(a))
    }
}

fn piece_basis(m: &Module, eps: &SparseMat, block: &[usize]) -> Vec<Vec<u32>> {
    let f = m.field();
    let mut ech = Echelon::new(f, block.len());
    let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    for &x in block {
        let mut v = vec![0u32; block.len()];
        for &(i, c) in eps.col(x) {
            if let Some(&p) = pos.get(&(i as usize)) {
                v[p] = c;
            }
        }
        ech.insert(&v);
        if ech.is_full() {
            break;
        }
    }
    ech.rows().to_vec()
}

fn lift(block: &[usize], local: &[u32], dim: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    for (&g, &x) in block.iter().zip(local) {
        v[g] = x;
    }
    v
}

/// Sizes and ranks of a total complex indexed by degree.
struct Total {
    pieces: BTreeMap<i32, Vec<Piece>>,
}

impl Total {
    fn dim(&self, n: i32) -> usize {
        self.pieces
            .get(&n)
            .map_or(0, |ps| ps.iter().map(|p| p.basis.len()).sum())
    }

    /// Offset of each piece inside the ambient coordinates of degree `n`.
    fn ambient(&self, n: i32) -> (HashMap<(usize, i32, usize), (usize, usize)>, usize) {
        let mut map = HashMap::new();
        let mut off = 0;
        if let Some(ps) = self.pieces.get(&n) {
            for p in ps {
                map.insert((p.j, p.k, p.s), (off, p.block.len()));
                off += p.block.len();
            }
        }
        (map, off)
    }
}

fn cohomology(total: &Total, ranks: &BTreeMap<i32, usize>, lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    (lo..=hi)
        .map(|n| {
            let out = ranks.get(&n).copied().unwrap_or(0);
            let inc = ranks.get(&(n - 1)).copied().unwrap_or(0);
            (n, total.dim(n) - out - inc)
        })
        .collect()
}

fn term_range(c: &Complex) -> (i32, i32) {
    (c.start, c.end() - 1)
}

fn require_depth(p: &ProjectiveResolution, need: usize) -> Result<()> {
    if p.len() <= need && !p.is_complete() {
        return Err(Error::Inconclusive {
            have: p.len(),
            need: need + 1,
        });
    }
    Ok(())
}

fn eps_matrices(
    p: &ProjectiveResolution,
    c: &Complex,
    gens: &[ProjGen],
    k: i32,
    cache: &mut HashMap<(i32, usize, usize), SparseMat>,
) {
    for g in gens {
        cache.entry((k, g.chi, g.idx)).or_insert_with(|| {
            c.term(k)
                .expect("term in range")
                .act_elem(&p.projective(*g).idem)
        });
    }
}

/// `H^n(Hom_A(P, D))` in weight shift `m` for `n` in `lo..=hi`, where `P`
/// resolves `X` (so this is hyper-Ext from `X` into the complex `D`).
pub fn hom_route(
    p: &ProjectiveResolution,
    d: &Complex,
    m: i32,
    lo: i32,
    hi: i32,
) -> Result<BTreeMap<i32, usize>> {
    if d.continuation != Continuation::Complete {
        return Err(Error::Precondition("target complex must be finite".into()));
    }
    let (kmin, kmax) = term_range(d);
    let need = (hi + 1 - kmin).max(0) as usize;
    require_depth(p, need)?;
    let mut eps = HashMap::new();
    let mut total = Total {
        pieces: BTreeMap::new(),
    };
    for n in (lo - 1)..=(hi + 1) {
        let mut ps = Vec::new();
        for k in kmin..=kmax {
            let j = n - k;
            if j < 0 || j as usize >= p.len() {
                continue;
            }
            let j = j as usize;
            let dk = d.term(k).unwrap();
            eps_matrices(p, d, &p.gens[j], k, &mut eps);
            for (s, g) in p.gens[j].iter().enumerate() {
                let block = dk.block((g.weight + m, g.chi as u16)).to_vec();
                if block.is_empty() {
                    continue;
                }
                let basis = piece_basis(dk, &eps[&(k, g.chi, g.idx)], &block);
                if !basis.is_empty() {
                    ps.push(Piece { j, k, s, block, basis });
                }
            }
        }
        total.pieces.insert(n, ps);
    }
    let f = d.terms[0].field();
    let mut acts = Actions::new(d);
    let mut ranks = BTreeMap::new();
    for n in (lo - 1)..=hi {
        let (amb, width) = total.ambient(n + 1);
        if width == 0 || total.dim(n) == 0 {
            ranks.insert(n, 0);
            continue;
        }
        let mut cols = Vec::new();
        for pc in &total.pieces[&n] {
            let dk = d.term(pc.k).unwrap();
            for local in &pc.basis {
                let y = lift(&pc.block, local, dk.dim());
                let mut col = vec![0u32; width];
                // vertical: (-1)^j d_D
                if let (Some(dd), Some(&(off, _))) = (d.diff(pc.k), amb.get(&(pc.j, pc.k + 1, pc.s))) {
                    let z = dd.mul_vec(&y);
                    let g = p.gens[pc.j][pc.s];
                    let tgt = d.term(pc.k + 1).unwrap().block((g.weight + m, g.chi as u16));
                    let sign = if pc.j % 2 == 0 { 1 } else { f.neg(1) };
                    for (t, &gi) in tgt.iter().enumerate() {
                        col[off + t] = f.mul_add(col[off + t], sign, z[gi]);
                    }
                }
                // horizontal: precomposition with d_P
                if pc.j < p.coeffs.len() {
                    for (u, row) in p.coeffs[pc.j].iter().enumerate() {
                        let Some(&(off, _)) = amb.get(&(pc.j + 1, pc.k, u)) else { continue };
                        for (s, b) in row {
                            if *s != pc.s {
                                continue;
                            }
                            let z = acts.get(pc.k, b).mul_vec(&y);
                            let g = p.gens[pc.j + 1][u];
                            let tgt = dk.block((g.weight + m, g.chi as u16));
                            for (t, &gi) in tgt.iter().enumerate() {
                                col[off + t] = f.add(col[off + t], z[gi]);
                            }
                        }
                    }
                }
                cols.push(col);
            }
        }
        ranks.insert(n, Mat::from_cols(f, width, &cols).rank());
    }
    Ok(cohomology(&total, &ranks, lo, hi))
}

/// `H^n(Q (x)_A C)` in total weight `w` for `n` in `lo..=hi`, where `Q`
/// resolves a right module (as a module over the opposite algebra) and the
/// total degree of `Q_j (x) C^k` is `k - j`.
pub fn tensor_route(
    q: &ProjectiveResolution,
    c: &Complex,
    w: i32,
    lo: i32,
    hi: i32,
) -> Result<BTreeMap<i32, usize>> {
    if c.continuation != Continuation::Complete {
        return Err(Error::Precondition("complex must be finite".into()));
    }
    let (kmin, kmax) = term_range(c);
    let need = (kmax - lo + 1).max(0) as usize;
    require_depth(q, need)?;
    let mut eps = HashMap::new();
    let mut total = Total {
        pieces: BTreeMap::new(),
    };
    for n in (lo - 1)..=(hi + 1) {
        let mut ps = Vec::new();
        for k in kmin..=kmax {
            let j = k - n;
            if j < 0 || j as usize >= q.len() {
                continue;
            }
            let j = j as usize;
            let ck = c.term(k).unwrap();
            eps_matrices(q, c, &q.gens[j], k, &mut eps);
            for (s, g) in q.gens[j].iter().enumerate() {
                let block = ck.block((w - g.weight, g.chi as u16)).to_vec();
                if block.is_empty() {
                    continue;
                }
                let basis = piece_basis(ck, &eps[&(k, g.chi, g.idx)], &block);
                if !basis.is_empty() {
                    ps.push(Piece { j, k, s, block, basis });
                }
            }
        }
        total.pieces.insert(n, ps);
    }
    let f = c.terms[0].field();
    let mut acts = Actions::new(c);
    let mut ranks = BTreeMap::new();
    for n in (lo - 1)..=hi {
        let (amb, width) = total.ambient(n + 1);
        if width == 0 || total.dim(n) == 0 {
            ranks.insert(n, 0);
            continue;
        }
        let mut cols = Vec::new();
        for pc in &total.pieces[&n] {
            let ck = c.term(pc.k).unwrap();
            for local in &pc.basis {
                let y = lift(&pc.block, local, ck.dim());
                let mut col = vec![0u32; width];
                if let (Some(dc), Some(&(off, _))) = (c.diff(pc.k), amb.get(&(pc.j, pc.k + 1, pc.s))) {
                    let z = dc.mul_vec(&y);
                    let g = q.gens[pc.j][pc.s];
                    let tgt = c.term(pc.k + 1).unwrap().block((w - g.weight, g.chi as u16));
                    let sign = if pc.j % 2 == 0 { 1 } else { f.neg(1) };
                    for (t, &gi) in tgt.iter().enumerate() {
                        col[off + t] = f.mul_add(col[off + t], sign, z[gi]);
                    }
                }
                if pc.j >= 1 {
                    for (s, b) in &q.coeffs[pc.j - 1][pc.s] {
                        let Some(&(off, _)) = amb.get(&(pc.j - 1, pc.k, *s)) else { continue };
                        let z = acts.get(pc.k, b).mul_vec(&y);
                        let g = q.gens[pc.j - 1][*s];
                        let tgt = ck.block((w - g.weight, g.chi as u16));
                        for (t, &gi) in tgt.iter().enumerate() {
                            col[off + t] = f.add(col[off + t], z[gi]);
                        }
                    }
                }
                cols.push(col);
            }
        }
        ranks.insert(n, Mat::from_cols(f, width, &cols).rank());
    }
    Ok(cohomology(&total, &ranks, lo, hi))
}
