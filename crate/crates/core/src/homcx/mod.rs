//! Bounded-below cochain complexes of graded modules, their weight profiles,
//! stupid truncations, cones and cohomology.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Mat, SparseMat};
use crate::galg::GradedAlgebra;
use crate::gmod::{is_module_map, Module};

mod hom;

pub use hom::{concave_bound, convex_bound, cut, hom_complex, HomComplex};

/// How a stored prefix continues beyond its last term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Continuation {
    /// The prefix is the whole complex.
    Complete,
    /// Coinduction from `A^{<=0}`: weights go down, the maximal weight of
    /// the term in degree `n` is at most `bound - n`.
    WeightsDown { bound: i32 },
    /// Coinduction from `A^{>=0}`: weights go up, the minimal weight of the
    /// term in degree `n` is at least `bound + n`.
    WeightsUp { bound: i32 },
    /// A prefix with no weight guarantee beyond its last term.
    Open,
}

/// A cochain complex `C^start -> C^{start+1} -> ...` (finite prefix).
#[derive(Clone, Debug)]
pub struct Complex {
    pub start: i32,
    pub terms: Vec<Module>,
    /// `diffs[k]: terms[k] -> terms[k+1]`.
    pub diffs: Vec<SparseMat>,
    pub continuation: Continuation,
}

/// Per-degree `(degree, min weight, max weight)`; empty terms are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub rows: Vec<(i32, i32, i32)>,
}

impl Complex {
    /// Build and check `d^2 = 0` and that each differential is a module map.
    pub fn new(
        start: i32,
        terms: Vec<Module>,
        diffs: Vec<SparseMat>,
        continuation: Continuation,
    ) -> Result<Complex> {
        let c = Complex {
            start,
            terms,
            diffs,
            continuation,
        };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Ok(());
        }
        if self.diffs.len() + 1 != self.terms.len() {
            return Err(Error::Internal("one differential between consecutive terms".into()));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            if !is_module_map(&self.terms[k], &self.terms[k + 1], d, 0) {
                return Err(Error::Internal(format!(
                    "differential in degree {} is not a module map",
                    self.start + k as i32
                )));
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k].compose(&self.diffs[k - 1]).is_zero() {
                return Err(Error::Internal(format!(
                    "d o d != 0 at degree {}",
                    self.start + k as i32 - 1
                )));
            }
        }
        Ok(())
    }

    /// A single module in degree `deg`.
    pub fn single(m: Module, deg: i32) -> Complex {
        Complex {
            start: deg,
            terms: vec![m],
            diffs: Vec::new(),
            continuation: Continuation::Complete,
        }
    }

    pub fn zero(alg: &Arc<GradedAlgebra>) -> Complex {
        Complex::single(Module::zero(alg.clone()), 0)
    }

    pub fn alg(&self) -> Option<&Arc<GradedAlgebra>> {
        self.terms.first().map(|t| t.alg())
    }

    /// One past the last stored degree.
    pub fn end(&self) -> i32 {
        self.start + self.terms.len() as i32
    }

    pub fn term(&self, n: i32) -> Option<&Module> {
        if n < self.start {
            return None;
        }
        self.terms.get((n - self.start) as usize)
    }

    /// Differential out of degree `n`, if stored.
    pub fn diff(&self, n: i32) -> Option<&SparseMat> {
        if n < self.start {
            return None;
        }
        self.diffs.get((n - self.start) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Module::is_zero) && self.continuation == Continuation::Complete
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::dim).sum()
    }

    pub fn profile(&self) -> WeightProfile {
        let rows = self
            .terms
            .iter()
            .enumerate()
            .filter_map(|(k, t)| Some((self.start + k as i32, t.min_weight()?, t.max_weight()?)))
            .collect();
        WeightProfile { rows }
    }

    /// Whether every weight-`>= n` part is finite-dimensional. Requires the
    /// prefix profile to respect the declared continuation bound.
    pub fn is_convex(&self) -> Result<(bool, WeightProfile)> {
        let prof = self.profile();
        match self.continuation {
            Continuation::Complete => Ok((true, prof)),
            Continuation::Open => Err(self.open_prefix()),
            Continuation::WeightsDown { bound } => {
                let ok = prof.rows.iter().all(|&(n, _, hi)| hi <= bound - n);
                if ok {
                    Ok((true, prof))
                } else {
                    Err(Error::CannotBound("prefix violates its weight bound".into()))
                }
            }
            Continuation::WeightsUp { bound } => {
                let ok = prof.rows.iter().all(|&(n, lo, _)| lo >= bound + n);
                if !ok {
                    return Err(Error::CannotBound("prefix violates its weight bound".into()));
                }
                Ok((false, prof))
            }
        }
    }

    /// Mirror of [`Complex::is_convex`]: every weight-`<= n` part is finite.
    pub fn is_concave(&self) -> Result<(bool, WeightProfile)> {
        let prof = self.profile();
        match self.continuation {
            Continuation::Complete => Ok((true, prof)),
            Continuation::Open => Err(self.open_prefix()),
            Continuation::WeightsUp { bound } => {
                let ok = prof.rows.iter().all(|&(n, lo, _)| lo >= bound + n);
                if ok {
                    Ok((true, prof))
                } else {
                    Err(Error::CannotBound("prefix violates its weight bound".into()))
                }
            }
            Continuation::WeightsDown { bound } => {
                let ok = prof.rows.iter().all(|&(n, _, hi)| hi <= bound - n);
                if !ok {
                    return Err(Error::CannotBound("prefix violates its weight bound".into()));
                }
                Ok((false, prof))
            }
        }
    }

    fn open_prefix(&self) -> Error {
        Error::Inconclusive {
            have: self.terms.len(),
            need: self.terms.len() + 1,
        }
    }

    /// Stupid truncation: the quotient complex of terms in degrees `< n`,
    /// with the canonical surjection recorded as a chain map.
    pub fn stupid_truncation(&self, n: i32) -> (Complex, ChainMap) {
        let keep = (n - self.start).clamp(0, self.terms.len() as i32) as usize;
        let alg = self.terms[0].alg().clone();
        let (terms, diffs) = if keep == 0 {
            (vec![Module::zero(alg)], Vec::new())
        } else {
            (
                self.terms[..keep].to_vec(),
                self.diffs[..keep - 1].to_vec(),
            )
        };
        let start = if keep == 0 { n.max(self.start) } else { self.start };
        let t = Complex {
            start,
            terms,
            diffs,
            continuation: Continuation::Complete,
        };
        let f = self.terms[0].field();
        let maps = (0..keep)
            .map(|k| SparseMat::identity(f, self.terms[k].dim()))
            .collect();
        (t, ChainMap { start: self.start, maps })
    }

    /// Shift `C[s]`: `C[s]^n = C^{n+s}` with differential `(-1)^s d`.
    pub fn shift_degree(&self, s: i32) -> Complex {
        let diffs = if s % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.scale(d.field().neg(1))).collect()
        };
        Complex {
            start: self.start - s,
            terms: self.terms.clone(),
            diffs,
            continuation: self.continuation,
        }
    }

    /// Grading shift of every term.
    pub fn shift_weights(&self, s: i32) -> Complex {
        let continuation = match self.continuation {
            Continuation::Complete => Continuation::Complete,
            Continuation::Open => Continuation::Open,
            Continuation::WeightsDown { bound } => Continuation::WeightsDown { bound: bound + s },
            Continuation::WeightsUp { bound } => Continuation::WeightsUp { bound: bound + s },
        };
        Complex {
            start: self.start,
            terms: self.terms.iter().map(|t| t.shift(s)).collect(),
            diffs: self.diffs.clone(),
            continuation,
        }
    }

    /// Add the contractible complex `q --id--> q` in degrees `deg, deg + 1`.
    /// Both degrees must be stored.
    pub fn add_contractible(&self, deg: i32, q: &Module) -> Result<Complex> {
        let k = (deg - self.start) as usize;
        if deg < self.start || k + 1 >= self.terms.len() {
            return Err(Error::Precondition("contractible summand outside the prefix".into()));
        }
        let f = q.field();
        let mut terms = self.terms.clone();
        terms[k] = terms[k].direct_sum(q);
        terms[k + 1] = terms[k + 1].direct_sum(q);
        let mut diffs = self.diffs.clone();
        let dims = |t: &Module| t.dim();
        if k > 0 {
            let d = &self.diffs[k - 1];
            diffs[k - 1] = assemble(
                f,
                &[dims(&self.terms[k]), q.dim()],
                &[dims(&self.terms[k - 1])],
                &[((0, 0), d.clone())],
            );
        }
        diffs[k] = assemble(
            f,
            &[dims(&self.terms[k + 1]), q.dim()],
            &[dims(&self.terms[k]), q.dim()],
            &[
                ((0, 0), self.diffs[k].clone()),
                ((1, 1), SparseMat::identity(f, q.dim())),
            ],
        );
        if k + 1 < self.diffs.len() {
            diffs[k + 1] = assemble(
                f,
                &[dims(&self.terms[k + 2])],
                &[dims(&self.terms[k + 1]), q.dim()],
                &[((0, 0), self.diffs[k + 1].clone())],
            );
        }
        Complex::new(self.start, terms, diffs, self.continuation)
    }

    /// Dimensions of `H^n` for every stored degree whose outgoing
    /// differential is known (the last stored degree only if complete).
    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        let mut ranks = Vec::with_capacity(self.diffs.len());
        for (k, d) in self.diffs.iter().enumerate() {
            ranks.push(blockwise_rank(&self.terms[k], &self.terms[k + 1], d));
        }
        let mut out = BTreeMap::new();
        for (k, t) in self.terms.iter().enumerate() {
            let out_rank = if k < ranks.len() {
                ranks[k]
            } else if self.continuation == Continuation::Complete {
                0
            } else {
                continue;
            };
            let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
            out.insert(self.start + k as i32, t.dim() - out_rank - in_rank);
        }
        out
    }
}

/// Rank of a shift-0 module map, computed on `(weight, char)` blocks.
pub fn blockwise_rank(m: &Module, n: &Module, f: &SparseMat) -> usize {
    crate::gmod::block_rank(m, n, f, 0)
}

/// A chain map `C -> D` of degree 0, `maps[k]` acting on degree `start + k`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub start: i32,
    pub maps: Vec<SparseMat>,
}

impl ChainMap {
    pub fn at(&self, n: i32) -> Option<&SparseMat> {
        if n < self.start {
            return None;
        }
        self.maps.get((n - self.start) as usize)
    }
}

fn zero_module_like(c: &Complex) -> Module {
    Module::zero(c.terms[0].alg().clone())
}

fn term_or_zero(c: &Complex, n: i32) -> Module {
    c.term(n).cloned().unwrap_or_else(|| zero_module_like(c))
}

/// Block matrix assembly: `blocks[(r, c)]` placed at row/column offsets.
pub fn assemble(
    field: crate::exactla::Fp,
    row_dims: &[usize],
    col_dims: &[usize],
    blocks: &[((usize, usize), SparseMat)],
) -> SparseMat {
    let mut roff = vec![0; row_dims.len() + 1];
    for (i, d) in row_dims.iter().enumerate() {
        roff[i + 1] = roff[i] + d;
    }
    let mut coff = vec![0; col_dims.len() + 1];
    for (i, d) in col_dims.iter().enumerate() {
        coff[i + 1] = coff[i] + d;
    }
    let mut trips = Vec::new();
    for ((r, c), m) in blocks {
        for (i, j, x) in m.triplets() {
            trips.push((roff[*r] + i, coff[*c] + j, x));
        }
    }
    SparseMat::from_triplets(field, roff[row_dims.len()], coff[col_dims.len()], &trips)
}

/// Mapping cone of `f: C -> D`: `cone^n = C^{n+1} + D^n`,
/// `d(c, x) = (-d c, f c + d x)`, over degrees `lo..hi`.
pub fn cone(c: &Complex, d: &Complex, f: &ChainMap, lo: i32, hi: i32) -> Complex {
    let field = c.terms[0].field();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let cn1 = term_or_zero(c, n + 1);
        let dn = term_or_zero(d, n);
        terms.push(cn1.direct_sum(&dn));
        if n + 1 < hi {
            let cn2 = term_or_zero(c, n + 2);
            let dn1 = term_or_zero(d, n + 1);
            let mut blocks = Vec::new();
            if let Some(dc) = c.diff(n + 1) {
                if cn2.dim() > 0 {
                    blocks.push(((0, 0), dc.scale(field.neg(1))));
                }
            }
            if let Some(fm) = f.at(n + 1) {
                if dn1.dim() > 0 {
                    blocks.push(((1, 0), fm.clone()));
                }
            }
            if let Some(dd) = d.diff(n) {
                if dn1.dim() > 0 {
                    blocks.push(((1, 1), dd.clone()));
                }
            }
            diffs.push(assemble(
                field,
                &[cn2.dim(), dn1.dim()],
                &[cn1.dim(), dn.dim()],
                &blocks,
            ));
        }
    }
    Complex {
        start: lo,
        terms,
        diffs,
        continuation: Continuation::Complete,
    }
}

/// Whether `f: C -> D` induces isomorphisms on cohomology in degrees
/// `< depth - 1`, checked through acyclicity of the cone.
pub fn quasi_iso_check(c: &Complex, d: &Complex, f: &ChainMap, depth: i32) -> Result<bool> {
    let lo = c.start.min(d.start) - 1;
    let hi = lo + depth + 1;
    let need = hi;
    let have_c = if c.continuation == Continuation::Complete { i32::MAX } else { c.end() };
    let have_d = if d.continuation == Continuation::Complete { i32::MAX } else { d.end() };
    if have_c < need || have_d < need {
        return Err(Error::Inconclusive {
            have: have_c.min(have_d).saturating_sub(lo) as usize,
            need: depth as usize,
        });
    }
    let k = cone(c, d, f, lo, hi);
    let dims = k.cohomology_dims();
    Ok(dims.iter().filter(|(&n, _)| n < hi - 1).all(|(_, &x)| x == 0))
}

/// A cochain complex of finite-dimensional vector spaces.
#[derive(Clone, Debug)]
pub struct VsComplex {
    pub start: i32,
    pub dims: Vec<usize>,
    /// `diffs[k]`: degree `start + k` to `start + k + 1`, `dims[k+1] x dims[k]`.
    pub diffs: Vec<Mat>,
}

impl VsComplex {
    /// `dim ker d^i - rank d^{i-1}`.
    pub fn cohomology(&self, i: i32) -> usize {
        if i < self.start || i >= self.start + self.dims.len() as i32 {
            return 0;
        }
        let k = (i - self.start) as usize;
        let out = self.diffs.get(k).map_or(0, Mat::rank);
        let inc = if k > 0 { self.diffs[k - 1].rank() } else { 0 };
        self.dims[k] - out - inc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    #[test]
    fn zero_map_cohomology() {
        let f = Fp::new(3).unwrap();
        let c = VsComplex {
            start: 0,
            dims: vec![1, 1],
            diffs: vec![Mat::zeros(f, 1, 1)],
        };
        assert_eq!(c.cohomology(0), 1);
        assert_eq!(c.cohomology(1), 1);
        let id = VsComplex {
            start: 0,
            dims: vec![2, 2],
            diffs: vec![Mat::identity(f, 2)],
        };
        assert_eq!(id.cohomology(0) + id.cohomology(1), 0);
    }

    #[test]
    fn identity_is_quasi_iso_and_zero_map_is_not() {
        let z = crate::zoo::restricted_sl2(2).unwrap();
        let k = crate::zoo::trivial(&z.alg).unwrap();
        let c = Complex::single(k.clone(), 0);
        let f = k.field();
        let id = ChainMap {
            start: 0,
            maps: vec![SparseMat::identity(f, 1)],
        };
        assert!(quasi_iso_check(&c, &c, &id, 3).unwrap());
        let zero = Complex::zero(&z.alg);
        let to_zero = ChainMap {
            start: 0,
            maps: vec![SparseMat::zeros(f, 0, 1)],
        };
        assert!(!quasi_iso_check(&c, &zero, &to_zero, 3).unwrap());
    }

    #[test]
    fn truncation_edges() {
        let z = crate::zoo::restricted_sl2(2).unwrap();
        let k = crate::zoo::trivial(&z.alg).unwrap();
        let c = Complex::single(k, 0);
        let (t0, _) = c.stupid_truncation(0);
        assert_eq!(t0.total_dim(), 0);
        let (t5, _) = c.stupid_truncation(5);
        assert_eq!(t5.total_dim(), 1);
    }
}
