//! Checks around the pairing `M^v (x)_A S(N) -> Hom_A(M, N)` and the
//! comparison `S(N) = N` for Frobenius algebras.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ext::{ext, s_derived, tor};
use super::table::Window;
use crate::error::{Error, Result};
use crate::exactla::Echelon;
use crate::galg::Piece;
use crate::gmod::{check_dual, dual_maps, find_isomorphism, hom_total_dim, s_zero, tensor_over_a, Module};
use crate::resolve::injectivity_test;

#[derive(Clone, Debug, Serialize)]
pub struct IsomomReport {
    /// Degrees `1..=top` in which `Ext_A(M, N)` was checked.
    pub top: i32,
    pub ext_vanishes: bool,
    pub s_vanishes: bool,
    pub tor_vanishes: bool,
    pub tensor_dim: usize,
    pub hom_dim: usize,
    pub pairing_rank: usize,
}

impl IsomomReport {
    pub fn holds(&self) -> bool {
        self.ext_vanishes
            && self.s_vanishes
            && self.tor_vanishes
            && self.pairing_rank == self.tensor_dim
            && self.pairing_rank == self.hom_dim
    }
}

fn weight_span(a: &Module, b: &Module, extra: i32) -> (i32, i32) {
    let lo = b.min_weight().unwrap_or(0) - a.max_weight().unwrap_or(0) - extra;
    let hi = b.max_weight().unwrap_or(0) - a.min_weight().unwrap_or(0) + extra;
    (lo, hi)
}

/// Rank of the composition pairing, summed over weight shifts.
pub fn pairing_rank(m: &Module, n: &Module) -> Result<usize> {
    let s = s_zero(n)?;
    let phis = dual_maps(m)?;
    let f = m.field();
    let mut by_shift: BTreeMap<i32, Echelon> = BTreeMap::new();
    let maps: Vec<_> = (0..s.module.dim()).map(|b| s.map(n, b)).collect::<Result<_>>()?;
    for (j, phi) in phis.iter().enumerate() {
        for (b, g) in maps.iter().enumerate() {
            let shift = s.module.weights()[b] - m.weights()[j];
            let d = g.compose(phi).to_dense();
            let flat: Vec<u32> = (0..d.rows()).flat_map(|r| d.row(r).to_vec()).collect();
            by_shift
                .entry(shift)
                .or_insert_with(|| Echelon::new(f, n.dim() * m.dim()))
                .insert(&flat);
        }
    }
    Ok(by_shift.values().map(Echelon::dim).sum())
}

/// Vanishing of `Ext^i_A(M, N)`, `Ext^i_A(A^*, N)` and
/// `Tor_i^A(M^v, S(N))` for `1 <= i <= top`, and bijectivity of the
/// pairing. `M` must be `A^{>=0}`-projective and `N` `A^{<=0}`-injective.
pub fn check_isomom(m: &Module, n: &Module, top: i32) -> Result<IsomomReport> {
    if !injectivity_test(m, Piece::Ge)? {
        return Err(Error::Precondition("first module is not A>=0-projective".into()));
    }
    if !injectivity_test(n, Piece::Le)? {
        return Err(Error::Precondition("second module is not A<=0-injective".into()));
    }
    let alg = m.alg();
    let top_deg = alg.degrees().iter().map(|d| d.abs()).max().unwrap_or(0);
    let spread = top_deg * (top + 2);
    let (lo, hi) = weight_span(m, n, spread);
    let ext_mn = ext(m, n, Window::new((1, top), (lo, hi)))?;
    let (lo, hi) = weight_span(&crate::gmod::coregular(alg)?.module, n, spread);
    let s_der = s_derived(n, Window::new((1, top), (lo, hi)))?;
    let mv = check_dual(m)?;
    let sn = s_zero(n)?.module;
    let tlo = mv.min_weight().unwrap_or(0) + sn.min_weight().unwrap_or(0) - spread;
    let thi = mv.max_weight().unwrap_or(0) + sn.max_weight().unwrap_or(0) + spread;
    let tor_t = tor(&mv, &sn, Window::new((1, top), (tlo, thi)))?;
    Ok(IsomomReport {
        top,
        ext_vanishes: ext_mn.total() == 0,
        s_vanishes: s_der.total() == 0,
        tor_vanishes: tor_t.total() == 0,
        tensor_dim: tensor_over_a(&mv, &sn)?.values().sum(),
        hom_dim: hom_total_dim(m, n)?,
        pairing_rank: pairing_rank(m, n)?,
    })
}

/// An explicit isomorphism `S(N) -> N(s)`, trying every weight shift `s`
/// that matches graded dimensions. Returns the shift and the map.
pub fn frobenius_iso(
    n: &Module,
    rng: &mut impl rand::Rng,
) -> Result<Option<(i32, crate::exactla::SparseMat)>> {
    let s = s_zero(n)?.module;
    if s.dim() != n.dim() {
        return Ok(None);
    }
    let (Some(a), Some(b)) = (s.min_weight(), n.min_weight()) else {
        return Ok(Some((0, crate::exactla::SparseMat::zeros(n.field(), 0, 0))));
    };
    let shift = b - a;
    let target = n.clone();
    Ok(find_isomorphism(&s.shift(shift), &target, rng, 32)?.map(|f| (shift, f)))
}
