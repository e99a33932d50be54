//! Independent cross-checks: Ext by two routes, Ext from the bar
//! resolution, local cohomology of the quadric cone, and an affine regrading
//! search between two graded tables.

mod bar;
mod cone;
mod regrade;

pub use bar::{brute_small, BRUTE_MAX_DEGREE, BRUTE_MAX_DIM};
pub use cone::{local_cohomology_cone, ConeTable, QuadricCone};
pub use regrade::{search_regrading, Regrading};

use crate::error::Result;
use crate::gmod::Module;
use crate::homcx::Complex;
use crate::sinf::{ext, ext_from_complex, ExtTable, Window};

/// Ext through a projective resolution of `X` and through an injective
/// resolution of `Y`. Returns the first table and whether the two agree.
pub fn ext_dual_route(x: &Module, y: &Module, w: Window) -> Result<(ExtTable, bool)> {
    let a = ext(x, y, w)?;
    let b = ext_from_complex(&Complex::single(x.clone(), 0), y, w)?;
    let same = a == b;
    Ok((a, same))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn bar_resolution_matches_minimal_resolution() {
        let d = zoo::dual_numbers(2, 1).unwrap();
        let k = zoo::trivial(&d.alg).unwrap();
        let w = Window::new((0, 2), (-3, 3));
        let t = brute_small(&k, &k, w).unwrap();
        for i in 0..=2 {
            assert_eq!((-3..=3).map(|m| t.dim(i, m).unwrap()).sum::<usize>(), 1);
        }
        assert_eq!(t, ext(&k, &k, w).unwrap());
        let z = zoo::restricted_sl2(2).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
        for (x, y) in [(&k, &k), (&v, &k), (&k, &v)] {
            let w = Window::new((0, 2), (-4, 4));
            assert_eq!(brute_small(x, y, w).unwrap(), ext(x, y, w).unwrap());
        }
    }

    #[test]
    fn dual_route_agrees() {
        let z = zoo::restricted_sl2(3).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
        assert!(ext_dual_route(&v, &k, Window::new((0, 3), (-6, 6))).unwrap().1);
    }

    #[test]
    fn cone_cohomology_is_concentrated_in_degree_one() {
        let t = local_cohomology_cone(3, (-6, 6), 2).unwrap();
        for (&w, h) in &t.by_weight {
            assert_eq!(h[0], 0);
            assert_eq!(h[2], 0);
            // O_f / O has one class per polynomial degree in [-w/2, w/2)
            let expect = if w > 0 && w % 2 == 0 { w as usize } else { 0 };
            assert_eq!(h[1], expect, "weight {w}");
        }
    }
}
