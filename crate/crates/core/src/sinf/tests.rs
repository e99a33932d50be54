use super::*;
use crate::homcx::Complex;
use crate::zoo;

#[test]
fn dual_numbers_ext_is_one_in_every_degree() {
    let z = zoo::dual_numbers(2, 1).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let t = ext(&k, &k, Window::new((0, 5), (-8, 8))).unwrap();
    for i in 0..=5 {
        let total: usize = (-8..=8).map(|m| t.dim(i, m).unwrap()).sum();
        assert_eq!(total, 1, "degree {i}");
    }
}

#[test]
fn sl2_ext_routes_agree() {
    for p in [2, 3] {
        let z = zoo::restricted_sl2(p).unwrap();
        let k = zoo::trivial(&z.alg).unwrap();
        let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
        for (x, y) in [(&k, &k), (&v, &k), (&k, &v)] {
            let w = Window::new((0, 4), (-6, 6));
            let a = ext(x, y, w).unwrap();
            let b = ext_from_complex(&Complex::single(x.clone(), 0), y, w).unwrap();
            assert_eq!(a, b, "p = {p}");
        }
        // Hom(M, M) contains the identity
        assert!(ext(&v, &v, Window::new((0, 0), (0, 0))).unwrap().dim(0, 0).unwrap() >= 1);
    }
}

#[test]
fn hom_from_verma_to_trivial() {
    let z = zoo::restricted_sl2(3).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
    let t = ext(&v, &k, Window::new((0, 0), (-3, 3))).unwrap();
    assert_eq!(t.dim(0, 0), Some(1));
    assert_eq!(t.total(), 1);
}

#[test]
fn tor_routes_agree_and_free_module_is_flat() {
    let z = zoo::restricted_sl2(2).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let kr = zoo::trivial(&z.alg.opposite()).unwrap();
    let w = Window::new((0, 3), (-4, 4));
    assert_eq!(tor(&kr, &k, w).unwrap(), tor_left_route(&kr, &k, w).unwrap());
    let (a, _) = crate::gmod::regular_module(&z.alg.opposite()).unwrap();
    let t = tor(&a, &k, w).unwrap();
    assert_eq!(t.total(), 1);
    assert_eq!(t.dim(0, 0), Some(1));
}

#[test]
fn semi_infinite_pairs_agree_and_are_certified() {
    let z = zoo::restricted_sl2(2).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let w = Window::new((-2, 2), (-4, 4));
    let s = SemiInfinite::for_modules(&k, &k, w).unwrap();
    let a = s.table().unwrap();
    let b = s.with_contractible().unwrap().table().unwrap();
    assert!(a.all_certified());
    assert_eq!(a.first_mismatch(&b).unwrap(), None);
    assert!(a.total() > 0);
}

#[test]
fn semi_infinite_shift_equivariance() {
    let z = zoo::restricted_sl2(2).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let n = 2;
    let w = Window::new((-1, 1), (-3, 3));
    let a = semi_infinite_ext(&k, &k.shift(-n), w).unwrap();
    let b = semi_infinite_ext(&k, &k, Window::new((-1, 1), (-3 + n, 3 + n))).unwrap();
    for e in a.iter() {
        assert_eq!(Some(e.dim), b.dim(e.i, e.m + n), "({}, {})", e.i, e.m);
    }
}

#[test]
fn hom_through_matches_semi_infinite() {
    let z = zoo::restricted_sl2(2).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
    let w = Window::new((-3, 3), (-6, 6));
    for (x, y) in [(&k, &k), (&v, &k), (&k, &v)] {
        let a = semi_infinite_ext(x, y, w).unwrap();
        let b = hom_through(&Complex::single(x.clone(), 0), y, w).unwrap();
        assert_eq!(a.first_mismatch(&b).unwrap(), None);
    }
}

#[test]
fn semi_infinite_reduces_to_ext_for_coinduced_source() {
    use crate::gmod::{coinduce, From};
    let z = zoo::restricted_sl2(2).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let x = coinduce(&z.alg, From::Le, &k.restrict(crate::galg::Piece::Le).unwrap()).unwrap();
    let w = Window::new((0, 3), (-6, 6));
    let a = semi_infinite_ext(&x, &k, w).unwrap();
    let b = ext(&x, &k, w).unwrap();
    assert_eq!(a.first_mismatch(&b).unwrap(), None);
}

#[test]
fn semi_infinite_of_zero_is_zero() {
    let z = zoo::restricted_sl2(2).unwrap();
    let zero = crate::gmod::Module::zero(z.alg.clone());
    let t = semi_infinite_ext(&zero, &zero, Window::new((0, 1), (0, 1))).unwrap();
    assert_eq!(t.total(), 0);
}

#[test]
fn pairing_for_coinduced_pair() {
    use crate::galg::Piece;
    use crate::gmod::{coinduce, From};
    let z = zoo::restricted_sl2(3).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let m = coinduce(&z.alg, From::Le, &k.restrict(Piece::Le).unwrap()).unwrap();
    let n = coinduce(&z.alg, From::Ge, &k.restrict(Piece::Ge).unwrap()).unwrap();
    let r = check_isomom(&m, &n, 3).unwrap();
    assert!(r.holds(), "{r:?}");
    let (a, _) = crate::gmod::regular_module(&z.alg).unwrap();
    let co = crate::gmod::coregular(&z.alg).unwrap();
    let r = check_isomom(&a, &co.module, 2).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.hom_dim, 27);
    assert!(check_isomom(&k, &n, 1).is_err());
}

#[test]
fn s_functor_is_identity_on_restricted_sl2() {
    let z = zoo::restricted_sl2(3).unwrap();
    let k = zoo::trivial(&z.alg).unwrap();
    let v = zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
    let mut rng = crate::gmod::rng_from_seed(5);
    for n in [&k, &v] {
        let (shift, _) = frobenius_iso(n, &mut rng).unwrap().expect("S(N) = N");
        assert_eq!(shift, 0);
    }
}
