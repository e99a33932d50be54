use super::*;
use crate::galg::Piece;
use crate::zoo::{baby_verma, restricted_sl2, small_quantum_sl2, trivial};

fn weights(m: &Module) -> Vec<i32> {
    let mut w = m.weights().to_vec();
    w.sort();
    w
}

#[test]
fn coinduced_trivial_has_expected_weights() {
    for z in [restricted_sl2(3).unwrap(), small_quantum_sl2(3, 7).unwrap()] {
        let a = &z.alg;
        let k = trivial(a).unwrap();
        let ge = a.piece(Piece::Ge).unwrap();
        let kg = k.restrict(Piece::Ge).unwrap();
        let c = coinduce(a, From::Ge, &kg).unwrap();
        c.validate().unwrap();
        assert_eq!(weights(&c), vec![0, 1, 2]);
        assert_eq!(weights(&c.restrict(Piece::Le).unwrap()), vec![0, 1, 2]);
        let _ = ge;
        let kl = k.restrict(Piece::Le).unwrap();
        let ind = induce(a, From::Le, &kl).unwrap();
        ind.validate().unwrap();
        assert_eq!(weights(&ind), vec![0, 1, 2]);
    }
}

#[test]
fn unit_and_counit_are_module_maps() {
    let a = restricted_sl2(3).unwrap().alg;
    let v = baby_verma(&a, 1).unwrap();
    for from in [From::Ge, From::Le, From::Base] {
        let co = Coinduction::get(&a, from).unwrap();
        let res = match from {
            From::Ge => v.restrict(Piece::Ge).unwrap(),
            From::Le => v.restrict(Piece::Le).unwrap(),
            From::Base => v.restrict(Piece::Zero).unwrap(),
        };
        let c = co.apply(&res).unwrap();
        c.validate().unwrap();
        let eta = co.unit_map(&v, &c).unwrap();
        assert!(is_module_map(&v, &c, &eta, 0));
        let eps = co.counit_map(&res);
        let c_res = c.restrict(match from {
            From::Ge => Piece::Ge,
            From::Le => Piece::Le,
            From::Base => Piece::Zero,
        });
        let c_res = c_res.unwrap();
        assert!(is_module_map(&c_res, &res, &eps, 0));
        // counit after unit is the identity
        assert_eq!(eps.compose(&eta), crate::exactla::SparseMat::identity(a.field(), v.dim()));
    }
}

#[test]
fn hom_examples() {
    let a = restricted_sl2(3).unwrap().alg;
    let k = trivial(&a).unwrap();
    let v = baby_verma(&a, k.chars()[0] as usize).unwrap();
    assert_eq!(hom_space(&k, &k, 0).unwrap().dim(), 1);
    assert_eq!(hom_space(&v, &k, 0).unwrap().dim(), 1);
    assert!(hom_space(&v, &v, 0).unwrap().dim() >= 1);
}

#[test]
fn adjunction_dimensions() {
    let a = restricted_sl2(3).unwrap().alg;
    let ge = a.piece(Piece::Ge).unwrap();
    let mut rng = rng_from_seed(7);
    for _ in 0..3 {
        let x = random_module(&a, &mut rng).unwrap();
        let m = random_module(&ge, &mut rng).unwrap();
        let c = coinduce(&a, From::Ge, &m).unwrap();
        let lhs = hom_total_dim(&x, &c).unwrap();
        let rhs = hom_total_dim(&x.restrict(Piece::Ge).unwrap(), &m).unwrap();
        assert_eq!(lhs, rhs);
        let i = induce(&a, From::Ge, &m).unwrap();
        i.validate().unwrap();
        assert_eq!(i.dim() * ge.dim(), m.dim() * a.dim());
        let lhs = hom_total_dim(&i, &x).unwrap();
        let rhs = hom_total_dim(&m, &x.restrict(Piece::Ge).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn dual_is_involutive_and_panel_is_valid() {
    let a = small_quantum_sl2(3, 7).unwrap().alg;
    for (label, m) in module_panel(&a, 3, 10).unwrap() {
        m.validate().unwrap_or_else(|e| panic!("{label}: {e}"));
        let dd = m.dual().dual();
        assert!(std::sync::Arc::ptr_eq(dd.alg(), &a));
        let iso = find_isomorphism(&m, &dd, &mut rng_from_seed(1), 16).unwrap();
        assert!(iso.is_some(), "{label}");
    }
}

#[test]
fn submodule_and_quotient_are_modules() {
    let a = restricted_sl2(3).unwrap().alg;
    let mut rng = rng_from_seed(11);
    let p = peirce_projective(&a, 0).unwrap();
    let v: Vec<(u32, u32)> = vec![(p.dim() as u32 - 1, 1)];
    let s = GradedSubspace::generated(&p, &[v]);
    assert!(s.is_submodule(&p));
    let q = s.quotient(&p);
    q.module.validate().unwrap();
    assert!(is_module_map(&p, &q.module, &q.proj, 0));
    let sub = s.submodule(&p).unwrap();
    sub.module.validate().unwrap();
    assert_eq!(sub.module.dim() + q.module.dim(), p.dim());
    let r = random_quotient(&p, &mut rng, 1);
    r.validate().unwrap();
}

#[test]
fn coregular_dual_and_tensor() {
    use super::{check_dual, coregular, regular_module, s_zero, tensor_over_a};
    let z = crate::zoo::restricted_sl2(2).unwrap();
    let a = &z.alg;
    let k = crate::zoo::trivial(a).unwrap();
    let co = coregular(a).unwrap();
    // S(A*) = A
    assert_eq!(s_zero(&co.module).unwrap().module.weight_dims(), regular_module(a).unwrap().0.weight_dims());
    let kv = check_dual(&k).unwrap();
    assert_eq!(kv.dim(), 1);
    assert_eq!(kv.weights(), &[0]);
    let v = crate::zoo::baby_verma(a, k.chars()[0] as usize).unwrap();
    let vv = check_dual(&v).unwrap();
    let neg: Vec<i32> = v.weights().iter().map(|w| -w).collect();
    assert_eq!(vv.weights(), &neg[..]);
    // A (x)_A N = N
    let (ar, _) = regular_module(&a.opposite()).unwrap();
    assert_eq!(tensor_over_a(&ar, &v).unwrap(), v.weight_dims());
    assert_eq!(tensor_over_a(&kv, &k).unwrap().values().sum::<usize>(), 1);
}

#[test]
fn module_json_roundtrip() {
    use super::{find_isomorphism, module_from_json, module_to_json, ModuleJson};
    let z = crate::zoo::restricted_sl2(3).unwrap();
    let k = crate::zoo::trivial(&z.alg).unwrap();
    let v = crate::zoo::baby_verma(&z.alg, k.chars()[0] as usize).unwrap();
    let mut rng = super::rng_from_seed(1);
    for m in [v.clone(), v.dual()] {
        let text = module_to_json(&m, "alg.json");
        let back = module_from_json(&ModuleJson::parse(&text).unwrap(), &z.alg).unwrap();
        assert!(find_isomorphism(&m, &back, &mut rng, 8).unwrap().is_some());
    }
    let mut doc = ModuleJson::parse(&module_to_json(&v, "alg.json")).unwrap();
    doc.action.clear();
    assert!(module_from_json(&doc, &z.alg).is_err());
}
