use proptest::prelude::*;

use sinfty::exactla::{quotient_basis, solve, Fp, Mat};
use sinfty::galg::Piece;
use sinfty::gmod::{
    check_dual, coinduce, find_isomorphism, hom_total_dim, induce, module_from_json, module_to_json, random_module,
    rng_from_seed, From, ModuleJson,
};
use sinfty::oracle::{brute_small, ext_dual_route};
use sinfty::sinf::{ext, semi_infinite_ext, Window};
use sinfty::zoo;

const PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

fn matrix(p: u32, rows: usize, cols: usize, vals: &[u32]) -> Mat {
    let data: Vec<Vec<u32>> = (0..rows).map(|r| (0..cols).map(|c| vals[r * cols + c] % p).collect()).collect();
    Mat::from_rows(Fp::new(p).unwrap(), &data, cols)
}

fn arb_matrix() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
    (0..PRIMES.len(), 1usize..12, 1usize..12).prop_flat_map(|(pi, r, c)| {
        (Just(PRIMES[pi]), Just(r), Just(c), proptest::collection::vec(0u32..11, r * c))
    })
}

proptest! {
    #[test]
    fn rank_equals_transpose_rank((p, r, c, vals) in arb_matrix()) {
        let m = matrix(p, r, c, &vals);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_recovers_images((p, r, c, vals) in arb_matrix(), xs in proptest::collection::vec(0u32..11, 12)) {
        let m = matrix(p, r, c, &vals);
        let x: Vec<u32> = xs[..c].iter().map(|v| v % p).collect();
        let b = m.mul_vec(&x);
        let sol = solve(&m, &b);
        prop_assert!(sol.is_some());
        prop_assert_eq!(m.mul_vec(&sol.unwrap()), b);
    }

    #[test]
    fn quotient_projection_has_full_row_rank((p, r, c, vals) in arb_matrix()) {
        // the column space of m, as an independent set of columns in F_p^r
        let m = matrix(p, r, c, &vals);
        let t = m.transpose().rref();
        let basis: Vec<Vec<u32>> = (0..t.pivots.len()).map(|i| t.mat.row(i).to_vec()).collect();
        let w = Mat::from_cols(m.field(), r, &basis);
        let q = quotient_basis(m.field(), r, &w).unwrap();
        prop_assert_eq!(q.projection.rows(), r - w.cols());
        prop_assert_eq!(q.projection.rank(), r - w.cols());
        prop_assert!(q.projection.mul(&w).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn adjunctions_on_random_modules(seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3u32)]) {
        let a = zoo::restricted_sl2(p).unwrap().alg;
        let mut rng = rng_from_seed(seed);
        let x = random_module(&a, &mut rng).unwrap();
        for from in [From::Ge, From::Le] {
            let piece = if from == From::Ge { Piece::Ge } else { Piece::Le };
            let b = a.piece(piece).unwrap();
            let m = random_module(&b, &mut rng).unwrap();
            let res = x.restrict(piece).unwrap();
            prop_assert_eq!(hom_total_dim(&x, &coinduce(&a, from, &m).unwrap()).unwrap(), hom_total_dim(&res, &m).unwrap());
            prop_assert_eq!(hom_total_dim(&induce(&a, from, &m).unwrap(), &x).unwrap(), hom_total_dim(&m, &res).unwrap());
        }
    }

    #[test]
    fn check_dual_is_an_involution(seed in any::<u64>()) {
        let a = zoo::restricted_sl2(3).unwrap().alg;
        let mut rng = rng_from_seed(seed);
        let m = random_module(&a, &mut rng).unwrap();
        let back = check_dual(&check_dual(&m).unwrap()).unwrap().rebase(&a).unwrap();
        prop_assert!(find_isomorphism(&m, &back, &mut rng, 32).unwrap().is_some());
    }

    #[test]
    fn module_json_round_trips(seed in any::<u64>()) {
        let a = zoo::small_quantum_sl2(3, 7).unwrap().alg;
        let mut rng = rng_from_seed(seed);
        let m = random_module(&a, &mut rng).unwrap();
        let text = module_to_json(&m, "a.json");
        let back = module_from_json(&ModuleJson::parse(&text).unwrap(), &a).unwrap();
        prop_assert_eq!(module_to_json(&back, "a.json"), text);
    }

    #[test]
    fn ext_routes_agree(seed in any::<u64>()) {
        let a = zoo::restricted_sl2(2).unwrap().alg;
        let mut rng = rng_from_seed(seed);
        let x = random_module(&a, &mut rng).unwrap();
        let y = random_module(&a, &mut rng).unwrap();
        let w = Window::new((0, 2), (-6, 6));
        let (t, same) = ext_dual_route(&x, &y, w).unwrap();
        prop_assert!(same);
        prop_assert_eq!(brute_small(&x, &y, w).unwrap(), t);
    }

    #[test]
    fn semi_infinite_shift_equivariance(seed in any::<u64>(), n in -3i32..=3) {
        let a = zoo::restricted_sl2(2).unwrap().alg;
        let mut rng = rng_from_seed(seed);
        let x = random_module(&a, &mut rng).unwrap();
        let y = random_module(&a, &mut rng).unwrap();
        let w = Window::new((-2, 2), (-4, 4));
        let base = semi_infinite_ext(&x, &y, Window::new((-2, 2), (-7, 7))).unwrap();
        let shifted = semi_infinite_ext(&x, &y.shift(-n), w).unwrap();
        for e in shifted.iter() {
            prop_assert_eq!(Some(e.dim), base.dim(e.i, e.m + n));
        }
    }

    #[test]
    fn ext_of_projective_vanishes_in_positive_degrees(seed in any::<u64>()) {
        let a = zoo::restricted_sl2(3).unwrap().alg;
        let mut rng = rng_from_seed(seed);
        let chi = (seed % a.base().nchars() as u64) as usize;
        let p = sinfty::gmod::peirce_projective(&a, chi).unwrap();
        let y = random_module(&a, &mut rng).unwrap();
        let t = ext(&p, &y, Window::new((1, 3), (-10, 10))).unwrap();
        prop_assert_eq!(t.total(), 0);
    }
}
