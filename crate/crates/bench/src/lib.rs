//! Shared fixtures for the benchmarks.

use rand::Rng;
use sinfty::exactla::{Fp, Mat};
use sinfty::gmod::{rng_from_seed, Module};
use sinfty::zoo;

/// A seeded dense matrix over `F_p`.
pub fn random_matrix(p: u32, rows: usize, cols: usize, seed: u64) -> Mat {
    let f = Fp::new(p).expect("prime");
    let mut rng = rng_from_seed(seed);
    let data: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect()).collect();
    Mat::from_rows(f, &data, cols)
}

/// The trivial module and the baby Verma module over restricted sl2.
pub fn sl2_pair(p: u32) -> (Module, Module) {
    let a = zoo::restricted_sl2(p).expect("zoo builds").alg;
    let k = zoo::trivial(&a).expect("trivial module");
    let v = zoo::baby_verma(&a, k.chars()[0] as usize).expect("verma");
    (k, v)
}
