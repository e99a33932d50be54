use criterion::{criterion_group, criterion_main, Criterion};
use sinfty::homcx::Complex;
use sinfty::resolve::ProjectiveResolution;
use sinfty::sinf::{ext, hom_through, semi_infinite_ext, Window};
use sinfty_bench::{random_matrix, sl2_pair};

fn linear_algebra(c: &mut Criterion) {
    let m = random_matrix(7, 200, 240, 1);
    c.bench_function("rank 200x240 over F_7", |b| b.iter(|| m.rank()));
}

fn resolutions(c: &mut Criterion) {
    let (k, _) = sl2_pair(3);
    c.bench_function("projective resolution rsl2(3) k depth 6", |b| {
        b.iter(|| ProjectiveResolution::build(&k, 6).unwrap())
    });
    let w = Window::new((0, 4), (-8, 8));
    c.bench_function("ext rsl2(3) (k,k) degrees 0..=4", |b| b.iter(|| ext(&k, &k, w).unwrap()));
}

fn semi_infinite(c: &mut Criterion) {
    let mut g = c.benchmark_group("semi-infinite");
    g.sample_size(10);
    let w = Window::new((-3, 3), (-8, 8));
    for p in [2, 3] {
        let (k, v) = sl2_pair(p);
        g.bench_function(format!("sinf rsl2({p}) (k,k)"), |b| b.iter(|| semi_infinite_ext(&k, &k, w).unwrap()));
        g.bench_function(format!("hom-through rsl2({p}) (verma,k)"), |b| {
            b.iter(|| hom_through(&Complex::single(v.clone(), 0), &k, w).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, linear_algebra, resolutions, semi_infinite);
criterion_main!(benches);
