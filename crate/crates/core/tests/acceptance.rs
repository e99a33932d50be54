//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the terminal.
//! Exits nonzero when a blocking criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use sinfty::galg::{verify_axioms, GradedAlgebra, Piece};
use sinfty::gmod::{
    check_dual, coinduce, find_isomorphism, is_module_map, module_panel, random_module, rng_from_seed, s_zero,
    From, Module,
};
use sinfty::homcx::{concave_bound, convex_bound, quasi_iso_check, Complex};
use sinfty::oracle::{brute_small, ext_dual_route, local_cohomology_cone, search_regrading};
use sinfty::resolve::{concave_resolution, convex_resolution, fifi_filtration, injectivity_test};
use sinfty::sinf::{
    check_isomom, ext, frobenius_iso, hom_through, semi_infinite_ext, tor, ExtTable, SemiInfinite, Window,
};
use sinfty::zoo::{self, ZooAlgebra};

/// Budgets pinned by the criteria.
const AXIOM_BUDGET: Duration = Duration::from_secs(120);
const WELL_POSED_BUDGET: Duration = Duration::from_secs(600);
/// Depth to which augmentations must be quasi-isomorphisms.
const QIS_DEPTH: i32 = 6;
/// Terms are coinduced by construction; injectivity is spot-checked on the
/// first few, since later terms reach 10^5 dimensions on the p = 5 algebras.
const INJECTIVE_SPOT_CHECK: usize = 4;
/// Homological window of the semi-infinite criteria.
const I_WINDOW: (i32, i32) = (-3, 3);
const M_WINDOW: (i32, i32) = (-8, 8);
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: sinfty::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn panel() -> Vec<ZooAlgebra> {
    zoo::standard_panel().expect("zoo builds")
}

fn flagship_algebras() -> Vec<ZooAlgebra> {
    vec![
        zoo::restricted_sl2(2).unwrap(),
        zoo::restricted_sl2(3).unwrap(),
        zoo::small_quantum_sl2(3, 7).unwrap(),
    ]
}

fn k_and_verma(a: &std::sync::Arc<GradedAlgebra>) -> Result<(Module, Module), String> {
    let k = ok(zoo::trivial(a))?;
    let v = ok(zoo::baby_verma(a, k.chars()[0] as usize))?;
    Ok((k, v))
}

fn c1_axioms() -> Outcome {
    let start = Instant::now();
    for z in panel() {
        let r = ok(verify_axioms(&z.alg))?;
        ensure(r.all_ok(), || format!("{} fails with exit code {}", z.label(), r.exit_code()))?;
    }
    let t = start.elapsed();
    ensure(t < AXIOM_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("5 algebras in {t:.2?}"))
}

fn c2_restricted_coinduction() -> Outcome {
    let mut total = 0;
    for z in panel() {
        let a = &z.alg;
        let ge = ok(a.piece(Piece::Ge))?;
        let le = ok(a.piece(Piece::Le))?;
        let mut rng = rng_from_seed(SEED);
        for n in 0..10 {
            let m = ok(random_module(&ge, &mut rng))?;
            let lhs = ok(ok(coinduce(a, From::Ge, &m))?.restrict(Piece::Le))?;
            let rhs = ok(coinduce(&le, From::Base, &ok(m.restrict_to_base())?))?;
            ensure(lhs.weight_dims() == rhs.weight_dims(), || format!("{} module {n}: graded dims differ", z.label()))?;
            let f = ok(find_isomorphism(&lhs, &rhs, &mut rng, 32))?
                .ok_or_else(|| format!("{} module {n}: no isomorphism found", z.label()))?;
            ensure(is_module_map(&lhs, &rhs, &f, 0), || format!("{} module {n}: map is not A<=0-linear", z.label()))?;
            total += lhs.dim();
        }
    }
    Ok(format!("50 isomorphisms verified, total dimension {total}"))
}

fn c3_resolutions() -> Outcome {
    let mut checked = 0;
    for z in panel() {
        let (k, v) = k_and_verma(&z.alg)?;
        for (name, m) in [("k", &k), ("verma", &v)] {
            let x = Complex::single(m.clone(), 0);
            let tag = || format!("{} {name}", z.label());
            let (down, aug) = ok(convex_resolution(&x, QIS_DEPTH as usize))?;
            ok(convex_bound(&down)).map_err(|e| format!("{}: {e}", tag()))?;
            for t in down.terms.iter().take(INJECTIVE_SPOT_CHECK) {
                ensure(ok(injectivity_test(t, Piece::Ge))?, || format!("{}: convex term not A>=0-injective", tag()))?;
            }
            ensure(ok(quasi_iso_check(&x, &down, &aug, QIS_DEPTH))?, || format!("{}: convex augmentation", tag()))?;
            let (up, aug) = ok(concave_resolution(&x, QIS_DEPTH as usize))?;
            ok(concave_bound(&up)).map_err(|e| format!("{}: {e}", tag()))?;
            for t in up.terms.iter().take(INJECTIVE_SPOT_CHECK) {
                ensure(ok(injectivity_test(t, Piece::Le))?, || format!("{}: concave term not A<=0-injective", tag()))?;
            }
            ensure(ok(quasi_iso_check(&x, &up, &aug, QIS_DEPTH))?, || format!("{}: concave augmentation", tag()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} modules, both resolutions to depth {QIS_DEPTH}"))
}

fn c4_coinduced_filtration() -> Outcome {
    let (mut inj, mut total) = (0, 0);
    for z in panel() {
        for (label, m) in ok(module_panel(&z.alg, SEED, 20))? {
            let is_inj = ok(injectivity_test(&m, Piece::Le))?;
            let filtered = fifi_filtration(&m).is_ok();
            ensure(is_inj == filtered, || {
                format!("{} {label}: injective={is_inj} but filtration ok={filtered}", z.label())
            })?;
            inj += is_inj as usize;
            total += 1;
        }
    }
    ensure(inj > 0 && inj < total, || format!("panel is degenerate: {inj} of {total} injective"))?;
    Ok(format!("{total} modules, {inj} A<=0-injective"))
}

fn c5_well_posed() -> Outcome {
    let start = Instant::now();
    let a = zoo::restricted_sl2(3).unwrap().alg;
    let k = ok(zoo::trivial(&a))?;
    let w = Window::new(I_WINDOW, M_WINDOW);
    let x = Complex::single(k.clone(), 0);
    let first = ok(SemiInfinite::new(&x, &x, w))?;
    let second = ok(first.with_contractible())?;
    let (t1, t2) = (ok(first.table())?, ok(second.table())?);
    ensure(t1.all_certified() && t2.all_certified(), || "uncertified entries".into())?;
    if let Some((e1, e2)) = ok(t1.first_mismatch(&t2))? {
        return Err(format!("({}, {}): {} vs {}", e1.i, e1.m, e1.dim, e2.dim));
    }
    let t = start.elapsed();
    ensure(t < WELL_POSED_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("{} entries agree, total dimension {}, {t:.2?}", t1.len(), t1.total()))
}

fn c6_hom_through() -> Outcome {
    let w = Window::new(I_WINDOW, M_WINDOW);
    let mut n = 0;
    for z in flagship_algebras() {
        let (k, v) = k_and_verma(&z.alg)?;
        for (name, x, y) in [("(k,k)", &k, &k), ("(verma,k)", &v, &k), ("(k,verma)", &k, &v)] {
            let s = ok(semi_infinite_ext(x, y, w))?;
            let h = ok(hom_through(&Complex::single(x.clone(), 0), y, w))?;
            let keep = |t: &ExtTable| ExtTable::from_entries(t.iter().filter(|e| e.certified).copied());
            let (s, h) = (keep(&s), keep(&h));
            ensure(s.len() == w.degrees().count() * w.shifts().count(), || {
                format!("{} {name}: {} uncertified sinf entries", z.label(), 7 * 17 - s.len())
            })?;
            if let Some((a, b)) = ok(s.first_mismatch(&h))? {
                return Err(format!("{} {name} at ({}, {}): {} vs {}", z.label(), a.i, a.m, a.dim, b.dim));
            }
            n += 1;
        }
    }
    Ok(format!("{n} (algebra, pair) tables equal entrywise"))
}

fn c7_reductions() -> Outcome {
    let w = Window::new(I_WINDOW, M_WINDOW);
    for z in flagship_algebras() {
        let a = &z.alg;
        let (k, v) = k_and_verma(a)?;
        // (a) coinduced from A<=0 on the left: no negative degrees, ext otherwise
        let x = ok(coinduce(a, From::Le, &ok(k.restrict(Piece::Le))?))?;
        for (name, y) in [("k", &k), ("verma", &v)] {
            let s = ok(semi_infinite_ext(&x, y, w))?;
            let e = ok(ext(&x, y, Window::new((0, I_WINDOW.1), M_WINDOW)))?;
            for en in s.iter() {
                let want = if en.i < 0 { 0 } else { e.dim(en.i, en.m).unwrap() };
                ensure(en.dim == want, || {
                    format!("(a) {} Y={name} at ({}, {}): {} vs ext {want}", z.label(), en.i, en.m, en.dim)
                })?;
            }
        }
        // (b) coinduced from A>=0 on the right: tor of the dual against S(Y)
        let y = ok(coinduce(a, From::Ge, &ok(k.restrict(Piece::Ge))?))?;
        let sy = ok(s_zero(&y))?.module;
        for (name, x) in [("k", &k), ("verma", &v)] {
            let s = ok(semi_infinite_ext(x, &y, w))?;
            let t = ok(tor(&ok(check_dual(x))?, &sy, Window::new((0, -I_WINDOW.0), M_WINDOW)))?;
            for en in s.iter() {
                let want = if en.i > 0 { 0 } else { t.dim(-en.i, en.m).unwrap() };
                ensure(en.dim == want, || {
                    format!("(b) {} X={name} at ({}, {}): {} vs tor {want}", z.label(), en.i, en.m, en.dim)
                })?;
            }
        }
    }
    Ok("(a) sinf = ext and (b) sinf[i, m] = tor[-i, m] on 3 algebras".into())
}

fn c8_pairing() -> Outcome {
    let mut pairs = 0;
    for z in panel() {
        let a = &z.alg;
        let ge = ok(a.piece(Piece::Ge))?;
        let le = ok(a.piece(Piece::Le))?;
        let mut rng = rng_from_seed(SEED);
        for n in 0..5 {
            let m = ok(coinduce(a, From::Le, &ok(random_module(&le, &mut rng))?))?;
            let nn = ok(coinduce(a, From::Ge, &ok(random_module(&ge, &mut rng))?))?;
            let r = ok(check_isomom(&m, &nn, 3))?;
            ensure(r.holds(), || format!("{} pair {n}: {r:?}", z.label()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs: Ext, RS and Tor vanish in degrees 1..=3 and the pairing is bijective"))
}

fn c9_frobenius() -> Outcome {
    let mut shifts = BTreeMap::new();
    for z in panel().into_iter().filter(ZooAlgebra::is_hopf) {
        let mut rng = rng_from_seed(SEED);
        for n in 0..5 {
            let m = ok(random_module(&z.alg, &mut rng))?;
            let (s, f) = ok(frobenius_iso(&m, &mut rng))?.ok_or_else(|| format!("{} module {n}: none found", z.label()))?;
            let sm = ok(s_zero(&m))?.module.shift(s);
            ensure(is_module_map(&sm, &m, &f, 0), || format!("{} module {n}: not a module map", z.label()))?;
            *shifts.entry(z.label()).or_insert(0usize) += 1;
        }
    }
    Ok(format!("S(N) = N explicitly for {} modules on {} Hopf algebras", shifts.values().sum::<usize>(), shifts.len()))
}

fn c10_oracles() -> Outcome {
    // dual route on the flagship pairs
    let w = Window::new((0, 3), M_WINDOW);
    for z in flagship_algebras() {
        let (k, v) = k_and_verma(&z.alg)?;
        let mut rng = rng_from_seed(SEED);
        let r = ok(random_module(&z.alg, &mut rng))?;
        for (name, x, y) in [("(k,k)", &k, &k), ("(verma,k)", &v, &k), ("(k,verma)", &k, &v), ("(rand,k)", &r, &k)] {
            let (_, same) = ok(ext_dual_route(x, y, w))?;
            ensure(same, || format!("dual route {} {name}", z.label()))?;
        }
    }
    // bar resolution on the algebras small enough for it
    let small = [zoo::restricted_sl2(2).unwrap(), zoo::dual_numbers(3, 1).unwrap()];
    let bw = Window::new((0, 2), (-4, 4));
    for z in &small {
        let k = ok(zoo::trivial(&z.alg))?;
        let mut rng = rng_from_seed(SEED);
        let r = ok(random_module(&z.alg, &mut rng))?;
        for (name, x, y) in [("(k,k)", &k, &k), ("(rand,k)", &r, &k), ("(k,rand)", &k, &r)] {
            let b = ok(brute_small(x, y, bw))?;
            let e = ok(ext(x, y, bw))?;
            ensure(b == e, || format!("bar resolution {} {name}", z.label()))?;
        }
    }
    // local cohomology of the cone
    for p in [3, 5] {
        let t = ok(local_cohomology_cone(p, (-6, 6), 2))?;
        for (&wt, h) in &t.by_weight {
            ensure(h[0] == 0 && h[2] == 0, || format!("p={p} weight {wt}: {h:?}"))?;
            let expect = if wt > 0 && wt % 2 == 0 { wt as usize } else { 0 };
            ensure(h[1] == expect, || format!("p={p} weight {wt}: H1 = {} expected {expect}", h[1]))?;
        }
    }
    ensure(local_cohomology_cone(2, (-6, 6), 2).is_err(), || "p=2 accepted".into())?;
    Ok("dual route, bar resolution and cone H^1 (p=3,5) agree; p=2 rejected".into())
}

fn c11_regrading() -> Outcome {
    let z = zoo::small_quantum_sl2(3, 7).unwrap();
    let k = ok(zoo::trivial(&z.alg))?;
    let s = ok(semi_infinite_ext(&k, &k, Window::new(I_WINDOW, (-12, 12))))?;
    let certified = ExtTable::from_entries(s.iter().filter(|e| e.certified).copied());
    let cone = ok(local_cohomology_cone(7, (-6, 6), 2))?;
    let target: BTreeMap<i32, usize> = cone.by_weight.iter().map(|(&w, h)| (w, h[1])).collect();
    let found = search_regrading(&certified, &target, 4).ok_or("no candidate sends a class into the window")?;
    let msg = format!(
        "best weight = {}*m + {}*i + {} matches {}/{} weights",
        found.a, found.b, found.c, found.matched, found.window
    );
    if found.exact() {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() {
    let criteria: [(u8, &str, bool, fn() -> Outcome); 11] = [
        (1, "axioms on the standard panel", true, c1_axioms),
        (2, "restriction of coinduction", true, c2_restricted_coinduction),
        (3, "convex and concave resolutions", true, c3_resolutions),
        (4, "coinduced filtration iff A<=0-injective", true, c4_coinduced_filtration),
        (5, "semi-infinite Ext independent of resolutions", true, c5_well_posed),
        (6, "hom through truncations equals semi-infinite Ext", true, c6_hom_through),
        (7, "reduction cases", true, c7_reductions),
        (8, "vanishing and pairing isomorphism", true, c8_pairing),
        (9, "S is the identity on Hopf algebras", true, c9_frobenius),
        (10, "oracles", true, c10_oracles),
        (11, "regrading against cone local cohomology (exploratory)", false, c11_regrading),
    ];
    let mut blocking_failures = 0;
    for (n, name, blocking, run) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                let tag = if blocking { "FAIL" } else { "FAIL (non-blocking)" };
                println!("criterion {n:>2} {tag}  {name}: {detail} [{secs:.1}s]");
                blocking_failures += blocking as usize;
            }
        }
    }
    if blocking_failures > 0 {
        eprintln!("{blocking_failures} blocking criteria failed");
        std::process::exit(1);
    }
}
