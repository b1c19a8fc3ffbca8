//! Acceptance criteria A1–A10, run in order by a plain `main`. Each prints
//! one `PASS`/`FAIL` line with its wall time; the process fails if any
//! criterion does.

use std::time::{Duration, Instant};

use gol_core::algebra::{
    cartan_matrix, check_algebra, group_algebra_from_table, loewy_length, omega_orbit_period,
    symmetric_group_table, LeftModule, OmegaPeriod,
};
use gol_core::brauer_tree::{predicted_cartan, to_algebra, BrauerTree};
use gol_core::green::{
    closure_trials, commutative_factor_count, kernel_lattices, lattice_count, partition_count,
    projective_lattices, rational_components, reduce_mod_p, simple_count_identity, GreenOrderSpec,
};
use gol_core::par::Exec;
use gol_core::polyfunctor::{
    check_mod_p_invariance, check_p_alpha_vanishes, cross_effect_dims, degree_of, dim_at, welldefined_family,
    PolyFunctorSpec,
};
use gol_core::recollement::{corner_algebra, quotient_by_trace_ideal, IdempotentSelection};
use gol_core::exactring::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs `check`, prints the verdict line, and returns whether it held within
/// the time budget. A panic counts as a failure.
fn criterion(id: &str, what: &str, budget: Duration, check: impl FnOnce() -> Result<(), String>) -> bool {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
        .unwrap_or_else(|_| Err("panicked".into()));
    let took = start.elapsed();
    let verdict = match (&outcome, took <= budget) {
        (Ok(()), true) => "PASS".to_string(),
        (Ok(()), false) => format!("FAIL (over budget {budget:?})"),
        (Err(why), _) => format!("FAIL: {why}"),
    };
    println!("{id} {verdict} [{what}] {took:.2?}");
    outcome.is_ok() && took <= budget
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Tridiagonal with 2 on the diagonal (1 at a leaf end of `n = 1`) and 1 off it.
fn tridiagonal(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn a01_stem_cartan_matrices() -> bool {
    criterion("A1", "stem Cartan matrices, n = 1..7", Duration::from_secs(1), || {
        for n in 1..=7 {
            let c = cartan_matrix(&to_algebra(&BrauerTree::stem(n).unwrap()).unwrap()).map_err(|e| e.to_string())?;
            ensure(c == tridiagonal(n), || format!("n = {n}: {c:?}"))?;
        }
        Ok(())
    })
}

fn a02_green_order_closure() -> bool {
    criterion("A2", "closure under products, p in {2,3,5,7}, N = 6, 1000 pairs", Duration::from_secs(5), || {
        for p in [2, 3, 5, 7] {
            let spec = GreenOrderSpec::lambda0(p, 6).unwrap();
            let out = closure_trials(&spec, 1000, 2024 + p, Exec::Parallel).map_err(|e| e.to_string())?;
            ensure(out.trials == 1000 && out.failures == 0, || format!("p = {p}: {:?}", out.witness))?;
        }
        Ok(())
    })
}

fn a03_reduction_is_stem_algebra() -> bool {
    criterion("A3", "reduction mod p is the stem algebra, p in {5,7}", Duration::from_secs(10), || {
        for p in [5u64, 7] {
            let a = reduce_mod_p(&GreenOrderSpec::lambda0(p, 6).unwrap()).map_err(|e| e.to_string())?;
            let rep = check_algebra(&a);
            ensure(rep.all_pass(), || format!("p = {p}: {rep:?}"))?;
            ensure(a.dim() == 4 * p as usize - 2, || format!("p = {p}: dim {}", a.dim()))?;
            ensure(a.vertex_count() == p as usize, || format!("p = {p}: {} vertices", a.vertex_count()))?;
            let c = cartan_matrix(&a).map_err(|e| e.to_string())?;
            let want = predicted_cartan(&BrauerTree::stem(p as usize).unwrap());
            ensure(c == want && c == tridiagonal(p as usize), || format!("p = {p}: {c:?}"))?;
        }
        Ok(())
    })
}

fn a04_components_and_simples() -> bool {
    criterion("A4", "p+1 rational components and p simples, p in {5,7}", Duration::from_secs(1), || {
        for p in [5u64, 7] {
            let spec = GreenOrderSpec::lambda0(p, 6).unwrap();
            let k = rational_components(&spec).map_err(|e| e.to_string())?;
            ensure(k == p as usize + 1, || format!("p = {p}: {k} components"))?;
            let a = reduce_mod_p(&spec).map_err(|e| e.to_string())?;
            // simples of a split algebra: dim A/J
            let simples = a.dim() - a.radical().dim();
            ensure(simples == p as usize && a.vertex_count() == simples, || format!("p = {p}: {simples} simples"))?;
        }
        Ok(())
    })
}

fn a05_lattice_census() -> bool {
    criterion("A5", "projective and kernel lattices, p in {3,5}; lattice_count(5) = 23", Duration::from_secs(10), || {
        for p in [3u64, 5] {
            let spec = GreenOrderSpec::lambda0(p, 6).unwrap();
            let ps = projective_lattices(&spec).map_err(|e| e.to_string())?;
            let mut want = vec![4; p as usize];
            want[0] = 3;
            want[p as usize - 1] = 3;
            let ranks: Vec<usize> = ps.iter().map(|l| l.rank).collect();
            ensure(ranks == want, || format!("p = {p}: ranks {ranks:?}"))?;
            let ks = kernel_lattices(&spec).map_err(|e| e.to_string())?;
            ensure(ks.len() == 2 * (p as usize - 1), || format!("p = {p}: {} kernels", ks.len()))?;
            ensure(ks.iter().all(|k| k.end_local), || format!("p = {p}: non-local kernel"))?;
        }
        let c = lattice_count(5).map_err(|e| e.to_string())?;
        let rho: usize = (2..5).map(partition_count).sum();
        ensure(c.total == 23 && c.total == 3 * 5 - 2 + rho, || format!("{c:?}"))?;
        ensure(c.projective == 5 + rho && c.nonprojective == 2 * 4, || format!("{c:?}"))
    })
}

fn a06_symmetric_group_oracle() -> bool {
    criterion("A6", "brute-force F_3[S_3] matches stem(2)", Duration::from_secs(30), || {
        let g = group_algebra_from_table(&symmetric_group_table(3), 3).map_err(|e| e.to_string())?;
        let b = to_algebra(&BrauerTree::stem(2).unwrap()).unwrap();
        for (name, a) in [("group", &g), ("tree", &b)] {
            ensure(a.dim() == 6 && a.radical().dim() == 4, || format!("{name}: dims {} {}", a.dim(), a.radical().dim()))?;
            let c = cartan_matrix(a).map_err(|e| e.to_string())?;
            ensure(c == vec![vec![2, 1], vec![1, 2]], || format!("{name}: cartan {c:?}"))?;
            let ll = loewy_length(a, &LeftModule::regular(a)).map_err(|e| e.to_string())?;
            ensure(ll == 3, || format!("{name}: Loewy length {ll}"))?;
            for v in 0..2 {
                let t = omega_orbit_period(a, v, 10).map_err(|e| e.to_string())?;
                ensure(t == OmegaPeriod::Finite(4), || format!("{name}: period of S{v} is {t:?}"))?;
            }
        }
        Ok(())
    })
}

fn a07_syzygy_periodicity() -> bool {
    criterion("A7", "Ω-period 2n for every simple over stem(n), n = 2..6", Duration::from_secs(5), || {
        let mut bad = Vec::new();
        for n in 2..=6 {
            let a = to_algebra(&BrauerTree::stem(n).unwrap()).unwrap();
            for v in 0..n {
                let t = omega_orbit_period(&a, v, 4 * n).map_err(|e| e.to_string())?;
                if t != OmegaPeriod::Finite(2 * n) {
                    bad.push(format!("stem({n}) S{v}: {t:?}"));
                }
            }
        }
        ensure(bad.is_empty(), || bad.join("; "))
    })
}

fn a08_recollement() -> bool {
    criterion("A8", "cut-leaf corner of stem(p) and its trace quotient, p in {3,5,7}", Duration::from_secs(2), || {
        for p in [3usize, 5, 7] {
            let a = to_algebra(&BrauerTree::stem(p).unwrap()).unwrap();
            let s = IdempotentSelection::new(&a, (1..p).collect()).map_err(|e| e.to_string())?;
            let c = cartan_matrix(&corner_algebra(&a, &s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(c == predicted_cartan(&BrauerTree::stem(p - 1).unwrap()), || format!("p = {p}: {c:?}"))?;
            let q = quotient_by_trace_ideal(&a, &s).map_err(|e| e.to_string())?;
            ensure(q.dim() == 1, || format!("p = {p}: quotient dim {}", q.dim()))?;
        }
        Ok(())
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> IntMatrix {
    IntMatrix::from_rows(&(0..k).map(|_| (0..k).map(|_| rng.gen_range(-9..=9)).collect()).collect::<Vec<_>>())
        .unwrap()
}

fn a09_functor_identities() -> bool {
    use PolyFunctorSpec::*;
    criterion("A9", "linearization dims, top cross effects, mod-p checks", Duration::from_secs(10), || {
        for n in 0..=10 {
            let d = dim_at(&Linearization { m: 1, n }, 1).map_err(|e| e.to_string())?;
            ensure(d == n as u128 + 1, || format!("lin:1:{n} at k = 1: {d}"))?;
        }
        let mut fact = 1u128;
        for n in 1..=5usize {
            fact *= n as u128;
            let t = cross_effect_dims(&TensorPower(n), n).map_err(|e| e.to_string())?.c(n);
            let s = cross_effect_dims(&SymPower(n), n).map_err(|e| e.to_string())?.c(n);
            ensure(t == fact && s == 1, || format!("n = {n}: c_n(tensor) = {t}, c_n(sym) = {s}"))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [3u64, 5, 7] {
            let family = welldefined_family(p);
            for _ in 0..200 {
                let k = rng.gen_range(1..=3usize);
                let (a, g) = (random_matrix(&mut rng, k), random_matrix(&mut rng, k));
                for f in &family {
                    let deg = degree_of(f, f.degree_bound()).unwrap();
                    ensure(deg >= 1 && deg < p as usize, || format!("{f} has degree {deg}"))?;
                    // leading block small enough for a dense action
                    let kf = (1..=k).rev().find(|&j| dim_at(f, j).unwrap() <= 400).unwrap_or(1);
                    let idx: Vec<usize> = (0..kf).collect();
                    let (a, g) = (a.minor(&idx, &idx), g.minor(&idx, &idx));
                    let v = check_p_alpha_vanishes(f, &a, p).map_err(|e| e.to_string())?;
                    ensure(v.holds, || format!("F(pA) ≠ 0 for {f}, p = {p}, A = {a:?}: {:?}", v.witness))?;
                    let w = check_mod_p_invariance(f, &a, &g, p).map_err(|e| e.to_string())?;
                    ensure(w.holds, || format!("F(A+pG) ≠ F(A) for {f}, p = {p}: {:?}", w.witness))?;
                }
            }
        }
        Ok(())
    })
}

fn a10_counting_reconciliation() -> bool {
    criterion("A10", "12 commutative factors at p = 5, 17 simples", Duration::from_secs(1), || {
        let c = commutative_factor_count(5).map_err(|e| e.to_string())?;
        ensure(c.total == 12 && c.low_degree == c.low_degree_regular, || format!("{c:?}"))?;
        let (lhs, rhs) = simple_count_identity(5).map_err(|e| e.to_string())?;
        ensure(lhs == 17 && rhs == 17, || format!("{lhs} vs {rhs}"))
    })
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        a01_stem_cartan_matrices,
        a02_green_order_closure,
        a03_reduction_is_stem_algebra,
        a04_components_and_simples,
        a05_lattice_census,
        a06_symmetric_group_oracle,
        a07_syzygy_periodicity,
        a08_recollement,
        a09_functor_identities,
        a10_counting_reconciliation,
    ];
    let passed = criteria.iter().filter(|c| c()).count();
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
