mod common;

use std::f64::consts::FRAC_PI_2;

use common::{dense_ground_energy, naive_ps_energy, random_graph, rng};
use proptest::prelude::*;
use qiils::energy::{local_field, ps_energy, AngleVector, FieldCache};
use qiils::graph::gen_regular;
use qiils::oracle::{product_state_expectation, product_statevector};
use qiils::solver::sweep;
use rand::Rng;

fn angles(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0..=FRAC_PI_2, n)
}

proptest! {
    #[test]
    fn energy_matches_reference(
        (n, th) in (2usize..20).prop_flat_map(|n| (Just(n), angles(n))),
        density in 0.1f64..0.9,
        seed in any::<u64>(),
        lambda in 0.0f64..=1.0,
    ) {
        let g = random_graph(n, density, seed);
        let e = ps_energy(&g, lambda, &AngleVector::new(th.clone())).unwrap();
        prop_assert!((e - naive_ps_energy(&g, lambda, &th)).abs() < 1e-9);
    }

    #[test]
    fn energy_splits_at_each_site(
        (n, th) in (2usize..16).prop_flat_map(|n| (Just(n), angles(n))),
        seed in any::<u64>(),
        lambda in 0.0f64..=1.0,
        t in 0.0..=FRAC_PI_2,
    ) {
        let g = random_graph(n, 0.4, seed);
        let av = AngleVector::new(th.clone());
        for j in 0..n {
            let a = local_field(&g, &av, j);
            let site = |x: f64| lambda * a * (2.0 * x).cos() - (1.0 - lambda) * (2.0 * x).sin();
            let mut moved = th.clone();
            moved[j] = t;
            let diff = naive_ps_energy(&g, lambda, &moved) - naive_ps_energy(&g, lambda, &th);
            prop_assert!((diff - (site(t) - site(th[j]))).abs() < 1e-9);
        }
    }

    #[test]
    fn product_state_expectation_is_the_energy(
        (n, th) in (2usize..9).prop_flat_map(|n| (Just(n), angles(n))),
        seed in any::<u64>(),
        lambda in 0.0f64..=1.0,
    ) {
        let g = random_graph(n, 0.5, seed);
        let av = AngleVector::new(th);
        let state = product_statevector(&av).unwrap();
        let norm: f64 = state.iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        let direct = product_state_expectation(&g, lambda, &av).unwrap();
        prop_assert!((direct - ps_energy(&g, lambda, &av).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn product_states_respect_the_variational_bound(
        (n, th) in (2usize..8).prop_flat_map(|n| (Just(n), angles(n))),
        seed in any::<u64>(),
        lambda in 0.0f64..=1.0,
    ) {
        let g = random_graph(n, 0.5, seed);
        let e = ps_energy(&g, lambda, &AngleVector::new(th)).unwrap();
        prop_assert!(e >= dense_ground_energy(&g, lambda) - 1e-9);
    }
}

#[test]
fn cache_survives_a_long_fuzz() {
    let g = gen_regular(200, 3, true, 5).unwrap();
    let mut r = rng(11);
    let mut th = AngleVector::random(g.n(), &mut r);
    let mut cache = FieldCache::new(&g, &th);
    for s in 0..1000 {
        let lambda = r.gen_range(0.05..1.0);
        sweep(&g, lambda, &mut th, &mut cache);
        for _ in 0..50 {
            let j = r.gen_range(0..g.n());
            let new = r.gen_range(0.0..FRAC_PI_2);
            cache.update(&g, j, th[j], new);
            th[j] = new;
        }
        if s % 100 == 0 {
            assert!(cache.max_drift(&g, &th) < 1e-9, "sweep {s}");
        }
    }
    assert!(cache.max_drift(&g, &th) < 1e-9);
    for j in 0..g.n() {
        assert!((cache.field(j) - local_field(&g, &th, j)).abs() < 1e-9);
        assert!((cache.cos2()[j] - (2.0 * th[j]).cos()).abs() < 1e-12);
    }
}
