mod common;

use common::{naive_cut, naive_energy, random_graph};
use proptest::prelude::*;
use qiils::graph::{
    cut_from_energy, cut_value, gen_regular, gen_torus, ising_energy, parse_gset, Graph,
};
use qiils::Bitstring;

fn graph_and_bits() -> impl Strategy<Value = (Graph, Vec<u8>)> {
    (2usize..24, 0.05f64..0.9, any::<u64>()).prop_flat_map(|(n, density, seed)| {
        (
            Just(random_graph(n, density, seed)),
            proptest::collection::vec(0u8..2, n),
        )
    })
}

proptest! {
    #[test]
    fn cut_matches_energy_identity((g, bits) in graph_and_bits()) {
        let b = Bitstring::from_bits(bits.clone());
        let cut = cut_value(&g, &b).unwrap();
        let energy = ising_energy(&g, &b).unwrap();
        prop_assert!((cut - naive_cut(&g, &bits)).abs() < 1e-9);
        prop_assert!((energy - naive_energy(&g, &bits)).abs() < 1e-9);
        prop_assert!((cut - (g.total_weight() - energy) / 2.0).abs() < 1e-9);
        prop_assert!((cut_from_energy(&g, energy) - cut).abs() < 1e-9);
    }

    #[test]
    fn complement_preserves_the_cut((g, bits) in graph_and_bits()) {
        let b = Bitstring::from_bits(bits);
        prop_assert_eq!(cut_value(&g, &b).unwrap(), cut_value(&g, &b.complement()).unwrap());
    }

    #[test]
    fn gset_round_trip(n in 2usize..40, density in 0.05f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, density, seed);
        let back = parse_gset(&g.to_gset()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn bitstring_text_round_trip(bits in proptest::collection::vec(0u8..2, 0..64)) {
        let b = Bitstring::from_bits(bits);
        prop_assert_eq!(b.to_string().parse::<Bitstring>().unwrap(), b);
    }

    #[test]
    fn adjacency_is_symmetric(n in 2usize..30, density in 0.05f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, density, seed);
        let mut total = 0.0;
        for j in 0..n {
            for (k, w) in g.neighbors(j) {
                prop_assert!(g.neighbors(k).any(|(i, w2)| i == j && w2 == w));
                total += w;
            }
        }
        prop_assert!((total / 2.0 - g.total_weight()).abs() < 1e-9);
    }
}

#[test]
fn regular_graphs_pass_a_degree_audit() {
    for draw in 0..1000u64 {
        let (n, d) = [(16, 3), (50, 3), (30, 4), (21, 2), (64, 5)][(draw % 5) as usize];
        let g = gen_regular(n, d, draw % 2 == 0, draw).unwrap();
        assert_eq!(g.edge_count(), n * d / 2, "draw {draw}");
        assert!((0..n).all(|j| g.degree(j) == d), "draw {draw}");
        for e in g.edges() {
            assert!(e.u < e.v);
            assert!(e.w == 1.0 || (draw % 2 == 0 && e.w > 0.0 && e.w <= 1.0));
        }
    }
}

#[test]
fn regular_generation_is_seeded() {
    assert_eq!(
        gen_regular(100, 3, true, 9).unwrap(),
        gen_regular(100, 3, true, 9).unwrap()
    );
    assert_ne!(
        gen_regular(100, 3, true, 9).unwrap(),
        gen_regular(100, 3, true, 10).unwrap()
    );
    assert!(gen_regular(5, 3, false, 0).is_err());
    assert!(gen_regular(4, 4, false, 0).is_err());
    let k4 = gen_regular(4, 3, false, 0).unwrap();
    assert_eq!(k4.edge_count(), 6);
    assert!(k4.edges().iter().all(|e| e.w == 1.0));
}

#[test]
fn torus_has_four_neighbors_everywhere() {
    let g = gen_torus(50, 16, 3).unwrap();
    assert_eq!(g.n(), 800);
    assert_eq!(g.edge_count(), 1600);
    assert!((0..800).all(|j| g.degree(j) == 4));
    assert!(g.edges().iter().all(|e| e.w.abs() == 1.0));
}
