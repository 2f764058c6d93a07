//! Randomized cross-checks of the exact solvers against enumeration on
//! sizes beyond the acceptance defaults: denser graphs, many weight levels,
//! and fraction-heavy linear matroid pairs.

use lexmax::harness::Rng;
use lexmax::matching::{
    brute_force_matchings, lex_maximal_matching, max_weight_matching, Objective, WeightedGraph,
};
use lexmax::matroid::Matroid;
use lexmax::weights::{weight_of, Weight};

fn random_graph(rng: &mut Rng, max_v: usize, max_e: usize, levels: usize) -> WeightedGraph {
    let nv = rng.range(2, max_v);
    let ne = rng.range(1, max_e);
    let edges = (0..ne)
        .map(|_| {
            let u = rng.range(0, nv - 1);
            let mut v = rng.range(0, nv - 1);
            while v == u {
                v = rng.range(0, nv - 1);
            }
            let num = rng.range(1, 3 * levels) as i64;
            let den = rng.range(1, 4) as i64;
            (u, v, Weight::from_ratio(num, den).unwrap())
        })
        .collect();
    WeightedGraph::new(nv, edges).unwrap()
}

#[test]
fn blossom_matches_enumeration_on_dense_graphs() {
    let mut rng = Rng::new(0xB10550);
    for round in 0..1200 {
        let graph = random_graph(&mut rng, 10, 16, 4);
        let (m, w) = max_weight_matching(&graph);
        let bf = brute_force_matchings(&graph, Objective::MaxWeight, 16).unwrap();
        assert_eq!(w, bf.best_weight, "round {round}: {:?}", graph.edges());
        assert!(lexmax::matching::is_matching(&graph, m.edge_indices()).unwrap());
        let (_, sig, lw) = lex_maximal_matching(&graph);
        let bfl = brute_force_matchings(&graph, Objective::LexMax, 16).unwrap();
        assert_eq!(sig, bfl.best_signature, "round {round} lex: {:?}", graph.edges());
        assert_eq!(
            lw,
            weight_of(bfl.optima[0].edge_indices(), &graph.weights()).unwrap(),
            "round {round} lex weight"
        );
    }
}

#[test]
fn blossom_many_weight_levels() {
    // Up to 10 distinct levels: the reduction produces 3^9-scale integers.
    let mut rng = Rng::new(0x1E_0E1);
    for round in 0..150 {
        let nv = rng.range(4, 8);
        let ne = rng.range(8, 12);
        let edges: Vec<(usize, usize, Weight)> = (0..ne)
            .map(|e| {
                let u = rng.range(0, nv - 1);
                let mut v = rng.range(0, nv - 1);
                while v == u {
                    v = rng.range(0, nv - 1);
                }
                (u, v, Weight::from_integer(e as u64 + 1).unwrap())
            })
            .collect();
        let graph = WeightedGraph::new(nv, edges).unwrap();
        let (_, sig, _) = lex_maximal_matching(&graph);
        let bf = brute_force_matchings(&graph, Objective::LexMax, 16).unwrap();
        assert_eq!(sig, bf.best_signature, "round {round}");
    }
}

#[test]
fn intersection_linear_stress() {
    let mut rng = Rng::new(0x11EA7);
    let pool = ["0", "1", "-1", "2", "1/2", "-1/2", "3/2", "5"];
    for round in 0..400 {
        let n = rng.range(3, 8);
        let mk = |rng: &mut Rng| {
            let rows: Vec<Vec<lexmax::Rational>> = (0..rng.range(2, 3))
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            lexmax::weights::parse_rational(pool[rng.range(0, pool.len() - 1)]).unwrap()
                        })
                        .collect()
                })
                .collect();
            Matroid::Linear(lexmax::matroid::LinearMatroid::new(rows).unwrap())
        };
        let m1 = mk(&mut rng);
        let m2 = mk(&mut rng);
        let weights: Vec<Weight> = (0..n)
            .map(|_| Weight::from_ratio(rng.range(1, 9) as i64, rng.range(1, 3) as i64).unwrap())
            .collect();
        let (_, w) = lexmax::intersection::max_weight_common_independent(&m1, &m2, &weights).unwrap();
        let bf = lexmax::intersection::brute_force_common_independent(
            &m1,
            &m2,
            &weights,
            lexmax::intersection::Objective::MaxWeight,
            12,
        )
        .unwrap();
        assert_eq!(w, bf.best_weight, "round {round}");
        let (_, sig, _) =
            lexmax::intersection::lex_maximal_common_independent(&m1, &m2, &weights).unwrap();
        let bfl = lexmax::intersection::brute_force_common_independent(
            &m1,
            &m2,
            &weights,
            lexmax::intersection::Objective::LexMax,
            12,
        )
        .unwrap();
        assert_eq!(sig, bfl.best_signature, "round {round} lex");
    }
}
