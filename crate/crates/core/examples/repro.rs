// Minimal failure finder for the weighted search.
use rand::prelude::*;
use tdsolve::forest::dfs_fallback_forest;
use tdsolve::gen::random_graph;
use tdsolve::matching::weighted::max_weight_perfect_matching_checked;
use tdsolve::oracles::brute_mwpm;

fn main() {
    for n2 in 2..=5usize {
        let n = 2 * n2;
        for seed in 0..100000u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, 0.5, -9..=9, false, &mut rng);
            let forest = dfs_fallback_forest(&g);
            let gc = g.clone();
            let fc = forest.clone();
            let result = std::panic::catch_unwind(move || {
                max_weight_perfect_matching_checked(&gc, &fc)
            });
            let oracle = brute_mwpm(&g).unwrap();
            let bad = match &result {
                Err(_) => true,
                Ok(Ok((m, _))) => Some(m.weight(&g).unwrap()) != oracle.as_ref().map(|o| o.0),
                Ok(Err(tdsolve::Error::NoPerfectMatching { .. })) => oracle.is_some(),
                Ok(Err(_)) => true,
            };
            if bad {
                println!("n={} seed={} edges={:?}", n, seed, g.edges());
                println!("forest={:?}", forest.parents());
                println!("result={:?}", result.map(|r| r.map(|(m, _)| m.edges())));
                println!("oracle={:?}", oracle);
                return;
            }
        }
        println!("n={} clean", n);
    }
}
