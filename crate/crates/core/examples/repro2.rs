use tdsolve::forest::EliminationForest;
use tdsolve::graph::Graph;
use tdsolve::matching::weighted::max_weight_perfect_matching_checked;

fn main() {
    let edges = [
        (0, 3, -3), (0, 5, -6), (0, 6, 7), (1, 2, 8), (1, 3, 0), (1, 4, 7),
        (1, 5, 5), (1, 6, 3), (1, 7, 9), (2, 3, 5), (2, 5, -7), (3, 4, 2),
        (3, 6, 3), (3, 7, 2), (4, 6, 6), (6, 7, -8),
    ];
    let g = Graph::undirected(8, &edges).unwrap();
    let parents = vec![None, Some(3), Some(1), Some(0), Some(1), Some(2), Some(4), Some(6)];
    let forest = EliminationForest::from_parents(parents).unwrap();
    let r = max_weight_perfect_matching_checked(&g, &forest);
    println!("{r:?}");
}
