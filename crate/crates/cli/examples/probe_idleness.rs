use ricciflat_core::curvature;
use ricciflat_core::{EdgeRef, Graph, Rational};
use std::str::FromStr;

fn main() {
    let edges = [(0, 1), (0, 3), (0, 4), (1, 2), (1, 4), (1, 6), (1, 7), (2, 3), (3, 5), (3, 6),
        (3, 7), (3, 8), (3, 9), (4, 8), (5, 6), (5, 7), (5, 8), (6, 8)];
    let g = Graph::from_edges(10, &edges).unwrap();
    let e = EdgeRef::new(5, 7);
    for s in ["1/13", "1/8", "1/7", "5/34", "1/6", "11/60", "1/5", "5/24", "2/9", "1/4"] {
        let a = Rational::from_str(s).unwrap();
        let (k, _) = curvature::k_alpha(&g, e, &a).unwrap();
        println!("k({s}) = {k}");
    }
}
