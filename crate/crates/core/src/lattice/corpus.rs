//! Small graphs used by tests, experiments and the CLI.

use super::graph::{Edge, Graph};

/// One vertex `m` with `k` self-loops `a1..ak`.
pub fn bouquet(k: usize) -> Graph {
    let edges = (1..=k).map(|i| Edge { id: format!("a{i}"), src: "m".into(), dst: "m".into() }).collect();
    Graph::new(vec!["m".into()], edges, "m").expect("valid bouquet")
}

/// Two vertices joined by three parallel edges `e1, e2, e3` from `m` to `v`.
pub fn theta() -> Graph {
    Graph::from_parts(&["m", "v"], &[("e1", "m", "v"), ("e2", "m", "v"), ("e3", "m", "v")], "m")
        .expect("valid theta graph")
}

/// `n` vertices `p0..p{n-1}` in a line, based at `p0`.
pub fn path(n: usize) -> Graph {
    let vertices: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let edges =
        (1..n).map(|i| Edge { id: format!("s{i}"), src: format!("p{}", i - 1), dst: format!("p{i}") }).collect();
    Graph::new(vertices, edges, "p0").expect("valid path graph")
}

/// `n × n` square lattice with vertices `r_c`, horizontal edges `h{r}_{c}`
/// and vertical edges `v{r}_{c}`, based at the corner `0_0`.
pub fn grid(n: usize) -> Graph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for r in 0..n {
        for c in 0..n {
            vertices.push(format!("{r}_{c}"));
            if c + 1 < n {
                edges.push(Edge { id: format!("h{r}_{c}"), src: format!("{r}_{c}"), dst: format!("{r}_{}", c + 1) });
            }
            if r + 1 < n {
                edges.push(Edge { id: format!("v{r}_{c}"), src: format!("{r}_{c}"), dst: format!("{}_{c}", r + 1) });
            }
        }
    }
    Graph::new(vertices, edges, "0_0").expect("valid grid")
}

/// The five graphs the experiments run on: bouquets with one to three
/// loops, the theta graph, and the 2×2-plaquette square lattice.
pub fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("bouquet1", bouquet(1)),
        ("bouquet2", bouquet(2)),
        ("bouquet3", bouquet(3)),
        ("theta", theta()),
        ("grid2x2", grid(3)),
    ]
}
