use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::connection::{apply_gauge, Connection, GaugeTransform};
use super::graph::{Graph, PathSpec, Step};
use crate::canonical::gauge_equivalent_tuples;
use crate::centralizer::{is_generic, orbit_type};
use crate::error::{Error, Result};
use crate::group::{Group, GroupTuple, Quat, Tolerance, U1};

/// Breadth-first spanning tree from the base, edges scanned in id order.
/// Returns, for every reached vertex, the edge and orientation used to
/// enter it.
fn bfs_tree(graph: &Graph) -> Result<BTreeMap<String, Option<Step>>> {
    let mut incident: BTreeMap<&str, Vec<(&str, &str, bool)>> = BTreeMap::new();
    for e in graph.edges_by_id() {
        if e.src == e.dst {
            continue;
        }
        incident.entry(&e.src).or_default().push((&e.id, &e.dst, true));
        incident.entry(&e.dst).or_default().push((&e.id, &e.src, false));
    }
    let mut parent: BTreeMap<String, Option<Step>> = BTreeMap::new();
    parent.insert(graph.base().to_string(), None);
    let mut queue = VecDeque::from([graph.base()]);
    while let Some(v) = queue.pop_front() {
        for &(id, other, forward) in incident.get(v).map(Vec::as_slice).unwrap_or(&[]) {
            if parent.contains_key(other) {
                continue;
            }
            parent.insert(other.to_string(), Some(Step { edge: id.to_string(), forward }));
            queue.push_back(other);
        }
    }
    if parent.len() != graph.vertices().len() {
        let missing: Vec<_> = graph.vertices().iter().filter(|v| !parent.contains_key(*v)).collect();
        return Err(Error::Disconnected(format!("unreachable from base: {missing:?}")));
    }
    Ok(parent)
}

pub fn maximal_tree(graph: &Graph) -> Result<BTreeSet<String>> {
    Ok(bfs_tree(graph)?.into_values().flatten().map(|s| s.edge).collect())
}

/// Loops at the base built from a maximal tree, one per non-tree edge:
/// tree path to the edge's source, the edge, tree path back from its
/// target. They freely generate the loop group of the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalSystem {
    graph: Graph,
    tree: BTreeSet<String>,
    tree_paths: BTreeMap<String, PathSpec>,
    loops: Vec<PathSpec>,
    free_edges: Vec<String>,
}

pub fn fundamental_system(graph: &Graph) -> Result<FundamentalSystem> {
    let parent = bfs_tree(graph)?;
    let mut tree_paths = BTreeMap::new();
    for v in graph.vertices() {
        let mut steps = Vec::new();
        let mut at = v.as_str();
        while let Some(Some(step)) = parent.get(at) {
            let e = graph.edge(&step.edge).expect("tree edge exists");
            at = if step.forward { &e.src } else { &e.dst };
            steps.push(step.clone());
        }
        steps.reverse();
        tree_paths.insert(v.clone(), PathSpec { steps });
    }
    let tree: BTreeSet<String> = parent.into_values().flatten().map(|s| s.edge).collect();
    let mut loops = Vec::new();
    let mut free_edges = Vec::new();
    for e in graph.edges_by_id().filter(|e| !tree.contains(&e.id)) {
        let lp = tree_paths[&e.src].then(&PathSpec::edge(&e.id, true)).then(&tree_paths[&e.dst].inverse());
        loops.push(lp);
        free_edges.push(e.id.clone());
    }
    Ok(FundamentalSystem { graph: graph.clone(), tree, tree_paths, loops, free_edges })
}

impl FundamentalSystem {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tree(&self) -> &BTreeSet<String> {
        &self.tree
    }

    pub fn loops(&self) -> &[PathSpec] {
        &self.loops
    }

    /// Free (non-tree) edge of each loop, in loop order.
    pub fn free_edges(&self) -> &[String] {
        &self.free_edges
    }

    /// The tree path from the base to `vertex`.
    pub fn tree_path(&self, vertex: &str) -> Option<&PathSpec> {
        self.tree_paths.get(vertex)
    }

    pub fn rank(&self) -> usize {
        self.loops.len()
    }

    /// Tree-path holonomies `h(γ_x)` for every vertex.
    pub fn transports<G: Group>(&self, c: &Connection<G>) -> Result<BTreeMap<String, G>> {
        c.check(&self.graph)?;
        self.tree_paths.iter().map(|(v, p)| Ok((v.clone(), c.transport(p)?))).collect()
    }

    /// Rewrites a loop at the base as a word in the fundamental loops:
    /// `(loop index, exponent ±1)` for each free edge it crosses. Tree
    /// edges contribute nothing because tree paths cancel.
    pub fn decompose(&self, p: &PathSpec) -> Result<Vec<(usize, bool)>> {
        if !p.is_loop_at(&self.graph, self.graph.base())? {
            return Err(Error::InvalidPath("not a loop at the base".into()));
        }
        Ok(p.steps
            .iter()
            .filter_map(|s| self.free_edges.iter().position(|e| *e == s.edge).map(|i| (i, s.forward)))
            .collect())
    }
}

/// Loop holonomies in loop order.
pub fn reduction_map<G: Group>(c: &Connection<G>, fs: &FundamentalSystem) -> Result<GroupTuple<G>> {
    c.check(&fs.graph)?;
    fs.loops.iter().map(|p| c.transport(p)).collect()
}

/// Identity on tree edges and the target values on free edges, so the
/// reduction map returns `target` exactly.
pub fn construct_connection<G: Group>(fs: &FundamentalSystem, target: &GroupTuple<G>) -> Result<Connection<G>> {
    if target.len() != fs.rank() {
        return Err(Error::RankMismatch { expected: fs.rank(), got: target.len() });
    }
    let free: BTreeMap<&str, G> =
        fs.free_edges.iter().map(String::as_str).zip(target.elements().iter().copied()).collect();
    Ok(Connection::from_fn(&fs.graph, |id| free.get(id).copied().unwrap_or_else(G::identity)))
}

/// Gauge with `g_x = h(γ_x)⁻¹`: tree edges become the identity and free
/// edges carry the loop holonomies. Returns the gauged connection and the
/// transform that produces it (to rounding).
pub fn tree_gauge<G: Group>(fs: &FundamentalSystem, c: &Connection<G>) -> Result<(Connection<G>, GaugeTransform<G>)> {
    let transports = fs.transports(c)?;
    let t = GaugeTransform::from_fn(&fs.graph, |v| transports[v].inverse());
    let gauged = construct_connection(fs, &reduction_map(c, fs)?)?;
    Ok((gauged, t))
}

/// Global gauge-fixing section for U(1): the tree-gauged representative.
/// Exactly gauge invariant because the loop phases are.
pub fn abelian_canonical(fs: &FundamentalSystem, c: &Connection<U1>) -> Result<Connection<U1>> {
    Ok(tree_gauge(fs, c)?.0)
}

/// A gauge transform carrying `c1` to `c2`, or `None` if the connections
/// lie in different orbits. Non-generic SU(2) inputs are rejected.
pub fn gauge_equivalent_connections(
    fs: &FundamentalSystem,
    c1: &Connection<Quat>,
    c2: &Connection<Quat>,
    tol: &Tolerance,
) -> Result<Option<GaugeTransform<Quat>>> {
    let (g1, t1) = tree_gauge(fs, c1)?;
    let (g2, t2) = tree_gauge(fs, c2)?;
    let r1 = reduction_map(&g1, fs)?;
    let r2 = reduction_map(&g2, fs)?;
    for r in [&r1, &r2] {
        if !is_generic(r, tol) {
            return Err(Error::NotGeneric(orbit_type(r, tol)));
        }
    }
    let Some(w) = gauge_equivalent_tuples(&r1, &r2, tol)? else {
        return Ok(None);
    };
    let t = t1.compose(&GaugeTransform::constant(&fs.graph, w)).compose(&t2.inverse());
    verify(fs, c1, c2, &t, 10.0 * tol.eps_eq)?;
    Ok(Some(t))
}

/// U(1) version: equivalent exactly when the loop phases agree.
pub fn gauge_equivalent_abelian(
    fs: &FundamentalSystem,
    c1: &Connection<U1>,
    c2: &Connection<U1>,
) -> Result<Option<GaugeTransform<U1>>> {
    let (g1, t1) = tree_gauge(fs, c1)?;
    let (g2, t2) = tree_gauge(fs, c2)?;
    if g1 != g2 {
        return Ok(None);
    }
    let t = t1.compose(&t2.inverse());
    verify(fs, c1, c2, &t, 1e-12)?;
    Ok(Some(t))
}

fn verify<G: Group>(
    fs: &FundamentalSystem,
    c1: &Connection<G>,
    c2: &Connection<G>,
    t: &GaugeTransform<G>,
    limit: f64,
) -> Result<()> {
    let residual = apply_gauge(&fs.graph, c1, t)?.distance(c2);
    if residual.is_nan() || residual > limit {
        return Err(Error::WitnessVerificationFailed { residual, limit });
    }
    Ok(())
}
