use std::collections::BTreeMap;

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::graph::{Graph, PathSpec};
use crate::error::{Error, Result};
use crate::group::{Group, GroupKind, Quat, U1};

fn check_keys<'a, G>(what: &str, map: &BTreeMap<String, G>, expected: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut count = 0;
    for key in expected {
        if !map.contains_key(key) {
            return Err(Error::DomainMismatch(format!("{what} missing {key:?}")));
        }
        count += 1;
    }
    if count != map.len() {
        let extra = map.len() - count;
        return Err(Error::DomainMismatch(format!("{what} has {extra} key(s) outside the graph")));
    }
    Ok(())
}

/// Edge holonomies of a generalized connection restricted to one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<G> {
    holonomies: BTreeMap<String, G>,
}

impl<G: Group> Connection<G> {
    /// Fails unless `holonomies` has exactly the graph's edge ids as keys.
    pub fn new(graph: &Graph, holonomies: BTreeMap<String, G>) -> Result<Self> {
        let c = Self { holonomies };
        c.check(graph)?;
        Ok(c)
    }

    pub fn from_fn(graph: &Graph, mut f: impl FnMut(&str) -> G) -> Self {
        let holonomies = graph.edges_by_id().map(|e| (e.id.clone(), f(&e.id))).collect();
        Self { holonomies }
    }

    pub fn identity(graph: &Graph) -> Self {
        Self::from_fn(graph, |_| G::identity())
    }

    /// Independent Haar draws per edge, in lexicographic edge order.
    pub fn sample_haar<R: Rng + ?Sized>(graph: &Graph, rng: &mut R) -> Self {
        Self::from_fn(graph, |_| G::sample_haar(rng))
    }

    pub fn check(&self, graph: &Graph) -> Result<()> {
        check_keys("connection", &self.holonomies, graph.edges_by_id().map(|e| &e.id))
    }

    pub fn get(&self, edge: &str) -> Option<&G> {
        self.holonomies.get(edge)
    }

    pub fn holonomies(&self) -> &BTreeMap<String, G> {
        &self.holonomies
    }

    pub fn with(&self, edge: &str, value: G) -> Self {
        let mut c = self.clone();
        if let Some(h) = c.holonomies.get_mut(edge) {
            *h = value;
        }
        c
    }

    /// Largest edgewise distance; infinite if the edge sets differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.holonomies.len() != other.holonomies.len() {
            return f64::INFINITY;
        }
        self.holonomies
            .iter()
            .map(|(k, a)| other.holonomies.get(k).map_or(f64::INFINITY, |b| a.distance(b)))
            .fold(0.0, f64::max)
    }

    /// Ordered product along `p`, without checking that steps are
    /// consecutive. Inverses are used on reversed steps.
    pub(crate) fn transport(&self, p: &PathSpec) -> Result<G> {
        let mut h = G::identity();
        for s in &p.steps {
            let e =
                self.holonomies.get(&s.edge).ok_or_else(|| Error::InvalidPath(format!("unknown edge {:?}", s.edge)))?;
            h = if s.forward { h.compose(e) } else { h.compose(&e.inverse()) };
        }
        Ok(h)
    }
}

pub fn holonomy<G: Group>(graph: &Graph, c: &Connection<G>, p: &PathSpec) -> Result<G> {
    c.check(graph)?;
    p.endpoints(graph)?;
    c.transport(p)
}

/// Gauge transform: one group element per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeTransform<G> {
    values: BTreeMap<String, G>,
}

impl<G: Group> GaugeTransform<G> {
    pub fn new(graph: &Graph, values: BTreeMap<String, G>) -> Result<Self> {
        let t = Self { values };
        t.check(graph)?;
        Ok(t)
    }

    pub(crate) fn from_map(values: BTreeMap<String, G>) -> Self {
        Self { values }
    }

    pub fn from_fn(graph: &Graph, mut f: impl FnMut(&str) -> G) -> Self {
        let values = graph.vertices().iter().map(|v| (v.clone(), f(v))).collect();
        Self { values }
    }

    pub fn identity(graph: &Graph) -> Self {
        Self::constant(graph, G::identity())
    }

    pub fn constant(graph: &Graph, g: G) -> Self {
        Self::from_fn(graph, |_| g)
    }

    pub fn sample_haar<R: Rng + ?Sized>(graph: &Graph, rng: &mut R) -> Self {
        let mut vs: Vec<&String> = graph.vertices().iter().collect();
        vs.sort();
        let values = vs.into_iter().map(|v| (v.clone(), G::sample_haar(rng))).collect();
        Self { values }
    }

    pub fn check(&self, graph: &Graph) -> Result<()> {
        check_keys("gauge transform", &self.values, graph.vertices().iter())
    }

    pub fn get(&self, vertex: &str) -> Option<&G> {
        self.values.get(vertex)
    }

    pub fn values(&self) -> &BTreeMap<String, G> {
        &self.values
    }

    pub fn with(&self, vertex: &str, value: G) -> Self {
        let mut t = self.clone();
        if let Some(g) = t.values.get_mut(vertex) {
            *g = value;
        }
        t
    }

    /// Pointwise product `(self·other)_x = self_x · other_x`. Both must be
    /// defined on the same vertices.
    pub fn compose(&self, other: &Self) -> Self {
        let values = self.values.iter().map(|(k, a)| (k.clone(), a.compose(&other.values[k]))).collect();
        Self { values }
    }

    pub fn inverse(&self) -> Self {
        let values = self.values.iter().map(|(k, a)| (k.clone(), a.inverse())).collect();
        Self { values }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .map(|(k, a)| other.values.get(k).map_or(f64::INFINITY, |b| a.distance(b)))
            .fold(0.0, f64::max)
    }
}

/// Right action `h(e) ↦ g_src⁻¹ h(e) g_dst`.
pub fn apply_gauge<G: Group>(graph: &Graph, c: &Connection<G>, t: &GaugeTransform<G>) -> Result<Connection<G>> {
    c.check(graph)?;
    t.check(graph)?;
    let holonomies = graph
        .edges_by_id()
        .map(|e| {
            let h = &c.holonomies[&e.id];
            let gs = &t.values[&e.src];
            let gd = &t.values[&e.dst];
            (e.id.clone(), gs.inverse().compose(h).compose(gd))
        })
        .collect();
    Ok(Connection { holonomies })
}

#[derive(Serialize)]
struct WireOut<'a, G> {
    group: GroupKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    holonomies: Option<&'a BTreeMap<String, G>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<&'a BTreeMap<String, G>>,
}

#[derive(Deserialize)]
struct ConnectionIn<G> {
    #[serde(default)]
    group: Option<GroupKind>,
    holonomies: BTreeMap<String, G>,
}

#[derive(Deserialize)]
struct GaugeIn<G> {
    #[serde(default)]
    group: Option<GroupKind>,
    values: BTreeMap<String, G>,
}

fn check_kind<G: Group, E: serde::de::Error>(group: Option<GroupKind>) -> std::result::Result<(), E> {
    match group {
        Some(k) if k != G::KIND => Err(E::custom(format!("expected group {}, found {k}", G::KIND))),
        _ => Ok(()),
    }
}

impl<G: Group + Serialize> Serialize for Connection<G> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireOut { group: G::KIND, holonomies: Some(&self.holonomies), values: None }.serialize(s)
    }
}

impl<'de, G: Group + DeserializeOwned> Deserialize<'de> for Connection<G> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ConnectionIn::<G>::deserialize(d)?;
        check_kind::<G, D::Error>(w.group)?;
        Ok(Connection { holonomies: w.holonomies })
    }
}

impl<G: Group + Serialize> Serialize for GaugeTransform<G> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireOut { group: G::KIND, holonomies: None, values: Some(&self.values) }.serialize(s)
    }
}

impl<'de, G: Group + DeserializeOwned> Deserialize<'de> for GaugeTransform<G> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GaugeIn::<G>::deserialize(d)?;
        check_kind::<G, D::Error>(w.group)?;
        Ok(GaugeTransform { values: w.values })
    }
}

/// A connection whose group backend is only known at runtime.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum AnyConnection {
    Su2(Connection<Quat>),
    U1(Connection<U1>),
}

impl AnyConnection {
    pub fn kind(&self) -> GroupKind {
        match self {
            AnyConnection::Su2(_) => GroupKind::Su2,
            AnyConnection::U1(_) => GroupKind::U1,
        }
    }
}

impl Serialize for AnyConnection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AnyConnection::Su2(c) => c.serialize(s),
            AnyConnection::U1(c) => c.serialize(s),
        }
    }
}
