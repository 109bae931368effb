//! Generalized connections on finite graphs.
//!
//! A connection assigns a group element to each edge; gauge transforms
//! assign one to each vertex and act on the right by
//! `h(e) ↦ g_src⁻¹ h(e) g_dst`. A maximal tree fixes paths `γ_x` from the
//! base to every vertex and a system of loops that freely generate the
//! loop group, which reduces connections to tuples of loop holonomies.

mod connection;
pub mod corpus;
mod graph;
mod stabilizer;
mod system;

pub use connection::{apply_gauge, holonomy, AnyConnection, Connection, GaugeTransform};
pub use graph::{Edge, Graph, PathSpec, Step};
pub use stabilizer::{connection_orbit_type, is_in_normalizer, stabilizer_description, Stabilizer};
pub use system::{
    abelian_canonical, construct_connection, fundamental_system, gauge_equivalent_abelian,
    gauge_equivalent_connections, maximal_tree, reduction_map, tree_gauge, FundamentalSystem,
};
