//! Orbit-type stratification for tuples of SU(2) and U(1) elements under
//! simultaneous conjugation, explicit gauge fixing, and generalized
//! connections on finite graphs.
//!
//! Modules, bottom-up:
//!
//! * [`group`]: quaternion SU(2), exact fixed-point U(1), Haar sampling,
//!   counter-based random streams and the shared [`Tolerance`].
//! * [`centralizer`]: centralizers, orbit types, and a nullspace oracle.
//! * [`canonical`]: standard forms of generic pairs, conjugation witnesses,
//!   pivot-based canonical forms of k-tuples and the k = 2 quotient chart.
//! * [`lattice`]: graphs with a base vertex, connections, gauge transforms,
//!   fundamental loop systems, stabilizers and normalizers.
//! * [`lab`]: Monte Carlo and finite-difference experiments that check the
//!   measure, dimension and section-discontinuity statements numerically.

pub mod canonical;
pub mod centralizer;
pub mod error;
pub mod exec;
pub mod group;
pub mod lab;
pub mod lattice;
pub mod vec3;

pub use centralizer::{Centralizer, Classify, OrbitType};
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use group::{Group, GroupKind, GroupTuple, Quat, Tolerance, U1};
