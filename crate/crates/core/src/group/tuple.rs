use serde::{Deserialize, Serialize};

use super::Group;

/// An ordered tuple `(g₁, …, g_k)` of elements from one group backend.
///
/// The empty tuple is allowed: it is the reduction of a connection on a
/// tree, which has no loops.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupTuple<G>(Vec<G>);

impl<G: Group> GroupTuple<G> {
    pub fn new(elements: Vec<G>) -> Self {
        Self(elements)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> &[G] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<G> {
        self.0
    }

    pub fn get(&self, i: usize) -> Option<&G> {
        self.0.get(i)
    }

    /// Simultaneous conjugation `t ∘ g = (g⁻¹ t₁ g, …, g⁻¹ t_k g)`.
    pub fn conjugate(&self, g: &G) -> Self {
        Self(self.0.iter().map(|t| t.conjugate(g)).collect())
    }

    /// Largest componentwise distance; infinite if the lengths differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.distance(b)).fold(0.0, f64::max)
    }

    pub fn appended(&self, g: G) -> Self {
        let mut v = self.0.clone();
        v.push(g);
        Self(v)
    }

    pub fn sample_haar<R: rand::Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        Self((0..k).map(|_| G::sample_haar(rng)).collect())
    }
}

impl<G> std::ops::Index<usize> for GroupTuple<G> {
    type Output = G;

    fn index(&self, i: usize) -> &G {
        &self.0[i]
    }
}

impl<G: Group> FromIterator<G> for GroupTuple<G> {
    fn from_iter<I: IntoIterator<Item = G>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}
