//! Randomized construction of one minimal criterion-satisfying set.
//!
//! Phase 1 grows `S` by drawing vertices from a working copy of the
//! probability vector, zeroing each drawn entry, until the criterion holds.
//! Phase 2 visits the members of `S` in an order drawn from the complement
//! weights `1 - P_i` and drops every vertex whose removal keeps the criterion
//! satisfied.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::graph::{Graph, NeighborhoodTables, Vertex};
use crate::variants::{CriterionState, VariantKind};

/// Per-vertex selection weights in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, SolveError> {
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(0.0..=1.0).contains(*w))
        {
            return Err(SolveError::InvalidProbability { index, value });
        }
        Ok(Self(weights))
    }

    /// Every entry equal to `value`.
    pub fn uniform(n: usize, value: f64) -> Self {
        assert!((0.0..=1.0).contains(&value));
        Self(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn from_unchecked(weights: Vec<f64>) -> Self {
        debug_assert!(weights.iter().all(|w| (0.0..=1.0).contains(w)));
        Self(weights)
    }
}

/// A vertex set scored by its cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoredSet {
    /// Sorted member list.
    pub members: Vec<Vertex>,
}

impl ScoredSet {
    pub fn new(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        Self { members }
    }

    pub fn score(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Draws index `i` with probability `weights[i] / Σ weights`.
///
/// Returns `None` when no weight is positive.
pub fn weighted_draw<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Option<Vertex> {
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return None;
    }
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = Some(i);
            if target < acc {
                return Some(i);
            }
        }
    }
    last_positive
}

/// Sum tree over non-negative weights: O(log n) updates and draws.
///
/// Internal nodes are recomputed from their children on every update, so the
/// total is exactly zero once every leaf is zero.
#[derive(Clone, Debug)]
pub(crate) struct WeightTree {
    leaves: usize,
    nodes: Vec<f64>,
}

impl WeightTree {
    pub(crate) fn new(n: usize) -> Self {
        let leaves = n.next_power_of_two().max(1);
        Self {
            leaves,
            nodes: vec![0.0; 2 * leaves],
        }
    }

    pub(crate) fn rebuild(&mut self, weights: impl Iterator<Item = f64>) {
        self.nodes.fill(0.0);
        for (i, w) in weights.enumerate() {
            self.nodes[self.leaves + i] = w;
        }
        for idx in (1..self.leaves).rev() {
            self.nodes[idx] = self.nodes[2 * idx] + self.nodes[2 * idx + 1];
        }
    }

    pub(crate) fn total(&self) -> f64 {
        self.nodes[1]
    }

    pub(crate) fn set(&mut self, i: usize, w: f64) {
        let mut idx = self.leaves + i;
        self.nodes[idx] = w;
        while idx > 1 {
            idx /= 2;
            self.nodes[idx] = self.nodes[2 * idx] + self.nodes[2 * idx + 1];
        }
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        let total = self.total();
        if total.is_nan() || total <= 0.0 {
            return None;
        }
        let mut target = rng.gen::<f64>() * total;
        let mut idx = 1;
        while idx < self.leaves {
            let left = self.nodes[2 * idx];
            let right = self.nodes[2 * idx + 1];
            if target < left || right <= 0.0 {
                idx *= 2;
            } else {
                target -= left;
                idx = 2 * idx + 1;
            }
        }
        Some(idx - self.leaves)
    }
}

/// Reusable buffers for repeated sampling on one graph.
#[derive(Clone, Debug)]
pub struct Sampler<'g> {
    state: CriterionState<'g>,
    tree: WeightTree,
    considered: Vec<bool>,
}

impl<'g> Sampler<'g> {
    pub fn new(
        graph: &'g Graph,
        tables: &'g NeighborhoodTables,
        kind: VariantKind,
    ) -> Result<Self, SolveError> {
        let n = graph.vertex_count();
        Ok(Self {
            state: CriterionState::new(graph, tables, kind)?,
            tree: WeightTree::new(n),
            considered: vec![false; n],
        })
    }

    /// Generates one minimal set from `probabilities`.
    pub fn sample<R: Rng + ?Sized>(
        &mut self,
        probabilities: &ProbabilityVector,
        rng: &mut R,
    ) -> ScoredSet {
        let p = probabilities.as_slice();
        assert_eq!(p.len(), self.considered.len(), "probability vector length");
        self.state.clear();

        // Phase 1: weighted growth until the criterion holds.
        self.tree.rebuild(p.iter().copied());
        while !self.state.is_satisfied() {
            let v = match self.tree.draw(rng) {
                Some(v) => v,
                None => self.uniform_non_member(rng),
            };
            self.state.add_vertex(v);
            self.tree.set(v, 0.0);
        }

        // Phase 2: removal order drawn from 1 - P over members of S.
        let members = self.state.members();
        self.tree.rebuild((0..p.len()).map(|i| {
            if self.state.contains(i) {
                1.0 - p[i]
            } else {
                0.0
            }
        }));
        self.considered.fill(false);
        while let Some(v) = self.tree.draw(rng) {
            self.try_remove(v);
            self.considered[v] = true;
            self.tree.set(v, 0.0);
        }
        // Members with P_i = 1 carry no complement weight; they are visited
        // last, in uniform random order.
        let mut rest: Vec<Vertex> = members
            .into_iter()
            .filter(|&v| !self.considered[v])
            .collect();
        while !rest.is_empty() {
            let v = rest.swap_remove(rng.gen_range(0..rest.len()));
            self.try_remove(v);
        }

        ScoredSet::new(self.state.members())
    }

    fn try_remove(&mut self, v: Vertex) {
        self.state.remove_vertex(v);
        if !self.state.is_satisfied() {
            self.state.add_vertex(v);
        }
    }

    fn uniform_non_member<R: Rng + ?Sized>(&self, rng: &mut R) -> Vertex {
        let outside: Vec<Vertex> = self
            .state
            .membership()
            .iter()
            .enumerate()
            .filter(|(_, &inside)| !inside)
            .map(|(v, _)| v)
            .collect();
        // Non-empty: S = V satisfies every feasible criterion.
        outside[rng.gen_range(0..outside.len())]
    }
}

/// One draw of a minimal criterion-satisfying set.
pub fn generate_minimal_set<R: Rng + ?Sized>(
    graph: &Graph,
    tables: &NeighborhoodTables,
    kind: VariantKind,
    probabilities: &ProbabilityVector,
    rng: &mut R,
) -> Result<ScoredSet, SolveError> {
    if probabilities.len() != graph.vertex_count() {
        return Err(SolveError::LengthMismatch {
            expected: graph.vertex_count(),
            got: probabilities.len(),
        });
    }
    let mut sampler = Sampler::new(graph, tables, kind)?;
    Ok(sampler.sample(probabilities, rng))
}
