//! Brute-force minimum sets for small graphs.
//!
//! Subsets are enumerated by increasing cardinality and tested with the
//! from-scratch checker, so the first hit is a minimum. Vertices that every
//! satisfying set must contain are fixed up front.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::graph::{Graph, NeighborhoodTables, Vertex};
use crate::sampler::{generate_minimal_set, ProbabilityVector, ScoredSet};
use crate::variants::{naive_satisfied_mask, VariantKind};

/// Default cap on criterion evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub optimum: usize,
    pub witness: Vec<Vertex>,
    /// Subsets tested.
    pub explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactOutcome {
    Optimal(ExactResult),
    /// Budget ran out. Every set smaller than `proven_lower_bound` was ruled
    /// out; `upper_bound` is a valid (heuristic) set.
    Unknown {
        proven_lower_bound: usize,
        upper_bound: ScoredSet,
        explored: u64,
    },
}

impl ExactOutcome {
    pub fn optimum(&self) -> Option<usize> {
        match self {
            ExactOutcome::Optimal(r) => Some(r.optimum),
            ExactOutcome::Unknown { .. } => None,
        }
    }
}

/// Vertices contained in every satisfying set.
///
/// Two-domination: vertices of degree at most one can never have two
/// neighbors in `S`. Total domination: the neighbor of a degree-one vertex is
/// its only possible dominator.
pub fn forced_vertices(graph: &Graph, kind: VariantKind) -> Vec<Vertex> {
    let mut forced = vec![false; graph.vertex_count()];
    match kind {
        VariantKind::TwoDomination => {
            for v in graph.vertices().filter(|&v| graph.degree(v) <= 1) {
                forced[v] = true;
            }
        }
        VariantKind::TotalDomination => {
            for v in graph.vertices().filter(|&v| graph.degree(v) == 1) {
                forced[graph.neighbors(v)[0]] = true;
            }
        }
        _ => {}
    }
    graph.vertices().filter(|&v| forced[v]).collect()
}

/// Minimum set for `kind`, or a bounded answer when `budget` evaluations do
/// not suffice.
pub fn exact_min(
    graph: &Graph,
    kind: VariantKind,
    budget: u64,
) -> Result<ExactOutcome, SolveError> {
    kind.check_feasible(graph)?;
    let n = graph.vertex_count();
    let forced = forced_vertices(graph, kind);
    let mut is_forced = vec![false; n];
    for &v in &forced {
        is_forced[v] = true;
    }
    let free: Vec<Vertex> = graph.vertices().filter(|&v| !is_forced[v]).collect();

    let mut mask = is_forced.clone();
    let mut explored = 0u64;
    for extra in 0..=free.len() {
        let mut combo: Vec<usize> = (0..extra).collect();
        loop {
            if explored >= budget {
                return Ok(unknown(graph, kind, forced.len() + extra, explored));
            }
            explored += 1;
            for &i in &combo {
                mask[free[i]] = true;
            }
            let hit = naive_satisfied_mask(graph, kind, &mask);
            for &i in &combo {
                mask[free[i]] = false;
            }
            if hit {
                let mut witness = forced.clone();
                witness.extend(combo.iter().map(|&i| free[i]));
                witness.sort_unstable();
                return Ok(ExactOutcome::Optimal(ExactResult {
                    optimum: witness.len(),
                    witness,
                    explored,
                }));
            }
            if !next_combination(&mut combo, free.len()) {
                break;
            }
        }
    }
    unreachable!("the full vertex set satisfies every feasible criterion")
}

/// Advances `combo` (strictly increasing indices below `n`) to the next
/// k-subset in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

fn unknown(graph: &Graph, kind: VariantKind, lower: usize, explored: u64) -> ExactOutcome {
    let tables = NeighborhoodTables::new(graph);
    let p = ProbabilityVector::uniform(graph.vertex_count(), 0.5);
    let upper_bound =
        generate_minimal_set(graph, &tables, kind, &p, &mut ChaCha8Rng::seed_from_u64(0))
            .expect("feasibility checked by caller");
    ExactOutcome::Unknown {
        proven_lower_bound: lower,
        upper_bound,
        explored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variants::naive_satisfied;

    #[test]
    fn combinations_enumerate_binomial() {
        for n in 0..8 {
            for k in 0..=n {
                let mut combo: Vec<usize> = (0..k).collect();
                let mut count = 1;
                while next_combination(&mut combo, n) {
                    count += 1;
                }
                let binom = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(count, binom, "C({n},{k})");
            }
        }
    }

    #[test]
    fn path_center() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let out = exact_min(&g, VariantKind::Domination, DEFAULT_BUDGET).unwrap();
        let ExactOutcome::Optimal(r) = out else {
            panic!("expected optimum")
        };
        assert_eq!((r.optimum, r.witness), (1, vec![1]));
    }

    #[test]
    fn forced_vertices_for_star() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(forced_vertices(&g, VariantKind::TwoDomination), [1, 2, 3]);
        assert_eq!(forced_vertices(&g, VariantKind::TotalDomination), [0]);
        assert!(forced_vertices(&g, VariantKind::Domination).is_empty());
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let out = exact_min(&g, VariantKind::Domination, 3).unwrap();
        let ExactOutcome::Unknown {
            proven_lower_bound,
            upper_bound,
            explored,
        } = out
        else {
            panic!("expected budget exhaustion")
        };
        assert_eq!(explored, 3);
        assert!(proven_lower_bound <= 2);
        assert!(naive_satisfied(
            &g,
            VariantKind::Domination,
            &upper_bound.members
        ));
    }

    #[test]
    fn infeasible_total() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(exact_min(&g, VariantKind::TotalDomination, 10).is_err());
    }
}
