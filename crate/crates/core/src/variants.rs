//! Domination criteria: incremental checkers and from-scratch reference checks.
//!
//! Every variant keeps a per-vertex `domcount` and a running count of
//! vertices that currently violate the criterion, so that `is_satisfied` is a
//! single comparison with zero. Adding or removing `v` touches only `N[v]`,
//! except for secure domination where defender counts are refreshed over the
//! distance-3 ball around `v`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::graph::{Graph, NeighborhoodTables, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VariantKind {
    /// Every vertex outside S has a neighbor in S.
    #[serde(rename = "dom")]
    Domination,
    /// Every vertex, including members of S, has a neighbor in S.
    #[serde(rename = "total")]
    TotalDomination,
    /// Every vertex outside S has at least two neighbors in S.
    #[serde(rename = "2dom")]
    TwoDomination,
    /// S dominates, and every outside vertex can be swapped in for some
    /// neighbor in S with the result still dominating.
    #[serde(rename = "secure")]
    SecureDomination,
}

impl VariantKind {
    pub const ALL: [VariantKind; 4] = [
        VariantKind::Domination,
        VariantKind::TotalDomination,
        VariantKind::TwoDomination,
        VariantKind::SecureDomination,
    ];

    /// Short label used on the command line and in result files.
    pub fn short_name(self) -> &'static str {
        match self {
            VariantKind::Domination => "dom",
            VariantKind::TotalDomination => "total",
            VariantKind::TwoDomination => "2dom",
            VariantKind::SecureDomination => "secure",
        }
    }

    /// Whether `graph` admits any set satisfying this criterion. Only total
    /// domination can fail, and only on graphs with an isolated vertex.
    pub fn is_feasible(self, graph: &Graph) -> bool {
        self != VariantKind::TotalDomination || !graph.has_isolated_vertex()
    }

    pub fn check_feasible(self, graph: &Graph) -> Result<(), SolveError> {
        if self.is_feasible(graph) {
            Ok(())
        } else {
            Err(SolveError::Infeasible { kind: self })
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for VariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dom" | "domination" => Ok(VariantKind::Domination),
            "total" | "tdom" | "total-domination" => Ok(VariantKind::TotalDomination),
            "2dom" | "two" | "2-domination" => Ok(VariantKind::TwoDomination),
            "secure" | "sdom" | "secure-domination" => Ok(VariantKind::SecureDomination),
            other => Err(format!(
                "unknown variant '{other}' (expected dom, total, 2dom or secure)"
            )),
        }
    }
}

/// Incremental bookkeeping for one vertex set `S` under one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionState<'g> {
    graph: &'g Graph,
    tables: &'g NeighborhoodTables,
    kind: VariantKind,
    in_set: Vec<bool>,
    set_size: usize,
    /// |S ∩ N(v)| for total domination, |S ∩ N[v]| otherwise.
    domcount: Vec<u32>,
    deficiency: usize,
    /// Neighbors of v able to defend it; zero for members of S. Only
    /// maintained for secure domination.
    defender_count: Vec<u32>,
}

impl<'g> CriterionState<'g> {
    /// State for the empty set. Fails for total domination on a graph with an
    /// isolated vertex.
    pub fn new(
        graph: &'g Graph,
        tables: &'g NeighborhoodTables,
        kind: VariantKind,
    ) -> Result<Self, SolveError> {
        kind.check_feasible(graph)?;
        let n = graph.vertex_count();
        Ok(Self {
            graph,
            tables,
            kind,
            in_set: vec![false; n],
            set_size: 0,
            domcount: vec![0; n],
            deficiency: n,
            defender_count: vec![0; n],
        })
    }

    /// State for an arbitrary starting set.
    pub fn with_set(
        graph: &'g Graph,
        tables: &'g NeighborhoodTables,
        kind: VariantKind,
        set: &[Vertex],
    ) -> Result<Self, SolveError> {
        let mut state = Self::new(graph, tables, kind)?;
        for &v in set {
            if !state.contains(v) {
                state.add_vertex(v);
            }
        }
        Ok(state)
    }

    pub fn kind(&self) -> VariantKind {
        self.kind
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.in_set[v]
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    /// Number of vertices currently violating the criterion.
    pub fn deficiency(&self) -> usize {
        self.deficiency
    }

    pub fn is_satisfied(&self) -> bool {
        self.deficiency == 0
    }

    pub fn domcount(&self, v: Vertex) -> u32 {
        self.domcount[v]
    }

    pub fn defender_count(&self, v: Vertex) -> u32 {
        self.defender_count[v]
    }

    pub fn membership(&self) -> &[bool] {
        &self.in_set
    }

    /// Members of S in increasing order.
    pub fn members(&self) -> Vec<Vertex> {
        self.graph.vertices().filter(|&v| self.in_set[v]).collect()
    }

    /// Adds `v` to S.
    ///
    /// Panics if `v` is already a member.
    pub fn add_vertex(&mut self, v: Vertex) {
        assert!(!self.in_set[v], "vertex {v} is already in the set");
        self.toggle(v, true);
    }

    /// Removes `v` from S. Exact inverse of [`add_vertex`](Self::add_vertex).
    ///
    /// Panics if `v` is not a member.
    pub fn remove_vertex(&mut self, v: Vertex) {
        assert!(self.in_set[v], "vertex {v} is not in the set");
        self.toggle(v, false);
    }

    /// Empties S without reallocating.
    pub fn clear(&mut self) {
        for v in self.graph.vertices() {
            if self.in_set[v] {
                self.remove_vertex(v);
            }
        }
    }

    /// Whether `w ∈ S` can defend `v ∉ S`: every neighbor of `w` stays
    /// dominated once `w` is swapped out for `v`.
    ///
    /// Checks only `w`'s neighborhood. A neighbor `u` of `w` loses its last
    /// dominator exactly when its closed count is 1 and `v` does not cover it.
    /// `w` itself is covered by `v`. Returns `false` for pairs outside the
    /// contract (`w ∉ S`, `v ∈ S`, or `v` not adjacent to `w`).
    pub fn capable_of_defending(&self, w: Vertex, v: Vertex) -> bool {
        self.in_set[w] && !self.in_set[v] && self.graph.is_adjacent(w, v) && self.defends(w, v)
    }

    fn toggle(&mut self, v: Vertex, insert: bool) {
        let tables = self.tables;
        let graph = self.graph;
        let affected = match self.kind {
            VariantKind::SecureDomination => tables.ball3(v),
            _ => tables.closed(v),
        };

        for &u in affected {
            if self.is_deficient(u) {
                self.deficiency -= 1;
            }
        }

        self.in_set[v] = insert;
        if insert {
            self.set_size += 1;
        } else {
            self.set_size -= 1;
        }
        let counted = match self.kind {
            VariantKind::TotalDomination => graph.neighbors(v),
            _ => tables.closed(v),
        };
        for &u in counted {
            if insert {
                self.domcount[u] += 1;
            } else {
                self.domcount[u] -= 1;
            }
        }

        if self.kind == VariantKind::SecureDomination {
            for &u in affected {
                self.defender_count[u] = self.count_defenders(u);
            }
        }

        for &u in affected {
            if self.is_deficient(u) {
                self.deficiency += 1;
            }
        }
    }

    /// Whether `u` currently violates the criterion.
    pub fn is_deficient(&self, u: Vertex) -> bool {
        match self.kind {
            VariantKind::Domination | VariantKind::TotalDomination => self.domcount[u] == 0,
            VariantKind::TwoDomination => !self.in_set[u] && self.domcount[u] <= 1,
            // An undominated vertex has no S-neighbor, hence no defender.
            VariantKind::SecureDomination => !self.in_set[u] && self.defender_count[u] == 0,
        }
    }

    fn closed_count(&self, u: Vertex) -> u32 {
        match self.kind {
            VariantKind::TotalDomination => self.domcount[u] + u32::from(self.in_set[u]),
            _ => self.domcount[u],
        }
    }

    fn count_defenders(&self, u: Vertex) -> u32 {
        if self.in_set[u] {
            return 0;
        }
        self.graph
            .neighbors(u)
            .iter()
            .filter(|&&w| self.in_set[w] && self.defends(w, u))
            .count() as u32
    }

    /// Assumes `w ∈ S ∩ N(v)`.
    fn defends(&self, w: Vertex, v: Vertex) -> bool {
        self.graph
            .neighbors(w)
            .iter()
            .all(|&u| self.closed_count(u) != 1 || u == v || self.graph.is_adjacent(u, v))
    }
}

/// Evaluates the criterion for `set` directly from its definition.
///
/// Used as the reference oracle for [`CriterionState`]. Domination-type checks
/// cost O(n + m); the secure check repeats a full domination test for every
/// candidate swap.
pub fn naive_satisfied(graph: &Graph, kind: VariantKind, set: &[Vertex]) -> bool {
    let mut mask = vec![false; graph.vertex_count()];
    for &v in set {
        mask[v] = true;
    }
    naive_satisfied_mask(graph, kind, &mask)
}

/// [`naive_satisfied`] on a membership mask.
pub fn naive_satisfied_mask(graph: &Graph, kind: VariantKind, in_set: &[bool]) -> bool {
    let set_neighbors = |v: Vertex| graph.neighbors(v).iter().filter(|&&w| in_set[w]).count();
    match kind {
        VariantKind::Domination => is_dominating(graph, in_set),
        VariantKind::TotalDomination => graph.vertices().all(|v| set_neighbors(v) >= 1),
        VariantKind::TwoDomination => graph.vertices().all(|v| in_set[v] || set_neighbors(v) >= 2),
        VariantKind::SecureDomination => {
            if !is_dominating(graph, in_set) {
                return false;
            }
            let mut swapped = in_set.to_vec();
            graph.vertices().filter(|&v| !in_set[v]).all(|v| {
                graph.neighbors(v).iter().any(|&w| {
                    if !in_set[w] {
                        return false;
                    }
                    swapped[w] = false;
                    swapped[v] = true;
                    let ok = is_dominating(graph, &swapped);
                    swapped[w] = true;
                    swapped[v] = false;
                    ok
                })
            })
        }
    }
}

fn is_dominating(graph: &Graph, in_set: &[bool]) -> bool {
    graph
        .vertices()
        .all(|v| in_set[v] || graph.neighbors(v).iter().any(|&w| in_set[w]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use VariantKind::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn empty_set_is_fully_deficient() {
        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let s = CriterionState::new(&g, &t, Domination).unwrap();
        assert_eq!((s.deficiency(), s.set_size()), (3, 0));

        let k4 = complete(4);
        let t4 = NeighborhoodTables::new(&k4);
        let s = CriterionState::new(&k4, &t4, SecureDomination).unwrap();
        assert_eq!(s.deficiency(), 4);
    }

    #[test]
    fn total_domination_rejects_isolated_vertex() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let t = NeighborhoodTables::new(&g);
        assert_eq!(
            CriterionState::new(&g, &t, TotalDomination),
            Err(SolveError::Infeasible {
                kind: TotalDomination
            })
        );
    }

    #[test]
    fn add_vertex_examples() {
        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let mut s = CriterionState::new(&g, &t, Domination).unwrap();
        s.add_vertex(1);
        assert_eq!(s.deficiency(), 0);

        let mut s = CriterionState::new(&g, &t, TwoDomination).unwrap();
        s.add_vertex(1);
        assert_eq!(s.deficiency(), 2);

        let p4 = path(4);
        let t4 = NeighborhoodTables::new(&p4);
        let mut s = CriterionState::new(&p4, &t4, SecureDomination).unwrap();
        s.add_vertex(1);
        assert!(s.deficiency() >= 1);
        assert!(!s.is_satisfied());
    }

    #[test]
    fn remove_vertex_examples() {
        let k4 = complete(4);
        let t4 = NeighborhoodTables::new(&k4);
        let mut s = CriterionState::with_set(&k4, &t4, Domination, &[0, 1]).unwrap();
        s.remove_vertex(1);
        assert!(s.is_satisfied());

        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let mut s = CriterionState::with_set(&g, &t, Domination, &[1]).unwrap();
        s.remove_vertex(1);
        assert_eq!(s.deficiency(), 3);
    }

    #[test]
    fn add_then_remove_restores_state() {
        let g = path(6);
        let t = NeighborhoodTables::new(&g);
        for kind in VariantKind::ALL {
            let original = CriterionState::with_set(&g, &t, kind, &[1, 4]).unwrap();
            let mut s = original.clone();
            s.add_vertex(2);
            s.remove_vertex(2);
            assert_eq!(s, original, "{kind}");
        }
    }

    #[test]
    #[should_panic(expected = "already in the set")]
    fn double_add_panics() {
        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let mut s = CriterionState::new(&g, &t, Domination).unwrap();
        s.add_vertex(0);
        s.add_vertex(0);
    }

    #[test]
    #[should_panic(expected = "not in the set")]
    fn removing_non_member_panics() {
        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let mut s = CriterionState::new(&g, &t, Domination).unwrap();
        s.remove_vertex(2);
    }

    #[test]
    fn secure_satisfaction_on_p3() {
        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let s = CriterionState::with_set(&g, &t, SecureDomination, &[1]).unwrap();
        assert!(!s.is_satisfied());
        let s = CriterionState::with_set(&g, &t, SecureDomination, &[0, 2]).unwrap();
        assert!(s.is_satisfied());
        let s = CriterionState::with_set(&g, &t, Domination, &[1]).unwrap();
        assert!(s.is_satisfied());
    }

    #[test]
    fn defender_examples() {
        let g = path(3);
        let t = NeighborhoodTables::new(&g);
        let s = CriterionState::with_set(&g, &t, SecureDomination, &[0]).unwrap();
        assert!(s.capable_of_defending(0, 1));

        let p4 = path(4);
        let t4 = NeighborhoodTables::new(&p4);
        let s = CriterionState::with_set(&p4, &t4, SecureDomination, &[1]).unwrap();
        assert!(!s.capable_of_defending(1, 2));

        let k4 = complete(4);
        let tk = NeighborhoodTables::new(&k4);
        let s = CriterionState::with_set(&k4, &tk, SecureDomination, &[0]).unwrap();
        assert!(s.capable_of_defending(0, 3));
        // Outside the contract.
        assert!(!s.capable_of_defending(3, 0));
        assert!(!s.capable_of_defending(1, 2));
    }

    #[test]
    fn naive_examples() {
        let g = star(5);
        assert!(naive_satisfied(&g, Domination, &[0]));
        assert!(!naive_satisfied(&g, TwoDomination, &[0]));
        assert!(naive_satisfied(&g, TwoDomination, &[1, 2, 3, 4, 5]));
        assert!(!naive_satisfied(&path(3), SecureDomination, &[1]));
        assert!(naive_satisfied(&path(3), SecureDomination, &[0, 2]));
    }

    #[test]
    fn parses_variant_names() {
        for kind in VariantKind::ALL {
            assert_eq!(kind.short_name().parse::<VariantKind>(), Ok(kind));
        }
        assert!("3dom".parse::<VariantKind>().is_err());
    }
}
