//! Directed graphs on sets of primes and their set algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Vertices are primes; edges are ordered pairs of vertices, loops allowed.
///
/// Equality compares vertex sets as well as edge sets, so isolated vertices matter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PrimeDigraph {
    vertices: BTreeSet<u64>,
    edges: BTreeSet<(u64, u64)>,
}

impl PrimeDigraph {
    /// Edgeless graph on `vertices`.
    pub fn edgeless(vertices: impl IntoIterator<Item = u64>) -> Self {
        PrimeDigraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    /// Panics if an edge endpoint is not a vertex.
    pub fn new(
        vertices: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let mut g = Self::edgeless(vertices);
        for (p, q) in edges {
            g.add_edge(p, q);
        }
        g
    }

    /// The loop set `{(p, p) | p ∈ vertices}`.
    pub fn loops(vertices: impl IntoIterator<Item = u64>) -> Self {
        let vertices: BTreeSet<u64> = vertices.into_iter().collect();
        let edges = vertices.iter().map(|&p| (p, p)).collect();
        PrimeDigraph { vertices, edges }
    }

    pub fn add_edge(&mut self, p: u64, q: u64) {
        assert!(
            self.vertices.contains(&p) && self.vertices.contains(&q),
            "edge ({p},{q}) has an endpoint outside the vertex set"
        );
        self.edges.insert((p, q));
    }

    pub fn vertices(&self) -> &BTreeSet<u64> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(u64, u64)> {
        &self.edges
    }

    pub fn has_edge(&self, p: u64, q: u64) -> bool {
        self.edges.contains(&(p, q))
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(p, q)| p == q)
    }

    pub fn union(&self, other: &PrimeDigraph) -> PrimeDigraph {
        PrimeDigraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn union_all<'a>(graphs: impl IntoIterator<Item = &'a PrimeDigraph>) -> PrimeDigraph {
        graphs
            .into_iter()
            .fold(PrimeDigraph::default(), |acc, g| acc.union(g))
    }

    pub fn is_subgraph(&self, other: &PrimeDigraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Edges of `self` missing from `other`, ascending.
    pub fn edges_missing_from(&self, other: &PrimeDigraph) -> Vec<(u64, u64)> {
        self.edges.difference(&other.edges).copied().collect()
    }

    /// Vertices of `self` missing from `other`, ascending.
    pub fn vertices_missing_from(&self, other: &PrimeDigraph) -> Vec<u64> {
        self.vertices.difference(&other.vertices).copied().collect()
    }

    /// Induced subgraph on `self.vertices ∩ vs`.
    pub fn induced(&self, vs: &BTreeSet<u64>) -> PrimeDigraph {
        let vertices: BTreeSet<u64> = self.vertices.intersection(vs).copied().collect();
        let edges = self
            .edges
            .iter()
            .filter(|(p, q)| vertices.contains(p) && vertices.contains(q))
            .copied()
            .collect();
        PrimeDigraph { vertices, edges }
    }

    /// Symmetric closure of the edge set; loops are kept.
    pub fn undirected(&self) -> PrimeDigraph {
        let edges = self
            .edges
            .iter()
            .flat_map(|&(p, q)| [(p, q), (q, p)])
            .collect();
        PrimeDigraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// True iff there is a directed cycle; a loop is a cycle of length one.
    pub fn has_cycle(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut marks: BTreeMap<u64, Mark> = self.vertices.iter().map(|&v| (v, Mark::New)).collect();
        fn visit(g: &PrimeDigraph, v: u64, marks: &mut BTreeMap<u64, Mark>) -> bool {
            marks.insert(v, Mark::Active);
            for &(_, w) in g.edges.range((v, 0)..=(v, u64::MAX)) {
                match marks[&w] {
                    Mark::Active => return true,
                    Mark::New => {
                        if visit(g, w, marks) {
                            return true;
                        }
                    }
                    Mark::Done => {}
                }
            }
            marks.insert(v, Mark::Done);
            false
        }
        for &v in &self.vertices {
            if marks[&v] == Mark::New && visit(self, v, &mut marks) {
                return true;
            }
        }
        false
    }

    /// Vertex sets of the connected components of the undirected shadow,
    /// each ascending, ordered by least vertex.
    pub fn weak_components(&self) -> Vec<BTreeSet<u64>> {
        let mut comp: BTreeMap<u64, usize> = BTreeMap::new();
        let mut out: Vec<BTreeSet<u64>> = Vec::new();
        let und = self.undirected();
        for &start in &self.vertices {
            if comp.contains_key(&start) {
                continue;
            }
            let id = out.len();
            let mut members = BTreeSet::new();
            let mut stack = vec![start];
            comp.insert(start, id);
            while let Some(v) = stack.pop() {
                members.insert(v);
                for &(_, w) in und.edges.range((v, 0)..=(v, u64::MAX)) {
                    if !comp.contains_key(&w) {
                        comp.insert(w, id);
                        stack.push(w);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Graphviz digraph with vertices and edges in ascending order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for (p, q) in &self.edges {
            s.push_str(&format!("  \"{p}\" -> \"{q}\";\n"));
        }
        s.push_str("}\n");
        s
    }

    /// `{"vertices": [..], "edges": [[p, q], ..]}` in ascending order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(p, q)| [p, q]).collect::<Vec<_>>(),
        })
    }
}

/// `V: p1 p2 … ; E: (p,q) …`
impl fmt::Display for PrimeDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V:")?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        write!(f, " ; E:")?;
        for (p, q) in &self.edges {
            write!(f, " ({p},{q})")?;
        }
        Ok(())
    }
}

fn divides_pred(q: u64, p: u64) -> bool {
    p > 1 && (p - 1) % q == 0
}

/// `Γ(𝔘)` restricted to `vs`: edges `(p, q)` with `q | p − 1`.
pub fn gamma_supersoluble(vs: &BTreeSet<u64>) -> PrimeDigraph {
    let mut g = PrimeDigraph::edgeless(vs.iter().copied());
    for &p in vs {
        for &q in vs {
            if divides_pred(q, p) {
                g.add_edge(p, q);
            }
        }
    }
    g
}

/// `Γ(A, B)`: edges `(p, q)` with `p ∈ π(A)`, `q ∈ π(B) ∩ π(p−1)`, or the
/// same with `A` and `B` swapped.
pub fn gamma_mut(pi_a: &BTreeSet<u64>, pi_b: &BTreeSet<u64>) -> PrimeDigraph {
    let mut g = PrimeDigraph::edgeless(pi_a.union(pi_b).copied());
    for (from, to) in [(pi_a, pi_b), (pi_b, pi_a)] {
        for &p in from {
            for &q in to {
                if divides_pred(q, p) {
                    g.add_edge(p, q);
                }
            }
        }
    }
    g
}
