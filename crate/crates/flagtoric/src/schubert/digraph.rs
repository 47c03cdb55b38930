use std::collections::BTreeSet;

use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

/// A simple directed graph on the vertex set `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { n, edges: BTreeSet::new() }
    }

    /// Panics on an endpoint outside `1..=n` or a loop.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Digraph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n && a != b, "bad edge ({a},{b})");
        self.edges.insert((a, b));
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn out_degree(&self, a: usize) -> usize {
        self.edges.range((a, 0)..(a + 1, 0)).count()
    }

    fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((a, 0)..(a + 1, 0)).map(|&(_, b)| b)
    }

    /// Kahn's algorithm.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, b) in &self.edges {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (1..=self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for b in self.successors(v) {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
        seen == self.n
    }

    /// Whether `b` is reachable from `a` without using the edge `(a, b)` itself.
    fn has_detour(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack: Vec<usize> = self.successors(a).filter(|&x| x != b).collect();
        while let Some(v) = stack.pop() {
            if v == b {
                return true;
            }
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(self.successors(v));
        }
        false
    }

    /// Removes every edge that is implied by a longer path. Only meaningful on a DAG, where the
    /// result is unique.
    pub fn transitive_reduction(&self) -> Digraph {
        debug_assert!(self.is_acyclic());
        let keep = self.edges.iter().copied().filter(|&(a, b)| !self.has_detour(a, b));
        Digraph::from_edges(self.n, keep)
    }

    /// The underlying undirected graph has no cycle. Antiparallel pairs count as a 2-cycle.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn num_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    pub fn to_petgraph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a - 1], nodes[b - 1], ());
        }
        g
    }

    pub fn is_isomorphic(&self, other: &Digraph) -> bool {
        self.n == other.n
            && self.num_edges() == other.num_edges()
            && petgraph::algo::is_isomorphic(&self.to_petgraph(), &other.to_petgraph())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_drops_shortcuts() {
        let g = Digraph::from_edges(4, [(1, 2), (2, 3), (1, 3), (3, 4), (1, 4)]);
        assert!(g.is_acyclic());
        assert_eq!(g.transitive_reduction().edge_vec(), vec![(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn cycles_and_forests() {
        let c = Digraph::from_edges(3, [(1, 2), (2, 3), (3, 1)]);
        assert!(!c.is_acyclic());
        assert!(!c.is_forest());
        let diamond = Digraph::from_edges(4, [(3, 1), (3, 2), (4, 1), (4, 2)]);
        assert!(diamond.is_acyclic());
        assert!(!diamond.is_forest());
        assert_eq!(diamond.transitive_reduction(), diamond);
        let f = Digraph::from_edges(5, [(1, 2), (4, 3)]);
        assert!(f.is_forest());
        assert_eq!(f.num_components(), 3);
        assert_eq!(f.out_degree(1), 1);
        assert_eq!(f.out_degree(2), 0);
    }
}
