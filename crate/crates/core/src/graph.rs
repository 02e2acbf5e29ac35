//! Index-based view of an instance's network.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Nodes and edges of an instance, addressed by position.
#[derive(Clone, Debug)]
pub struct Graph {
    pub node_count: usize,
    pub source: usize,
    pub sink: usize,
    /// Endpoints of edge `e` (same order as `instance.edges`).
    pub ends: Vec<(usize, usize)>,
    /// `adj[v]` lists `(neighbor, edge index)`.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(instance: &Instance) -> Result<Self> {
        let index: BTreeMap<&str, usize> = instance
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Precondition(format!("unknown node `{name}`")))
        };
        let mut ends = Vec::with_capacity(instance.edges.len());
        let mut adj = vec![Vec::new(); instance.nodes.len()];
        for (k, e) in instance.edges.iter().enumerate() {
            let (u, v) = (lookup(&e.u)?, lookup(&e.v)?);
            ends.push((u, v));
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        Ok(Graph {
            node_count: instance.nodes.len(),
            source: lookup(&instance.source)?,
            sink: lookup(&instance.sink)?,
            ends,
            adj,
        })
    }

    /// Whether the terminals are connected using only edges with `available(e)`.
    pub fn connected(&self, available: impl Fn(usize) -> bool) -> bool {
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(v) = stack.pop() {
            if v == self.sink {
                return true;
            }
            for &(w, e) in &self.adj[v] {
                if !seen[w] && available(e) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Edge indices in order from source to sink when the graph is a simple
    /// path whose ends are the terminals (isolated extra nodes are not allowed).
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let m = self.ends.len();
        if m == 0 || self.node_count != m + 1 {
            return None;
        }
        let mut order = Vec::with_capacity(m);
        let mut prev_edge = usize::MAX;
        let mut v = self.source;
        let mut seen = vec![false; self.node_count];
        seen[v] = true;
        while v != self.sink {
            let mut next = None;
            for &(w, e) in &self.adj[v] {
                if e != prev_edge {
                    if next.is_some() {
                        return None;
                    }
                    next = Some((w, e));
                }
            }
            let (w, e) = next?;
            if seen[w] {
                return None;
            }
            seen[w] = true;
            order.push(e);
            prev_edge = e;
            v = w;
        }
        (order.len() == m && self.adj[self.sink].len() == 1).then_some(order)
    }
}

/// Source-to-sink edge order of a path instance, or a precondition error.
pub fn path_edges(instance: &Instance) -> Result<Vec<usize>> {
    Graph::new(instance)?
        .path_order()
        .ok_or_else(|| Error::Precondition(String::from("instance is not a path from source to sink")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceBuilder, Preemption::Arbitrary};

    #[test]
    fn recognizes_paths() {
        let inst = InstanceBuilder::new()
            .int_edge("a", "t", 0, 1, 0, Arbitrary)
            .int_edge("s", "a", 0, 1, 0, Arbitrary)
            .build("s", "t");
        assert_eq!(path_edges(&inst).unwrap(), [1, 0]);
        let g = Graph::new(&inst).unwrap();
        assert!(g.connected(|_| true));
        assert!(!g.connected(|e| e == 0));
    }

    #[test]
    fn rejects_non_paths() {
        let branching = InstanceBuilder::new()
            .int_edge("s", "a", 0, 1, 0, Arbitrary)
            .int_edge("a", "t", 0, 1, 0, Arbitrary)
            .int_edge("a", "b", 0, 1, 0, Arbitrary)
            .build("s", "t");
        assert!(path_edges(&branching).is_err());
        let cycle = InstanceBuilder::new()
            .int_edge("s", "a", 0, 1, 0, Arbitrary)
            .int_edge("a", "t", 0, 1, 0, Arbitrary)
            .int_edge("t", "s", 0, 1, 0, Arbitrary)
            .build("s", "t");
        assert!(path_edges(&cycle).is_err());
        let extended = InstanceBuilder::new()
            .int_edge("s", "a", 0, 1, 0, Arbitrary)
            .int_edge("a", "t", 0, 1, 0, Arbitrary)
            .int_edge("t", "b", 0, 1, 0, Arbitrary)
            .build("s", "t");
        assert!(path_edges(&extended).is_err());
    }
}
