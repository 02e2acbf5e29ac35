//! Circulation cancelling and path decomposition of per-interval flows.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::model::IntervalFlow;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::rational::Rational;

/// `(tail, head)` of every arc; arc `2e` runs `u → v`, arc `2e + 1` runs `v → u`.
pub(crate) fn arcs(graph: &Graph) -> Vec<(usize, usize)> {
    graph
        .ends
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect()
}

/// A directed cycle of positive-flow arcs, if one exists.
fn find_cycle(node_count: usize, arcs: &[(usize, usize)], flow: &[Rational]) -> Option<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (a, &(u, _)) in arcs.iter().enumerate() {
        if flow[a].is_positive() {
            out[u].push(a);
        }
    }
    // 0 = unvisited, 1 = on the current DFS path, 2 = finished.
    let mut color = vec![0u8; node_count];
    let mut depth = vec![usize::MAX; node_count];
    for root in 0..node_count {
        if color[root] != 0 {
            continue;
        }
        let mut nodes = vec![root];
        let mut next = vec![0usize];
        let mut path: Vec<usize> = Vec::new();
        color[root] = 1;
        depth[root] = 0;
        while let Some(&v) = nodes.last() {
            let top = nodes.len() - 1;
            if next[top] == out[v].len() {
                color[v] = 2;
                nodes.pop();
                next.pop();
                path.pop();
                continue;
            }
            let a = out[v][next[top]];
            next[top] += 1;
            let w = arcs[a].1;
            match color[w] {
                0 => {
                    color[w] = 1;
                    depth[w] = nodes.len();
                    nodes.push(w);
                    next.push(0);
                    path.push(a);
                }
                1 => {
                    let mut cycle = path[depth[w]..].to_vec();
                    cycle.push(a);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Removes all flow on directed cycles, interval by interval.
///
/// Net flow values `f_i` are unchanged and arc flows never increase.
pub fn cancel_circulations(instance: &Instance, flow: &IntervalFlow) -> Result<IntervalFlow> {
    let graph = Graph::new(instance)?;
    let arcs = arcs(&graph);
    let mut out = flow.clone();
    for slice in &mut out.slices {
        if slice.arc_flow.len() != arcs.len() {
            return Err(Error::Internal(String::from("flow does not match the instance")));
        }
        while let Some(cycle) = find_cycle(graph.node_count, &arcs, &slice.arc_flow) {
            let bottleneck = cycle
                .iter()
                .map(|&a| &slice.arc_flow[a])
                .min()
                .cloned()
                .expect("cycles are non-empty");
            for a in cycle {
                slice.arc_flow[a] -= &bottleneck;
            }
        }
    }
    Ok(out)
}

/// A source-to-sink path carrying `value` units of one interval's flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowPath {
    /// Arc indices from source to sink.
    pub arcs: Vec<usize>,
    pub value: Rational,
}

impl FlowPath {
    /// Edge indices along the path.
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().map(|a| a / 2)
    }
}

/// Per interval, paths whose values sum to that interval's `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub paths: Vec<Vec<FlowPath>>,
}

/// Decomposes circulation-free flows into source-to-sink paths.
///
/// Paths are traced by always following the lowest-numbered arc with
/// remaining flow. Fails when flow conservation is violated.
pub fn path_decompose(instance: &Instance, flow: &IntervalFlow) -> Result<PathDecomposition> {
    let graph = Graph::new(instance)?;
    let arcs = arcs(&graph);
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); graph.node_count];
    for (a, &(u, _)) in arcs.iter().enumerate() {
        out_arcs[u].push(a);
    }
    let mut all = Vec::with_capacity(flow.slices.len());
    for (i, slice) in flow.slices.iter().enumerate() {
        let mut rest = slice.arc_flow.clone();
        let mut remaining = slice.value.clone();
        let mut paths = Vec::new();
        while remaining.is_positive() {
            let mut seen = vec![false; graph.node_count];
            let mut v = graph.source;
            seen[v] = true;
            let mut path = Vec::new();
            while v != graph.sink {
                let a = out_arcs[v]
                    .iter()
                    .copied()
                    .find(|&a| rest[a].is_positive())
                    .ok_or_else(|| {
                        Error::Internal(format!("flow of interval {i} is not conserved"))
                    })?;
                v = arcs[a].1;
                if seen[v] {
                    return Err(Error::Internal(format!("flow of interval {i} has a cycle")));
                }
                seen[v] = true;
                path.push(a);
            }
            let mut value = remaining.clone();
            for &a in &path {
                if rest[a] < value {
                    value = rest[a].clone();
                }
            }
            for &a in &path {
                rest[a] -= &value;
            }
            remaining -= &value;
            paths.push(FlowPath { arcs: path, value });
        }
        all.push(paths);
    }
    Ok(PathDecomposition { paths: all })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceBuilder, Preemption::Arbitrary};
    use crate::preemptive::model::FlowSlice;
    use crate::rational::{q, qi};

    /// Diamond s → a → t, s → b → t plus a chord a – b.
    fn diamond() -> Instance {
        InstanceBuilder::new()
            .int_edge("s", "a", 0, 1, 0, Arbitrary)
            .int_edge("a", "t", 0, 1, 0, Arbitrary)
            .int_edge("s", "b", 0, 1, 0, Arbitrary)
            .int_edge("b", "t", 0, 1, 0, Arbitrary)
            .int_edge("a", "b", 0, 1, 0, Arbitrary)
            .build("s", "t")
    }

    fn slice(value: Rational, arc_flow: Vec<Rational>) -> IntervalFlow {
        IntervalFlow {
            slices: vec![FlowSlice {
                value,
                edge_availability: vec![qi(1); arc_flow.len() / 2],
                arc_flow,
            }],
        }
    }

    fn zeros() -> Vec<Rational> {
        vec![qi(0); 10]
    }

    fn net_out(inst: &Instance, flow: &[Rational], node: usize) -> Rational {
        let g = Graph::new(inst).unwrap();
        let mut net = qi(0);
        for (a, &(u, v)) in arcs(&g).iter().enumerate() {
            if u == node {
                net += &flow[a];
            }
            if v == node {
                net -= &flow[a];
            }
        }
        net
    }

    #[test]
    fn acyclic_and_zero_flows_are_unchanged() {
        let inst = diamond();
        let mut x = zeros();
        x[0] = qi(1); // s → a
        x[2] = qi(1); // a → t
        let flow = slice(qi(1), x);
        assert_eq!(cancel_circulations(&inst, &flow).unwrap(), flow);
        let zero = slice(qi(0), zeros());
        assert_eq!(cancel_circulations(&inst, &zero).unwrap(), zero);
        let dec = path_decompose(&inst, &zero).unwrap();
        assert!(dec.paths[0].is_empty());
    }

    #[test]
    fn removes_superimposed_three_cycle() {
        let inst = diamond();
        let mut x = zeros();
        x[0] = q(1, 2); // s → a
        x[2] = q(1, 2); // a → t
        // Cycle s → b → a → s of value 1/4.
        x[4] = q(1, 4); // s → b
        x[9] = q(1, 4); // b → a
        x[1] = q(1, 4); // a → s
        let cleaned = cancel_circulations(&inst, &slice(q(1, 2), x.clone())).unwrap();
        let y = &cleaned.slices[0].arc_flow;
        assert_eq!(cleaned.slices[0].value, q(1, 2));
        assert!(y.iter().zip(&x).all(|(after, before)| after <= before));
        // Either the 2-cycle through s → a → s or the 3-cycle is cancelled;
        // both leave an acyclic flow with the same net flows.
        assert_eq!(y[1], qi(0));
        for node in 0..4 {
            assert_eq!(net_out(&inst, y, node), net_out(&inst, &x, node));
        }
        assert!(find_cycle(4, &arcs(&Graph::new(&inst).unwrap()), y).is_none());
    }

    #[test]
    fn decomposes_single_and_split_paths() {
        let inst = diamond();
        let mut x = zeros();
        x[0] = qi(1);
        x[2] = qi(1);
        let dec = path_decompose(&inst, &slice(qi(1), x)).unwrap();
        assert_eq!(dec.paths[0], [FlowPath { arcs: vec![0, 2], value: qi(1) }]);

        let mut x = zeros();
        x[0] = q(1, 2);
        x[2] = q(1, 2);
        x[4] = q(1, 2);
        x[6] = q(1, 2);
        let dec = path_decompose(&inst, &slice(qi(1), x)).unwrap();
        assert_eq!(
            dec.paths[0],
            [
                FlowPath { arcs: vec![0, 2], value: q(1, 2) },
                FlowPath { arcs: vec![4, 6], value: q(1, 2) },
            ]
        );
    }

    #[test]
    fn broken_conservation_is_an_error() {
        let inst = diamond();
        let mut x = zeros();
        x[0] = qi(1);
        assert!(matches!(
            path_decompose(&inst, &slice(qi(1), x)),
            Err(Error::Internal(_))
        ));
    }
}
