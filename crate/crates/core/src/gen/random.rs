//! Seeded random instances for test corpora.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceBuilder, Preemption};

/// Parameters of [`gen_random`].
#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    /// Number of nodes including both terminals; at least 2.
    pub node_count: usize,
    /// Probability that a node pair off the spanning path gets an edge.
    pub edge_density: f64,
    /// Deadlines are drawn from `1..=max_window`.
    pub max_window: i64,
    /// Processing times are drawn from `0..=min(window, max_processing)`.
    pub max_processing: i64,
    /// Relative weights of arbitrary, integral-only and non-preemptable jobs.
    pub preemption_mix: [u32; 3],
    /// Upper bound on the number of extra edges beyond the spanning path,
    /// counted together with the path (the path itself is always kept).
    pub max_edges: Option<usize>,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            node_count: 4,
            edge_density: 0.3,
            max_window: 8,
            max_processing: 3,
            preemption_mix: [1, 0, 0],
            max_edges: None,
        }
    }
}

/// A reproducible random instance with integer data.
///
/// Nodes `s`, `v1`, ..., `t` are strung along a spanning path so the bare
/// graph always connects the terminals; every other node pair is added with
/// probability `edge_density`. The graph is simple.
pub fn gen_random(seed: u64, params: &RandomParams) -> Result<Instance> {
    if params.node_count < 2 {
        return Err(Error::Generator(String::from("need at least two nodes")));
    }
    if params.max_window < 1 || params.max_processing < 0 {
        return Err(Error::Generator(String::from(
            "max_window must be positive and max_processing non-negative",
        )));
    }
    if !(0.0..=1.0).contains(&params.edge_density) {
        return Err(Error::Generator(String::from("edge_density must lie in [0, 1]")));
    }
    let weight_total: u32 = params.preemption_mix.iter().sum();
    if weight_total == 0 {
        return Err(Error::Generator(String::from("preemption_mix has no positive weight")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.node_count;
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => String::from("s"),
            i if i == n - 1 => String::from("t"),
            i => format!("v{i}"),
        })
        .collect();
    let mut inner: Vec<usize> = (1..n - 1).collect();
    inner.shuffle(&mut rng);
    let mut order = Vec::with_capacity(n);
    order.push(0);
    order.extend(inner);
    order.push(n - 1);

    let mut pairs: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    let on_path = |a: usize, b: usize, pairs: &[(usize, usize)]| {
        pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    };
    let mut extra = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !on_path(a, b, &pairs) && rng.random_bool(params.edge_density) {
                extra.push((a, b));
            }
        }
    }
    extra.shuffle(&mut rng);
    if let Some(cap) = params.max_edges {
        extra.truncate(cap.saturating_sub(pairs.len()));
    }
    pairs.extend(extra);

    let mut b = InstanceBuilder::new();
    for name in &names {
        b.node(name.clone());
    }
    for (u, v) in pairs {
        let release = rng.random_range(0..params.max_window);
        let deadline = rng.random_range(release + 1..=params.max_window);
        let processing = rng.random_range(0..=(deadline - release).min(params.max_processing));
        let mut pick = rng.random_range(0..weight_total);
        let mut mode = Preemption::Arbitrary;
        for (w, m) in params.preemption_mix.iter().zip([
            Preemption::Arbitrary,
            Preemption::IntegralOnly,
            Preemption::None,
        ]) {
            if pick < *w {
                mode = m;
                break;
            }
            pick -= w;
        }
        b.int_edge(names[u].clone(), names[v].clone(), release, deadline, processing, mode);
    }
    b.meta("family", "random").meta("seed", format!("{seed}"));
    Ok(b.build("s", "t"))
}
