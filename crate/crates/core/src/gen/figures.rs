//! Small fixed instances that separate the preemption regimes.

use crate::instance::{Instance, InstanceBuilder, Preemption};

/// Six nodes, eight unit jobs with windows `(0,2)` or `(1,2)` or `(0,1)`.
///
/// With arbitrary preemption the terminals can stay connected for the whole
/// horizon `T = 2`; with preemption only at integer times, for one unit.
pub fn gen_fig1(preemption: Preemption) -> Instance {
    let mut b = InstanceBuilder::new();
    for n in ["s+", "v2", "v3", "v4", "v5", "s-"] {
        b.node(n);
    }
    for (u, v, r, d) in [
        ("s+", "v2", 0, 2),
        ("s+", "v3", 0, 2),
        ("v2", "v4", 1, 2),
        ("v2", "v5", 0, 1),
        ("v3", "v4", 0, 1),
        ("v3", "v5", 1, 2),
        ("v4", "s-", 0, 2),
        ("v5", "s-", 0, 2),
    ] {
        b.int_edge(u, v, r, d, 1, preemption);
    }
    b.meta("family", "fig1");
    b.build("s+", "s-")
}

/// A four-edge path on which every non-preemptive schedule disconnects the
/// terminals for the whole horizon `T = 4`, while a preemptive schedule keeps
/// them connected for one unit.
pub fn gen_unbounded_pop(preemption: Preemption) -> Instance {
    let mut b = InstanceBuilder::new();
    b.int_edge("s+", "v1", 0, 1, 1, preemption)
        .int_edge("v1", "v2", 0, 3, 2, preemption)
        .int_edge("v2", "v3", 1, 4, 2, preemption)
        .int_edge("v3", "s-", 3, 4, 1, preemption)
        .meta("family", "unbounded-pop");
    b.build("s+", "s-")
}
