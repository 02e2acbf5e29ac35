use super::*;
use crate::graph::Graph;
use crate::instance::validate;
use crate::objective::Objective::{MaxConnectivity as Max, MinDisconnection as Min};
use crate::oracle::{brute_nonpreemptive, SearchConfig};
use crate::rational::qi;

fn formula(n: usize, clauses: &[[i64; 3]]) -> CnfFormula {
    CnfFormula::from_signed(n, clauses).unwrap()
}

fn all_patterns() -> CnfFormula {
    let clauses: alloc::vec::Vec<[i64; 3]> = (0..8)
        .map(|bits| {
            [
                if bits & 1 == 0 { 1 } else { -1 },
                if bits & 2 == 0 { 2 } else { -2 },
                if bits & 4 == 0 { 3 } else { -3 },
            ]
        })
        .collect();
    formula(3, &clauses)
}

/// `n + 7m + 7` nodes and `7 + 12m + chains + bypasses` edges.
fn expected_counts(f: &CnfFormula) -> (usize, usize) {
    let (n, m) = (f.num_vars(), f.clauses().len());
    let mut chains = 0;
    let mut bypasses = 0;
    for i in 1..=n {
        let pos = !f.occurrences(Literal::pos(i)).is_empty();
        let neg = !f.occurrences(Literal::neg(i)).is_empty();
        chains += pos as usize + neg as usize;
        bypasses += !(pos && neg) as usize;
    }
    (n + 7 * m + 7, 7 + 12 * m + chains + bypasses)
}

#[test]
fn gadget_structure() {
    for f in [formula(3, &[[1, 2, 3]]), formula(4, &[[1, -2, 3], [-1, 2, 4]]), all_patterns()] {
        let inst = gen_3sat_gadget(&f, 0, 1, 2).unwrap();
        assert!(validate(&inst).is_valid());
        let (nodes, edges) = expected_counts(&f);
        assert_eq!(Graph::new(&inst).unwrap().node_count, nodes);
        assert_eq!(inst.edges.len(), edges);
    }
    let inst = gen_3sat_gadget(&formula(3, &[[1, 2, 3]]), 0, 1, 2).unwrap();
    assert_eq!(inst.edges.len(), 25);
    let shape = |id: &str| {
        let e = inst.edge(id).unwrap();
        (e.release.clone(), e.deadline.clone(), e.processing.clone())
    };
    assert_eq!(shape("x1+1"), (qi(0), qi(2), qi(1)));
    assert_eq!(shape("x1+in"), (qi(0), qi(1), qi(1)));
    assert_eq!(shape("C1+x1in"), (qi(1), qi(2), qi(1)));
    assert_eq!(shape("block1"), (qi(0), qi(0), qi(0)));
    assert_eq!(shape("block3"), (qi(2), qi(2), qi(0)));
    assert!(inst.edge("x1bypass").is_some());
}

#[test]
fn gadget_with_spread_slots() {
    let inst = gen_3sat_gadget(&formula(3, &[[1, 2, 3]]), 1, 3, 5).unwrap();
    let e = inst.edge("x2+1").unwrap();
    assert_eq!((e.release.clone(), e.deadline.clone(), e.processing.clone()), (qi(1), qi(4), qi(2)));
    assert_eq!(inst.edge("block2").unwrap().processing, qi(1));
    let res = brute_nonpreemptive(&inst, Max, &SearchConfig::default()).unwrap();
    assert_eq!(res.value, qi(2));
}

#[test]
fn gadget_rejects_bad_slots() {
    let f = formula(3, &[[1, 2, 3]]);
    assert!(gen_3sat_gadget(&f, 1, 1, 3).is_err());
    assert!(gen_3sat_gadget(&f, 0, 2, 2).is_err());
    assert!(gen_3sat_gadget(&f, -1, 1, 2).is_err());
}

#[test]
fn gadget_gap_on_small_formulas() {
    let cfg = SearchConfig::default();
    let sat = gen_3sat_gadget(&formula(3, &[[1, -2, 3], [-1, 2, -3]]), 0, 1, 2).unwrap();
    assert_eq!(brute_nonpreemptive(&sat, Max, &cfg).unwrap().value, qi(2));
    assert_eq!(brute_nonpreemptive(&sat, Min, &cfg).unwrap().value, qi(0));
    let unsat = gen_3sat_gadget(&all_patterns(), 0, 1, 2).unwrap();
    assert_eq!(brute_nonpreemptive(&unsat, Max, &cfg).unwrap().value, qi(1));
    assert_eq!(brute_nonpreemptive(&unsat, Min, &cfg).unwrap().value, qi(1));
}

#[test]
fn grid_structure() {
    assert!(gen_3sat_grid(&CnfFormula::new(1, alloc::vec![]).unwrap()).is_err());
    for f in [CnfFormula::new(2, alloc::vec![]).unwrap(), formula(3, &[[1, 2, -3]])] {
        let n = f.num_vars();
        let inst = gen_3sat_grid(&f).unwrap();
        assert!(validate(&inst).is_valid());
        assert_eq!(inst.horizon, qi(n as i64));
        let gates = n * n - n;
        let (gate_nodes, gate_edges) = expected_counts(&f);
        let hops = n * (2 * n - 1);
        assert_eq!(inst.edges.len(), gates * gate_edges + 2 * hops);
        assert_eq!(Graph::new(&inst).unwrap().node_count, gates * gate_nodes + hops + 2);
        assert!(!inst.has_parallel_edges());
    }
    let inst = gen_3sat_grid(&formula(3, &[[1, 2, -3]])).unwrap();
    // Gate (2, 0): variable slot 2, clause slot 0.
    let e = inst.edge("g2,0:x1+1").unwrap();
    assert_eq!((e.release.clone(), e.deadline.clone(), e.processing.clone()), (qi(0), qi(3), qi(2)));
    assert_eq!(inst.edge("g2,0:x1+in").unwrap().release, qi(0));
    assert_eq!(inst.edge("g2,0:C1+x1in").unwrap().release, qi(2));
    // Label 1 connectors are free during [1, 2] only.
    let a = inst.edge("L1.0a").unwrap();
    let b = inst.edge("L1.0b").unwrap();
    assert_eq!((a.release.clone(), a.deadline.clone()), (qi(0), qi(1)));
    assert_eq!((b.release.clone(), b.deadline.clone()), (qi(2), qi(3)));
}

#[test]
fn grid_without_clauses_is_always_connected() {
    let inst = gen_3sat_grid(&CnfFormula::new(2, alloc::vec![]).unwrap()).unwrap();
    let res = brute_nonpreemptive(&inst, Max, &SearchConfig::default()).unwrap();
    assert_eq!(res.value, qi(2));
}
