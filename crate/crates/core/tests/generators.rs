//! Gap properties of the generated families, checked against the exact solvers.

use std::time::Instant;

use netmaint_core::eval::connectivity_profile;
use netmaint_core::gen::{
    disjoint_paths_binary_starts, gen_3sat_grid, gen_disjoint_paths, gen_partition, gen_pop_lower, CnfFormula,
    PartitionInput, PartitionLayout,
};
use netmaint_core::oracle::{brute_force_restricted, brute_mixed, brute_nonpreemptive, SearchConfig};
use netmaint_core::path::{exact_nonpreemptive_path, mixed_two_approx};
use netmaint_core::preemptive::solve_preemptive;
use netmaint_core::rational::qi;
use netmaint_core::{Objective, Preemption};

fn all_patterns(num_vars: usize) -> CnfFormula {
    let clauses: Vec<[i64; 3]> = (0..8)
        .map(|bits| {
            [
                if bits & 1 == 0 { 1 } else { -1 },
                if bits & 2 == 0 { 2 } else { -2 },
                if bits & 4 == 0 { 3 } else { -3 },
            ]
        })
        .collect();
    CnfFormula::from_signed(num_vars, &clauses).unwrap()
}

#[test]
fn pop_lower_preemptive_optimum_is_the_scale() {
    for (levels, scale) in [(1, 1), (1, 5), (2, 2), (2, 4), (3, 6), (4, 12)] {
        let inst = gen_pop_lower(levels, scale, Preemption::Arbitrary).unwrap();
        let sol = solve_preemptive(&inst, Objective::MinDisconnection).unwrap();
        assert_eq!(sol.value, qi(scale as i64), "levels {levels}, scale {scale}");
    }
}

#[test]
fn pop_lower_nonpreemptive_optimum_grows_harmonically() {
    let cfg = SearchConfig::default();
    for (levels, scale) in [(1, 2), (2, 2), (2, 4), (3, 6)] {
        let inst = gen_pop_lower(levels, scale, Preemption::None).unwrap();
        let harmonic: i64 = (1..=levels as i64).map(|i| scale as i64 / i).sum();
        let brute = brute_nonpreemptive(&inst, Objective::MinDisconnection, &cfg).unwrap();
        let exact = exact_nonpreemptive_path(&inst, Objective::MinDisconnection, &cfg).unwrap();
        assert_eq!(brute.value, exact.value);
        assert!(brute.value >= qi(harmonic), "levels {levels}: {} < {harmonic}", brute.value);
    }
    let inst = gen_pop_lower(2, 2, Preemption::None).unwrap();
    let brute = brute_nonpreemptive(&inst, Objective::MinDisconnection, &cfg).unwrap();
    assert_eq!(brute.value, qi(3));
}

#[test]
fn partition_gap_and_mixed_ratio() {
    let cfg = SearchConfig::default();
    for numbers in [vec![1, 1], vec![2, 2], vec![1, 3], vec![1, 1, 2]] {
        let input = PartitionInput::new(numbers.clone()).unwrap();
        let target = qi(PartitionLayout::new(&input).unwrap().target());
        let inst = gen_partition(&input).unwrap();
        let start = Instant::now();
        let opt = brute_mixed(&inst, Objective::MinDisconnection, &cfg).unwrap();
        eprintln!("{numbers:?}: optimum {} in {:?}", opt.value, start.elapsed());
        if input.has_partition() {
            assert_eq!(opt.value, target, "{numbers:?}");
        } else {
            assert!(opt.value > target, "{numbers:?}");
        }
        let approx = mixed_two_approx(&inst, Objective::MinDisconnection, &cfg).unwrap();
        assert!(approx.value >= opt.value);
        assert!(approx.value <= &opt.value * &qi(2));
    }
}

#[test]
fn disjoint_paths_unsatisfiable_formula_disconnects() {
    let f = all_patterns(8);
    let inst = gen_disjoint_paths(&f).unwrap();
    assert_eq!(inst.meta.get("padding").map(String::as_str), Some("0"));
    let starts = disjoint_paths_binary_starts(&f);
    let start = Instant::now();
    let res = brute_force_restricted(&inst, Objective::MinDisconnection, &starts, &SearchConfig::default()).unwrap();
    eprintln!("unsat disjoint paths: {} after {} nodes in {:?}", res.value, res.nodes, start.elapsed());
    assert!(res.value > qi(0));
}

#[test]
fn grid_with_a_satisfiable_formula_is_connected_throughout() {
    let f = CnfFormula::from_signed(3, &[[1, 2, -3]]).unwrap();
    let inst = gen_3sat_grid(&f).unwrap();
    let start = Instant::now();
    let res = brute_nonpreemptive(&inst, Objective::MaxConnectivity, &SearchConfig::default()).unwrap();
    eprintln!("grid: {} after {} nodes in {:?}", res.value, res.nodes, start.elapsed());
    assert_eq!(res.value, qi(3));
    let profile = connectivity_profile(&inst, &res.schedule).unwrap();
    assert_eq!(&profile.connected_time + &profile.disconnected_time, inst.horizon);
}

