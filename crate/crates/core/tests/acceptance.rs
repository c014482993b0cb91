//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{admissible_sets, check_against_enumeration, check_separator, mask, zero_based, Brute};
use netctrl_core::flow::{build_auxiliary_graph, max_flow, min_cut_source_set, preprocess_direct, AuxNode};
use netctrl_core::generate::{random_system, sparse_system, RandomSpec};
use netctrl_core::numeric::{
    ctrb_rank, instantiate, pointwise_output_ctrb_rank, track_trajectory, transfer_rank, TrajectoryTask,
    ValueRange, DEFAULT_REL_TOL,
};
use netctrl_core::{
    classify_nodes, fixtures, is_functional_output_controllable, is_functional_target_controllable,
    is_structurally_controllable, max_io_linking, minimal_left_separator, solve_mtcp, NodeClass, NumericError,
    StructuredSystem,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($arg)+));
        }
    };
}

fn nine_node_decisions() -> Outcome {
    let sys = fixtures::nine_node_system();
    let run = || {
        (
            max_io_linking(&sys).size,
            is_functional_output_controllable(&sys),
            is_structurally_controllable(&sys).controllable,
        )
    };
    let answer = run();
    check!(answer == (2, true, true), "got (linking, functional, structural) = {answer:?}");
    let best = (0..50)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(run());
            t.elapsed()
        })
        .min()
        .unwrap();
    check!(best < Duration::from_millis(1), "took {best:?}");
    Ok(format!("linking 2, functional and structural controllability hold, {best:?}"))
}

fn target_selection() -> Outcome {
    let sys = fixtures::target_selection_system();
    let g = sys.state_digraph();
    let sep = minimal_left_separator(&g, &zero_based(sys.available()), &zero_based(sys.targets()));
    check!(sep.labelled() == vec![1, 5], "separator {:?}", sep.labelled());

    let classes = classify_nodes(&sys).map_err(|e| e.to_string())?;
    let expected = [
        (1, NodeClass::Essential),
        (2, NodeClass::Useful),
        (3, NodeClass::Useless),
        (4, NodeClass::Useful),
    ];
    check!(classes.iter().eq(expected), "classification {classes:?}");

    let sol = solve_mtcp(&sys);
    let steering = &sol.solution().ok_or("unsolvable")?.steering;
    check!(steering.len() == 2 && steering.contains(&1), "steering {steering:?}");
    let brute = Brute::from_system(&sys);
    let minimal: Vec<u32> = admissible_sets(&brute, mask(zero_based(sys.available())), 2)
        .into_iter()
        .filter(|d| d.count_ones() == 2)
        .collect();
    check!(
        !minimal.is_empty() && minimal.iter().all(|d| d & 1 == 1),
        "x1 missing from some minimum solution"
    );
    Ok(format!(
        "separator {{x1, x5}}, x1 essential, x2/x4 useful, x3 useless, steering {steering:?}, {} minimum solutions all contain x1",
        minimal.len()
    ))
}

fn flow_cut() -> Outcome {
    use AuxNode::*;
    let sys = fixtures::target_selection_system();
    let (a, t) = (zero_based(sys.available()), zero_based(sys.targets()));
    let expected: BTreeSet<AuxNode> = [Source, In(3), Out(3), In(4), In(2), Out(2), In(1), In(0), Out(1)].into();
    let direct = preprocess_direct(&sys.state_digraph(), &a, &t);
    let aux = build_auxiliary_graph(&direct, &a, &t);
    let flow = max_flow(&aux);
    check!(flow.value() == 2, "flow value {}", flow.value());
    let cut = min_cut_source_set(&aux, &flow).map_err(|e| e.to_string())?;
    check!(cut == expected, "cut {cut:?}");
    Ok("flow 2, source side {s, x4-, x4+, x5-, x3-, x3+, x2-, x1-, x2+}".into())
}

fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (1..=n).filter(|v| m >> (v - 1) & 1 == 1).collect())
}

fn chain_with_branch() -> Outcome {
    let sys = fixtures::chain_with_branch_system();
    let seeds = 0..20u64;
    for seed in seeds.clone() {
        let inst = instantiate(&sys, seed, ValueRange::default());
        let r = ctrb_rank(&inst, DEFAULT_REL_TOL);
        check!(r == 3, "controllability rank {r} at seed {seed}");
    }
    for (targets, rank) in [(vec![1, 2, 3], 3), (vec![1, 3, 4], 3), (vec![3, 4], 2)] {
        let t = sys.clone().with_targets(targets.clone()).map_err(|e| e.to_string())?;
        for seed in seeds.clone() {
            let r = pointwise_output_ctrb_rank(&instantiate(&t, seed, ValueRange::default()), DEFAULT_REL_TOL);
            check!(r == rank, "point-wise rank {r} for T={targets:?}, seed {seed}");
        }
    }
    let reachable = sys.state_digraph().reachable_from([0]);
    for targets in nonempty_subsets(4) {
        let t = sys.clone().with_targets(targets.clone()).map_err(|e| e.to_string())?;
        for seed in seeds.clone() {
            let r = transfer_rank(&instantiate(&t, seed, ValueRange::default())).map_err(|e| e.to_string())?;
            check!(r == 1, "transfer rank {r} for T={targets:?}, seed {seed}");
        }
        let verdict = is_functional_target_controllable(&sys, &[1], &targets).map_err(|e| e.to_string())?;
        let expected = targets.len() == 1 && reachable[targets[0] - 1];
        check!(verdict.controllable == expected, "functional verdict wrong for T={targets:?}");
    }
    Ok("ctrb rank 3, point-wise ranks 3/3/2, transfer rank 1 for all 15 target sets, 20 seeds".into())
}

fn genericity() -> Outcome {
    let start = Instant::now();
    let mut trials = 0;
    for k in 0..60u64 {
        let n = 5 + (k as usize * 7) % 26;
        let io = 1 + (k % 4) as usize;
        let spec = RandomSpec::new(n, n + (k as usize * 13) % (2 * n), 0, 0).with_io(io, 1 + (k % 3) as usize);
        let sys = random_system(&spec, 500 + k);
        let structural = max_io_linking(&sys).size;
        for seed in 0..4 {
            let r = transfer_rank(&instantiate(&sys, seed, ValueRange::default())).map_err(|e| e.to_string())?;
            check!(r == structural, "pattern {k} seed {seed}: transfer rank {r}, linking {structural}");
            trials += 1;
        }
    }
    let elapsed = start.elapsed();
    check!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{trials}/{trials} trials agree (n <= 30), {elapsed:.2?}"))
}

fn brute_force_equivalence() -> Outcome {
    let mut count = 0;
    for k in 0..80u64 {
        let n = 4 + (k % 7) as usize;
        let spec = RandomSpec::new(n, n + (k as usize * 5) % (2 * n), 1 + (k % 6) as usize, 1 + (k % 3) as usize);
        let sys = random_system(&spec, 9000 + k);
        check_against_enumeration(&sys)?;
        check_separator(&sys)?;
        count += 1;
    }
    Ok(format!("{count} systems: minimality, labels and separator confirmed by enumeration"))
}

fn large_classification() -> Outcome {
    let sys: StructuredSystem = sparse_system(100_000, 1_000, 10, 7);
    let start = Instant::now();
    let classes = classify_nodes(&sys).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "n=100000, {} edges, {} available: {} essential, {} useful, {} useless in {elapsed:.2?}",
        sys.edges().len(),
        classes.len(),
        classes.with_class(NodeClass::Essential).len(),
        classes.with_class(NodeClass::Useful).len(),
        classes.with_class(NodeClass::Useless).len(),
    ))
}

fn tracking() -> Outcome {
    let inst = instantiate(&fixtures::nine_node_system(), 42, ValueRange::default());
    let mut reports = Vec::new();
    for dt in [0.01, 0.005] {
        let task = TrajectoryTask::default_reference(2, 5.0, dt).map_err(|e| e.to_string())?;
        let done = track_trajectory(&inst, &task).map_err(|e| e.to_string())?;
        reports.push(done.report.unwrap());
    }
    let (coarse, fine) = (reports[0], reports[1]);
    check!(coarse.max_error < 1e-3, "grid error {:e} at dt=0.01", coarse.max_error);
    check!(
        fine.max_error <= coarse.max_error,
        "grid error grew: {:e} -> {:e}",
        coarse.max_error,
        fine.max_error
    );
    let (ci, fi) = (coarse.max_intersample_error.unwrap(), fine.max_intersample_error.unwrap());
    check!(fi <= ci, "intersample error grew: {ci:e} -> {fi:e}");

    let two = fixtures::chain_with_branch_system();
    let inst2 = instantiate(&two, 42, ValueRange::default());
    let task = TrajectoryTask::default_reference(2, 5.0, 0.01).map_err(|e| e.to_string())?;
    match track_trajectory(&inst2, &task) {
        Err(NumericError::NotRightInvertible { rank: 1, outputs: 2 }) => {}
        other => return Err(format!("two-target request not rejected: {:?}", other.map(|t| t.report))),
    }
    Ok(format!(
        "grid error {:.1e} -> {:.1e}, intersample {:.1e} -> {:.1e} (dt 0.01 -> 0.005); two targets rejected",
        coarse.max_error, fine.max_error, ci, fi
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("nine-node linking and controllability", nine_node_decisions),
        ("target selection separator, classes, MTCP", target_selection),
        ("auxiliary flow value and minimum cut", flow_cut),
        ("chain with branch ranks", chain_with_branch),
        ("genericity of transfer rank", genericity),
        ("brute-force equivalence", brute_force_equivalence),
        ("large sparse classification", large_classification),
        ("trajectory tracking", tracking),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("AC{} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
