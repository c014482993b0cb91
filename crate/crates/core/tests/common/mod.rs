//! Exhaustive oracles for small systems (n <= 10). They share no code with
//! the flow-based algorithms under test.

#![allow(dead_code)]

use netctrl_core::{classify_nodes, solve_mtcp_with, ControlError, MtcpOutcome, NodeClass, StartPreference, StructuredSystem};
use proptest::prelude::*;

macro_rules! ensure {
    ($cond:expr) => {
        if !$cond {
            return Err(format!("check failed: {}", stringify!($cond)));
        }
    };
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($a), a, b));
        }
    }};
}

/// Small graph as 0-based successor bitmasks.
pub struct Brute {
    pub n: usize,
    pub succ: Vec<u32>,
    pub pred: Vec<u32>,
    pub targets: u32,
    /// `reach[x]`: vertices outside `x` that reach `targets \ x` in `g - x`.
    reach: Vec<u32>,
}

pub fn mask(nodes: impl IntoIterator<Item = usize>) -> u32 {
    nodes.into_iter().fold(0, |m, v| m | 1 << v)
}

pub fn members(m: u32) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

impl Brute {
    /// `edges` and `targets` are 0-based.
    pub fn new(n: usize, edges: &[(usize, usize)], targets: &[usize]) -> Self {
        assert!(n <= 12);
        let mut succ = vec![0u32; n];
        let mut pred = vec![0u32; n];
        for &(u, v) in edges {
            succ[u] |= 1 << v;
            pred[v] |= 1 << u;
        }
        let targets = mask(targets.iter().copied());
        let full = (1u32 << n) - 1;
        let reach = (0..=full)
            .map(|x| {
                let alive = full & !x;
                let mut seen = targets & alive;
                let mut frontier = seen;
                while frontier != 0 {
                    let mut next = 0;
                    for v in members(frontier) {
                        next |= pred[v] & alive & !seen;
                    }
                    seen |= next;
                    frontier = next;
                }
                seen
            })
            .collect();
        Brute {
            n,
            succ,
            pred,
            targets,
            reach,
        }
    }

    pub fn from_system(sys: &StructuredSystem) -> Self {
        let edges: Vec<_> = sys.edges().iter().map(|&(i, j)| (i - 1, j - 1)).collect();
        let targets: Vec<_> = sys.targets().iter().map(|t| t - 1).collect();
        Brute::new(sys.n(), &edges, &targets)
    }

    /// Whether `x` meets every path from `d` to the targets.
    pub fn separates(&self, x: u32, d: u32) -> bool {
        d & !x & self.reach[x as usize] == 0
    }

    /// Maximum number of vertex-disjoint paths from `d` to the targets, as
    /// the minimum size of a separating vertex set.
    pub fn rank(&self, d: u32) -> usize {
        (0..self.reach.len() as u32)
            .filter(|&x| self.separates(x, d))
            .map(|x| x.count_ones() as usize)
            .min()
            .expect("the full vertex set always separates")
    }

    /// All separators of minimum size between `d` and the targets.
    pub fn minimum_separators(&self, d: u32) -> Vec<u32> {
        let best = self.rank(d) as u32;
        (0..self.reach.len() as u32)
            .filter(|&x| x.count_ones() == best && self.separates(x, d))
            .collect()
    }

    /// Every simple path whose only available vertex is its first and whose
    /// only target vertex is its last.
    pub fn direct_paths(&self, available: u32) -> Vec<Vec<usize>> {
        fn extend(b: &Brute, available: u32, path: &mut Vec<usize>, used: u32, out: &mut Vec<Vec<usize>>) {
            let v = *path.last().unwrap();
            if b.targets >> v & 1 == 1 {
                out.push(path.clone());
                return;
            }
            for w in members(b.succ[v] & !used & !available) {
                path.push(w);
                extend(b, available, path, used | 1 << w, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        for a in members(available) {
            extend(self, available, &mut vec![a], 1 << a, &mut out);
        }
        out
    }

    pub fn reaches_targets(&self, v: usize) -> bool {
        self.reach[0] >> v & 1 == 1
    }
}

/// Subsets of `available` (a mask) with full rank, i.e. admissible steering sets.
pub fn admissible_sets(b: &Brute, available: u32, required: usize) -> Vec<u32> {
    let nodes = members(available);
    (0..1u32 << nodes.len())
        .map(|bits| mask(members(bits).into_iter().map(|i| nodes[i])))
        .filter(|&d| b.rank(d) == required)
        .collect()
}

/// Checks that `paths` (1-based labels) form a linking from `available` to
/// `targets` in `sys` whose paths are simple, direct and disjoint.
pub fn assert_direct_linking(sys: &StructuredSystem, available: &[usize], targets: &[usize], paths: &[Vec<usize>]) {
    let mut used = std::collections::BTreeSet::new();
    for p in paths {
        assert!(!p.is_empty());
        assert!(available.contains(&p[0]), "path {p:?} must start in A");
        assert!(targets.contains(p.last().unwrap()), "path {p:?} must end in T");
        for (k, v) in p.iter().enumerate() {
            assert!(used.insert(*v), "vertex {v} reused in {paths:?}");
            if k > 0 {
                assert!(!available.contains(v), "path {p:?} passes an available vertex");
            }
            if k + 1 < p.len() {
                assert!(!targets.contains(v), "path {p:?} passes a target early");
            }
        }
        for w in p.windows(2) {
            assert!(sys.edges().contains(&(w[0], w[1])), "edge {w:?} missing");
        }
    }
}

/// Random small systems: up to `max_n` states, edge density up to about
/// `3n`, nonempty available set of at most 6 nodes and 1..=3 targets.
pub fn small_system(max_n: usize) -> impl Strategy<Value = StructuredSystem> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((1..=n, 1..=n), 0..=3 * n),
                prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..=n.min(6)),
                prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 1..=n.min(3)),
            )
        })
        .prop_map(|(n, edges, a, t)| StructuredSystem::new(n, edges, a, t).unwrap())
}

pub fn zero_based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|v| v - 1).collect()
}

/// Checks `solve_mtcp` (both preferences) and `classify_nodes` against the
/// definitions, by enumerating every subset of the available nodes.
pub fn check_against_enumeration(sys: &StructuredSystem) -> Result<(), String> {
    enumeration_check(sys).map_err(|e| format!("{e} for {sys:?}"))
}

fn enumeration_check(sys: &StructuredSystem) -> Result<(), String> {
    let brute = Brute::from_system(sys);
    let available = mask(zero_based(sys.available()));
    let p = sys.targets().len();
    let achievable = brute.rank(available);
    let admissible = admissible_sets(&brute, available, p);

    for preference in [StartPreference::Canonical, StartPreference::LowestIndex] {
        match solve_mtcp_with(sys, preference) {
            MtcpOutcome::Unsolvable { achieved, required } => {
                ensure_eq!(achieved, achievable);
                ensure_eq!(required, p);
                ensure!(admissible.is_empty());
            }
            MtcpOutcome::Solved(sol) => {
                let d = mask(zero_based(&sol.steering));
                ensure_eq!(sol.steering.len(), p);
                ensure!(admissible.contains(&d));
                let smallest = admissible.iter().map(|s| s.count_ones() as usize).min().unwrap();
                ensure_eq!(smallest, p);
                if preference == StartPreference::LowestIndex {
                    let lexmin = admissible
                        .iter()
                        .filter(|s| s.count_ones() as usize == p)
                        .map(|&s| members(s))
                        .min()
                        .unwrap();
                    ensure_eq!(zero_based(&sol.steering), lexmin);
                }
            }
        }
    }

    match classify_nodes(sys) {
        Err(ControlError::Unsolvable { achieved, .. }) => {
            ensure!(admissible.is_empty());
            ensure_eq!(achieved, achievable);
        }
        Err(e) => return Err(e.to_string()),
        Ok(classes) => {
            ensure_eq!(classes.len(), sys.available().len());
            for (v, class) in classes.iter() {
                let bit = 1u32 << (v - 1);
                let essential = admissible.iter().all(|d| d & bit != 0);
                let useless = admissible
                    .iter()
                    .filter(|d| *d & bit != 0)
                    .all(|d| brute.rank(d & !bit) == p);
                let expected = if essential {
                    NodeClass::Essential
                } else if useless {
                    NodeClass::Useless
                } else {
                    NodeClass::Useful
                };
                ensure_eq!((v, class), (v, expected));
                ensure_eq!(class == NodeClass::Useless, !brute.reaches_targets(v - 1));
            }
            for preference in [StartPreference::Canonical, StartPreference::LowestIndex] {
                let sol = solve_mtcp_with(sys, preference);
                let steering = &sol.solution().unwrap().steering;
                for v in classes.with_class(NodeClass::Essential) {
                    ensure!(steering.contains(&v));
                }
            }
        }
    }
    Ok(())
}


/// The computed minimal left separator separates and has minimum size.
pub fn check_separator(sys: &StructuredSystem) -> Result<(), String> {
    let brute = Brute::from_system(sys);
    let available = mask(zero_based(sys.available()));
    let sep = netctrl_core::minimal_left_separator(
        &sys.state_digraph(),
        &zero_based(sys.available()),
        &zero_based(sys.targets()),
    );
    let sep_mask = mask(sep.nodes().iter().copied());
    ensure!(brute.separates(sep_mask, available), "{sep:?} does not separate in {sys:?}");
    ensure_eq!(sep.len(), brute.rank(available));
    Ok(())
}
