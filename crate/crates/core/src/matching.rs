//! Maximum bipartite matching (Hopcroft–Karp). The size of a maximum
//! matching in the row/column bipartite graph of a sparsity pattern is the
//! generic rank of the corresponding structured matrix.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `left_match[l]` is the right vertex matched to `l`.
    pub left_match: Vec<Option<usize>>,
    pub right_match: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_match.iter().filter(|m| m.is_some()).count()
    }
}

/// `adj[l]` lists the right vertices adjacent to left vertex `l`; right
/// vertices are `0..right_count`.
pub fn maximum_matching(adj: &[Vec<usize>], right_count: usize) -> Matching {
    let left_count = adj.len();
    let mut match_l = vec![FREE; left_count];
    let mut match_r = vec![FREE; right_count];
    let mut dist = vec![0usize; left_count];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left_count {
            if match_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_r[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; left_count];
        for l in 0..left_count {
            if match_l[l] == FREE {
                augment(l, adj, &mut match_l, &mut match_r, &mut dist, &mut it);
            }
        }
    }

    Matching {
        left_match: match_l.into_iter().map(|r| (r != FREE).then_some(r)).collect(),
        right_match: match_r.into_iter().map(|l| (l != FREE).then_some(l)).collect(),
    }
}

// Iterative DFS along the BFS layers.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&l) = stack.last() {
        if it[l] < adj[l].len() {
            let r = adj[l][it[l]];
            it[l] += 1;
            let next = match_r[r];
            if next == FREE {
                // flip the alternating path held on the stack
                let mut r = r;
                while let Some(l) = stack.pop() {
                    let prev = match_l[l];
                    match_l[l] = r;
                    match_r[r] = l;
                    r = prev;
                }
                return true;
            }
            if dist[next] == dist[l] + 1 {
                stack.push(next);
            }
        } else {
            dist[l] = usize::MAX;
            stack.pop();
        }
    }
    false
}
