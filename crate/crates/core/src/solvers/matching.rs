//! Bipartite matchings that must cover prescribed vertices.
//!
//! Modeled as a unit-capacity circulation with lower bounds on the source
//! and sink arcs of required vertices, reduced to a max-flow from a super
//! source and solved with Dinic's algorithm.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub(crate) fn new(n: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); n], level: vec![0; n], iter: vec![0; n] }
    }

    /// Adds `u -> v` and returns its position in `u`'s adjacency list.
    pub(crate) fn add_arc(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let (ru, rv) = (self.adj[v].len() + usize::from(u == v), self.adj[u].len());
        self.adj[u].push(Arc { to: v, cap, rev: ru });
        self.adj[v].push(Arc { to: u, cap: 0, rev: rv });
        rv
    }

    pub(crate) fn residual(&self, u: usize, idx: usize) -> u32 {
        self.adj[u][idx].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for a in &self.adj[u] {
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[u] + 1;
                    q.push_back(a.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, f: u32) -> u32 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.adj[u].len() {
            let i = self.iter[u];
            let Arc { to, cap, rev } = self.adj[u][i];
            if cap > 0 && self.level[u] < self.level[to] {
                let d = self.dfs(to, t, f.min(cap));
                if d > 0 {
                    self.adj[u][i].cap -= d;
                    self.adj[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0u64;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u32::MAX);
                if f == 0 {
                    break;
                }
                flow += f as u64;
            }
        }
    }
}

/// A matching of the bipartite graph `left × right` with edge list `edges`
/// that covers every vertex flagged in `required_left` and `required_right`,
/// or `None` if no such matching exists. Returned as `(left, right)` pairs.
pub fn saturating_matching(
    left: usize,
    right: usize,
    edges: &[(usize, usize)],
    required_left: &[bool],
    required_right: &[bool],
) -> Option<Vec<(usize, usize)>> {
    debug_assert_eq!(required_left.len(), left);
    debug_assert_eq!(required_right.len(), right);
    // nodes: s, t, left, right, super source, super sink
    let s = 0;
    let t = 1;
    let l0 = 2;
    let r0 = l0 + left;
    let ss = r0 + right;
    let tt = ss + 1;
    let mut g = FlowNetwork::new(tt + 1);
    let mut demand = 0u64;
    // an arc u -> v with lower bound 1 and capacity 1 becomes ss -> v and u -> tt
    let mut lower = |g: &mut FlowNetwork, u: usize, v: usize| {
        g.add_arc(ss, v, 1);
        g.add_arc(u, tt, 1);
        demand += 1;
    };
    for (i, &req) in required_left.iter().enumerate().take(left) {
        if req {
            lower(&mut g, s, l0 + i);
        } else {
            g.add_arc(s, l0 + i, 1);
        }
    }
    for (j, &req) in required_right.iter().enumerate().take(right) {
        if req {
            lower(&mut g, r0 + j, t);
        } else {
            g.add_arc(r0 + j, t, 1);
        }
    }
    let edge_idx: Vec<(usize, usize, usize)> = edges.iter().map(|&(i, j)| (i, j, g.add_arc(l0 + i, r0 + j, 1))).collect();
    g.add_arc(t, s, u32::MAX);
    if g.max_flow(ss, tt) != demand {
        return None;
    }
    let mut m: Vec<(usize, usize)> = edge_idx.into_iter().filter(|&(i, _, idx)| g.residual(l0 + i, idx) == 0).map(|(i, j, _)| (i, j)).collect();
    m.sort_unstable();
    m.dedup();
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_valid(m: &[(usize, usize)], edges: &[(usize, usize)], rl: &[bool], rr: &[bool]) -> bool {
        let mut ul = vec![false; rl.len()];
        let mut ur = vec![false; rr.len()];
        for &(i, j) in m {
            if !edges.contains(&(i, j)) || ul[i] || ur[j] {
                return false;
            }
            ul[i] = true;
            ur[j] = true;
        }
        rl.iter().zip(&ul).all(|(&r, &u)| !r || u) && rr.iter().zip(&ur).all(|(&r, &u)| !r || u)
    }

    /// Exhaustive: does any subset of edges form a valid covering matching?
    fn exhaustive(edges: &[(usize, usize)], rl: &[bool], rr: &[bool]) -> bool {
        fn go(k: usize, edges: &[(usize, usize)], ul: &mut Vec<bool>, ur: &mut Vec<bool>, rl: &[bool], rr: &[bool]) -> bool {
            if k == edges.len() {
                return rl.iter().zip(ul.iter()).all(|(&r, &u)| !r || u) && rr.iter().zip(ur.iter()).all(|(&r, &u)| !r || u);
            }
            if go(k + 1, edges, ul, ur, rl, rr) {
                return true;
            }
            let (i, j) = edges[k];
            if !ul[i] && !ur[j] {
                ul[i] = true;
                ur[j] = true;
                let ok = go(k + 1, edges, ul, ur, rl, rr);
                ul[i] = false;
                ur[j] = false;
                return ok;
            }
            false
        }
        go(0, edges, &mut vec![false; rl.len()], &mut vec![false; rr.len()], rl, rr)
    }

    #[test]
    fn complete_k33() {
        let edges: Vec<_> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        let m = saturating_matching(3, 3, &edges, &[true; 3], &[true; 3]).unwrap();
        assert_eq!(m.len(), 3);
        assert!(is_valid(&m, &edges, &[true; 3], &[true; 3]));
    }

    #[test]
    fn star_violates_hall() {
        // one center on the right, two required leaves on the left
        let edges = [(0, 0), (1, 0)];
        assert!(saturating_matching(2, 1, &edges, &[true, true], &[false]).is_none());
        assert!(saturating_matching(2, 1, &edges, &[true, false], &[true]).is_some());
    }

    #[test]
    fn required_on_both_sides_needs_alternating_choice() {
        // left 0 must be covered, right 1 must be covered; 0 can reach 0 or 1, 1 can reach 1 only
        let edges = [(0, 0), (0, 1), (1, 1)];
        let m = saturating_matching(2, 2, &edges, &[true, false], &[false, true]).unwrap();
        assert!(is_valid(&m, &edges, &[true, false], &[false, true]));
        let m = saturating_matching(2, 2, &edges, &[true, true], &[false, false]).unwrap();
        assert_eq!(m, vec![(0, 0), (1, 1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_exhaustive(
            left in 1usize..6,
            right in 1usize..6,
            bits in proptest::collection::vec(any::<bool>(), 25),
            rl in proptest::collection::vec(any::<bool>(), 5),
            rr in proptest::collection::vec(any::<bool>(), 5),
        ) {
            let edges: Vec<(usize, usize)> = (0..left)
                .flat_map(|i| (0..right).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * 5 + j])
                .collect();
            let (rl, rr) = (&rl[..left], &rr[..right]);
            let got = saturating_matching(left, right, &edges, rl, rr);
            prop_assert_eq!(got.is_some(), exhaustive(&edges, rl, rr));
            if let Some(m) = got {
                prop_assert!(is_valid(&m, &edges, rl, rr));
            }
        }
    }
}
