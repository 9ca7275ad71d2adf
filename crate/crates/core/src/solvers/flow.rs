//! Integer max-flow (Dinic) and min-cost flow (successive shortest paths).
//!
//! Both networks are tiny (voters + committee members + a handful of
//! auxiliary nodes), so the implementations favour clarity.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
}

/// A directed graph with paired residual edges.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    original_cap: Vec<i64>,
}

/// Handle to an edge added with [`FlowNetwork::add_edge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeId(usize);

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
            original_cap: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> EdgeId {
        self.add_edge_with_cost(from, to, cap, 0)
    }

    pub fn add_edge_with_cost(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> EdgeId {
        debug_assert!(cap >= 0);
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.original_cap.push(cap);
        self.original_cap.push(0);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        EdgeId(id)
    }

    /// Flow currently routed through an edge.
    pub fn flow(&self, e: EdgeId) -> i64 {
        self.original_cap[e.0] - self.edges[e.0].cap
    }

    /// Dinic's algorithm; returns the value of a maximum `s`-`t` flow.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &id in &self.adj[u] {
                    let e = &self.edges[id];
                    if e.cap > 0 && level[e.to] == usize::MAX {
                        level[e.to] = level[u] + 1;
                        queue.push_back(e.to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, u: usize, t: usize, limit: i64, level: &[usize], next: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let pushed = self.augment(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.edges[id].cap -= pushed;
                    self.edges[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[u] += 1;
        }
        0
    }

    /// Sends up to `demand` units from `s` to `t` at minimum total cost.
    /// Returns `(flow, cost)`. Negative-cost cycles are not expected.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, demand: i64) -> (i64, i64) {
        let n = self.adj.len();
        let (mut flow, mut cost) = (0, 0);
        while flow < demand {
            // Bellman-Ford (queue based): residual costs may be negative.
            let mut dist = vec![i64::MAX; n];
            let mut in_queue = vec![false; n];
            let mut prev_edge = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                for &id in &self.adj[u] {
                    let e = &self.edges[id];
                    if e.cap > 0 && dist[u] + e.cost < dist[e.to] {
                        dist[e.to] = dist[u] + e.cost;
                        prev_edge[e.to] = id;
                        if !in_queue[e.to] {
                            in_queue[e.to] = true;
                            queue.push_back(e.to);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = demand - flow;
            let mut v = t;
            while v != s {
                let id = prev_edge[v];
                push = push.min(self.edges[id].cap);
                v = self.edges[id ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let id = prev_edge[v];
                self.edges[id].cap -= push;
                self.edges[id ^ 1].cap += push;
                v = self.edges[id ^ 1].to;
            }
            flow += push;
            cost += push * dist[t];
        }
        (flow, cost)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_flow_on_a_diamond() {
        let mut g = FlowNetwork::new(4);
        let a = g.add_edge(0, 1, 3);
        g.add_edge(0, 2, 2);
        g.add_edge(1, 2, 5);
        g.add_edge(1, 3, 2);
        g.add_edge(2, 3, 3);
        assert_eq!(g.max_flow(0, 3), 5);
        assert!(g.flow(a) <= 3);
    }

    #[test]
    fn min_cost_prefers_cheap_paths() {
        let mut g = FlowNetwork::new(4);
        g.add_edge_with_cost(0, 1, 1, 0);
        g.add_edge_with_cost(0, 2, 1, 0);
        let cheap = g.add_edge_with_cost(1, 3, 1, 0);
        g.add_edge_with_cost(2, 3, 1, 1);
        g.add_edge_with_cost(1, 2, 1, 0);
        assert_eq!(g.min_cost_flow(0, 3, 2), (2, 1));
        assert_eq!(g.flow(cheap), 1);
    }

    #[test]
    fn min_cost_flow_stops_at_capacity() {
        let mut g = FlowNetwork::new(2);
        g.add_edge_with_cost(0, 1, 1, 4);
        assert_eq!(g.min_cost_flow(0, 1, 3), (1, 4));
    }
}
