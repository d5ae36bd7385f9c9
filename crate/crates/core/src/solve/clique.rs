//! Maximum clique by branch and bound with greedy-coloring bounds.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::bitset::Bitset;
use super::Deadline;

pub(crate) struct CliqueOutcome {
    /// Largest clique found that beats `floor`, in input indices; empty if none.
    pub best: Vec<usize>,
    pub complete: bool,
    pub nodes: u64,
    /// Number of colors in the root coloring, an upper bound on the clique number.
    pub root_bound: usize,
}

/// Searches for a clique larger than `floor`, stopping early once one of size
/// `ceiling` is found.
pub(crate) fn max_clique(
    adj: &[Bitset],
    floor: usize,
    ceiling: usize,
    deadline: Deadline,
    threads: usize,
) -> CliqueOutcome {
    let n = adj.len();
    // renumber by degree, highest first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count()), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let radj: Vec<Bitset> = order
        .iter()
        .map(|&v| {
            let mut b = Bitset::new(n);
            for u in adj[v].iter() {
                b.insert(pos[u]);
            }
            b
        })
        .collect();

    let shared = Shared {
        adj: &radj,
        best_len: AtomicUsize::new(floor),
        ceiling,
        deadline,
        stop: AtomicBool::new(false),
    };
    let all = Bitset::full(n);
    let (root_order, root_colors) = color_sort(&radj, &all);
    let root_bound = root_colors.last().copied().unwrap_or(0);

    let tasks: Vec<usize> = (0..root_order.len()).rev().collect();
    let run = |i: usize| -> (Vec<usize>, u64) {
        let mut w = Worker {
            shared: &shared,
            best: Vec::new(),
            nodes: 0,
        };
        if root_colors[i] <= shared.best_len.load(Ordering::Relaxed) || shared.stop.load(Ordering::Relaxed) {
            return (w.best, w.nodes);
        }
        let v = root_order[i];
        let mut cand = Bitset::new(n);
        for &u in &root_order[..i] {
            cand.insert(u);
        }
        cand.intersect_with(&radj[v]);
        let mut current = vec![v];
        w.extend(&mut current, cand);
        (w.best, w.nodes)
    };
    let results: Vec<(Vec<usize>, u64)> = if threads > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| tasks.par_iter().map(|&i| run(i)).collect()),
            Err(_) => tasks.iter().map(|&i| run(i)).collect(),
        }
    } else {
        tasks.iter().map(|&i| run(i)).collect()
    };

    let mut best: Vec<usize> = Vec::new();
    let mut nodes = 1;
    for (b, k) in results {
        nodes += k;
        if b.len() > best.len() {
            best = b;
        }
    }
    let mut best: Vec<usize> = best.into_iter().map(|v| order[v]).collect();
    best.sort_unstable();
    let reached_ceiling = best.len() >= ceiling;
    CliqueOutcome {
        best,
        complete: reached_ceiling || !shared.stop.load(Ordering::Relaxed),
        nodes,
        root_bound,
    }
}

struct Shared<'a> {
    adj: &'a [Bitset],
    best_len: AtomicUsize,
    ceiling: usize,
    deadline: Deadline,
    stop: AtomicBool,
}

struct Worker<'a, 'b> {
    shared: &'b Shared<'a>,
    best: Vec<usize>,
    nodes: u64,
}

impl Worker<'_, '_> {
    fn extend(&mut self, current: &mut Vec<usize>, mut cand: Bitset) {
        let s = self.shared;
        if cand.is_empty() {
            self.record(current);
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && s.deadline.expired() {
            s.stop.store(true, Ordering::Relaxed);
        }
        let (order, colors) = color_sort(s.adj, &cand);
        for i in (0..order.len()).rev() {
            if s.stop.load(Ordering::Relaxed) {
                return;
            }
            if current.len() + colors[i] <= s.best_len.load(Ordering::Relaxed) {
                return;
            }
            let v = order[i];
            let mut next = cand.clone();
            next.intersect_with(&s.adj[v]);
            current.push(v);
            self.extend(current, next);
            current.pop();
            cand.remove(v);
        }
    }

    fn record(&mut self, current: &[usize]) {
        let s = self.shared;
        let len = current.len();
        if s.best_len.fetch_max(len, Ordering::Relaxed) < len {
            self.best = current.to_vec();
            if len >= s.ceiling {
                s.stop.store(true, Ordering::Relaxed);
            }
        }
    }
}

/// Greedy sequential coloring; returns vertices with nondecreasing colors.
fn color_sort(adj: &[Bitset], cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn finds_planted_clique() {
        // 5-cycle plus a triangle 5-6-7 attached at vertex 0
        let adj = graph(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7), (5, 7), (0, 5)],
        );
        let out = max_clique(&adj, 0, usize::MAX, Deadline::after(Duration::from_secs(5)), 1);
        assert!(out.complete);
        assert_eq!(out.best, vec![5, 6, 7]);
        let par = max_clique(&adj, 0, usize::MAX, Deadline::after(Duration::from_secs(5)), 3);
        assert_eq!(par.best.len(), 3);
        let none = max_clique(&adj, 3, usize::MAX, Deadline::after(Duration::from_secs(5)), 1);
        assert!(none.complete && none.best.is_empty());
    }
}
