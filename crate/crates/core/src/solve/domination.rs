use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::bitset::Bitset;
use super::{Deadline, SolveResult, SolveStats, SolveStatus, SolverConfig};
use crate::certify::{check_definable, verify, InvariantKind};
use crate::error::{param_err, Error, Result};
use crate::kneser::{KneserParams, Vertex, VertexFamily};

/// Best lower bound available without search.
///
/// Always uses the double-counting bound `ceil(k N / (deg + w))`, where `w` is
/// how much a member counts towards itself. With `theorem_bounds`, k >= 2 and
/// n >= k + 2r it also uses k + r (n >= r(k + r)) or k + r + 1 (otherwise);
/// these hold for k-domination and carry over to the other two kinds, which
/// are never smaller.
pub fn domination_lower_bound(params: KneserParams, kind: InvariantKind, k: u32, theorem_bounds: bool) -> u64 {
    let n_vertices = params.vertex_count();
    let denom = params.min_degree() + kind.self_weight(k) as u128;
    let counting = if denom == 0 {
        n_vertices
    } else {
        (k as u128 * n_vertices).div_ceil(denom)
    };
    let mut lb = counting.max((k as u128).min(n_vertices));
    let (n, r) = (params.n(), params.r());
    if theorem_bounds && k >= 2 && n >= k + 2 * r {
        let seed = if n >= r * (k + r) { k + r } else { k + r + 1 };
        lb = lb.max(seed as u128);
    }
    lb.min(u64::MAX as u128) as u64
}

/// Minimum size of a k-dominating, k-tuple dominating or k-tuple total
/// dominating set of K(n,r).
///
/// Undefined invariants give status [`SolveStatus::Undefined`]; k = 0 and
/// the 2-packing kind are parameter errors.
pub fn solve_domination(params: KneserParams, kind: InvariantKind, k: u32, cfg: &SolverConfig) -> Result<SolveResult> {
    let start = Instant::now();
    cfg.validate()?;
    if kind == InvariantKind::TwoPacking {
        return param_err("solve_domination handles the three domination kinds only");
    }
    match check_definable(kind, params, k) {
        Ok(()) => {}
        Err(Error::Undefined { .. }) => return Ok(SolveResult::undefined(params, kind, k, start)),
        Err(e) => return Err(e),
    }
    let count = params.ensure_enumerable(cfg.vertex_ceiling)?;
    if count > cfg.search_vertex_limit {
        return Err(Error::Capacity {
            what: "search vertex count",
            requested: count as u128,
            ceiling: cfg.search_vertex_limit as u128,
        });
    }
    let deadline = Deadline::after(cfg.timeout);
    let vertices: Vec<Vertex> = params.vertices().collect();
    let adj = kneser_adjacency(&vertices);
    let base = Cover::new(&adj, k, kind.self_weight(k));

    let greedy = base.greedy()?;
    let mut best = greedy;
    let mut source = "greedy";
    let mut lo = domination_lower_bound(params, kind, k, cfg.theorem_bounds).max(1);
    let mut nodes = 0;
    let mut timed_out = false;
    while lo < best.len() as u64 {
        let (outcome, n) = search_size(&base, lo as usize, cfg, deadline);
        nodes += n;
        match outcome {
            Outcome::Found(sol) => {
                best = sol;
                source = "search";
                break;
            }
            Outcome::Exhausted => lo += 1,
            Outcome::Stopped => {
                timed_out = true;
                break;
            }
        }
    }
    if !timed_out && source == "greedy" {
        source = if lo == best.len() as u64 && nodes == 0 {
            "lower bound"
        } else {
            "search"
        };
    }

    best.sort_unstable();
    let witness = VertexFamily::new(params, best.iter().map(|&i| vertices[i]).collect())?;
    let report = verify(kind, &witness, k)?;
    if !report.valid {
        return Err(Error::Internal(format!(
            "solver witness for {kind} fails verification at {:?}",
            report.witness_violation
        )));
    }
    let value = witness.len() as u64;
    let status = if timed_out {
        SolveStatus::Bounds { lo, hi: value }
    } else {
        SolveStatus::Optimal
    };
    let (n, r) = (params.n(), params.r());
    if status == SolveStatus::Optimal && k >= 2 && n >= r * (k + r) {
        assert!(
            witness.is_clique(),
            "optimal {kind} witness on {params} with k = {k} is not a clique"
        );
    }
    Ok(SolveResult {
        params,
        kind,
        k,
        value: Some(value),
        witness: Some(witness),
        status,
        stats: SolveStats {
            nodes,
            elapsed_ms: start.elapsed().as_millis(),
            timed_out,
            bound_source: Some(source),
        },
    })
}

pub(crate) fn kneser_adjacency(vertices: &[Vertex]) -> Vec<Bitset> {
    let n = vertices.len();
    let mut adj = vec![Bitset::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if vertices[i].is_disjoint(vertices[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    Stopped,
}

/// Is there a solution with at most `size` members?
fn search_size(base: &Cover, size: usize, cfg: &SolverConfig, deadline: Deadline) -> (Outcome, u64) {
    let cancel = AtomicBool::new(false);
    let mut root = base.clone();
    let mut budget = size;
    if cfg.symmetry_breaking && size > 0 {
        root.add(0);
        budget -= 1;
    }
    if cfg.thread_count <= 1 {
        let mut ctx = Ctx {
            deadline,
            cancel: &cancel,
            nodes: 0,
        };
        let out = root.search(budget, &mut ctx);
        return (out, ctx.nodes);
    }
    if root.is_covered() {
        return (Outcome::Found(root.chosen.clone()), 1);
    }
    let Some(cands) = root.branch_candidates(budget) else {
        return (Outcome::Exhausted, 1);
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.thread_count).build() {
        Ok(pool) => pool,
        Err(_) => {
            let mut ctx = Ctx {
                deadline,
                cancel: &cancel,
                nodes: 0,
            };
            let out = root.search(budget, &mut ctx);
            return (out, ctx.nodes);
        }
    };
    let results: Vec<(Outcome, u64)> = pool.install(|| {
        (0..cands.len())
            .into_par_iter()
            .map(|i| {
                let mut st = root.clone();
                for &c in &cands[..i] {
                    st.exclude(c);
                }
                st.add(cands[i]);
                let mut ctx = Ctx {
                    deadline,
                    cancel: &cancel,
                    nodes: 0,
                };
                let out = st.search(budget - 1, &mut ctx);
                if matches!(out, Outcome::Found(_)) {
                    cancel.store(true, Ordering::Relaxed);
                }
                (out, ctx.nodes)
            })
            .collect()
    });
    let nodes = 1 + results.iter().map(|(_, n)| n).sum::<u64>();
    let mut stopped = false;
    for (out, _) in results {
        match out {
            Outcome::Found(sol) => return (Outcome::Found(sol), nodes),
            Outcome::Stopped => stopped = true,
            Outcome::Exhausted => {}
        }
    }
    let out = if stopped { Outcome::Stopped } else { Outcome::Exhausted };
    (out, nodes)
}

struct Ctx<'a> {
    deadline: Deadline,
    cancel: &'a AtomicBool,
    nodes: u64,
}

impl Ctx<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.deadline.expired() {
            self.cancel.store(true, Ordering::Relaxed);
        }
        self.cancel.load(Ordering::Relaxed)
    }
}

/// Coverage state of a partial solution.
///
/// Vertex `u` needs total weight `k`; every chosen neighbor adds 1 and a
/// chosen `u` adds `self_weight` to itself.
#[derive(Clone)]
struct Cover<'a> {
    adj: &'a [Bitset],
    k: u32,
    self_weight: u32,
    cov: Vec<u32>,
    deficient: Bitset,
    total_deficit: u64,
    available: Bitset,
    chosen: Vec<usize>,
}

impl<'a> Cover<'a> {
    fn new(adj: &'a [Bitset], k: u32, self_weight: u32) -> Self {
        let n = adj.len();
        Cover {
            adj,
            k,
            self_weight,
            cov: vec![0; n],
            deficient: Bitset::full(n),
            total_deficit: k as u64 * n as u64,
            available: Bitset::full(n),
            chosen: Vec::new(),
        }
    }

    fn is_covered(&self) -> bool {
        self.total_deficit == 0
    }

    fn deficit(&self, u: usize) -> u32 {
        self.k.saturating_sub(self.cov[u])
    }

    fn bump(&mut self, u: usize, w: u32) {
        let before = self.deficit(u);
        self.cov[u] += w;
        let after = self.deficit(u);
        self.total_deficit -= (before - after) as u64;
        if after == 0 {
            self.deficient.remove(u);
        }
    }

    fn unbump(&mut self, u: usize, w: u32) {
        let before = self.deficit(u);
        self.cov[u] -= w;
        let after = self.deficit(u);
        self.total_deficit += (after - before) as u64;
        if after > 0 {
            self.deficient.insert(u);
        }
    }

    fn add(&mut self, v: usize) {
        self.chosen.push(v);
        self.available.remove(v);
        for u in self.adj[v].iter() {
            self.bump(u, 1);
        }
        if self.self_weight > 0 {
            self.bump(v, self.self_weight);
        }
    }

    fn undo_add(&mut self, v: usize) {
        let last = self.chosen.pop();
        debug_assert_eq!(last, Some(v));
        self.available.insert(v);
        for u in self.adj[v].iter() {
            self.unbump(u, 1);
        }
        if self.self_weight > 0 {
            self.unbump(v, self.self_weight);
        }
    }

    fn exclude(&mut self, v: usize) {
        self.available.remove(v);
    }

    fn gain(&self, v: usize) -> u64 {
        let mut g = self.deficient.intersection_count(&self.adj[v]) as u64;
        if self.deficient.contains(v) {
            g += self.self_weight.min(self.deficit(v)) as u64;
        }
        g
    }

    fn greedy(&self) -> Result<Vec<usize>> {
        let mut st = self.clone();
        while !st.is_covered() {
            let pick = st
                .available
                .iter()
                .map(|v| (st.gain(v), v))
                .filter(|&(g, _)| g > 0)
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let Some((_, v)) = pick else {
                return Err(Error::Internal("greedy cover stalled".into()));
            };
            st.add(v);
        }
        Ok(st.chosen)
    }

    /// Contributors to the most deficient vertex, best first, or `None` when
    /// `budget` more members cannot complete the cover.
    fn branch_candidates(&self, budget: usize) -> Option<Vec<usize>> {
        if budget == 0 {
            return None;
        }
        let mut gains: Vec<(u64, usize)> = self
            .available
            .iter()
            .map(|v| (self.gain(v), v))
            .filter(|&(g, _)| g > 0)
            .collect();
        gains.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let reach: u64 = gains.iter().take(budget).map(|&(g, _)| g).sum();
        if reach < self.total_deficit {
            return None;
        }

        // vertex with the largest deficit, then fewest contributors
        let mut pick: Option<(u32, usize, usize)> = None;
        for u in self.deficient.iter() {
            let d = self.deficit(u);
            let neighbors = self.adj[u].intersection_count(&self.available);
            let self_open = self.self_weight > 0 && self.available.contains(u);
            let best_case = if self_open {
                self.self_weight as usize + neighbors.min(budget - 1)
            } else {
                neighbors.min(budget)
            };
            if best_case < d as usize {
                return None;
            }
            let options = neighbors + self_open as usize;
            let better = match pick {
                None => true,
                Some((pd, po, _)) => d > pd || (d == pd && options < po),
            };
            if better {
                pick = Some((d, options, u));
            }
        }
        let (_, _, u) = pick?;
        let self_open = self.self_weight > 0 && self.available.contains(u);
        let cands = gains
            .iter()
            .map(|&(_, v)| v)
            .filter(|&v| self.adj[u].contains(v) || (self_open && v == u))
            .collect();
        Some(cands)
    }

    fn search(&mut self, budget: usize, ctx: &mut Ctx) -> Outcome {
        if self.is_covered() {
            return Outcome::Found(self.chosen.clone());
        }
        if ctx.tick() {
            return Outcome::Stopped;
        }
        let Some(cands) = self.branch_candidates(budget) else {
            return Outcome::Exhausted;
        };
        let mut excluded = Vec::with_capacity(cands.len());
        let mut out = Outcome::Exhausted;
        for c in cands {
            self.add(c);
            let sub = self.search(budget - 1, ctx);
            self.undo_add(c);
            match sub {
                Outcome::Exhausted => {
                    self.exclude(c);
                    excluded.push(c);
                }
                other => {
                    out = other;
                    break;
                }
            }
        }
        for c in excluded {
            self.available.insert(c);
        }
        out
    }
}
