use std::time::Instant;

use super::bitset::Bitset;
use super::clique::max_clique;
use super::pattern::{pattern_search, PatternOutcome, PATTERN_MAX_MEMBERS};
use super::{Deadline, SolveResult, SolveStats, SolveStatus, SolverConfig};
use crate::certify::{verify_2_packing, InvariantKind};
use crate::construct::{rho3_witness, rho4_witness};
use crate::error::{Error, Result};
use crate::kneser::{KneserParams, Vertex, VertexFamily};

/// Upper bound on the 2-packing number of K(3r-t, r) from counting
/// occurrences after normalization.
///
/// A normalized m-member 2-packing has every element in at most two members
/// and at most `binomial(m, 2) (t - 1)` elements in exactly two, so
/// `m r <= n + binomial(m, 2) (t - 1)`. Returns `m - 1` for the smallest
/// m in {4, 5} where this fails and the normalization window
/// (r >= 3, 2 <= t <= (r + 3) / 3 for m = 4, t <= (r + 4) / 4 for m = 5)
/// holds.
pub fn counting_upper_bound(params: KneserParams) -> Option<u64> {
    params.packing_intersection_cap()?;
    let (n, r) = (params.n() as u64, params.r() as u64);
    let t = 3 * r - n;
    if r < 3 || t < 2 {
        return None;
    }
    for (m, den, off) in [(4u64, 3, 3), (5, 4, 4)] {
        if den * t > r + off {
            continue;
        }
        if m * r > n + m * (m - 1) / 2 * (t - 1) {
            return Some(m - 1);
        }
    }
    None
}

/// Maximum size of a 2-packing of K(n,r).
///
/// n >= 3r - 1 gives 1 (diameter 2) and n = 2r gives half the vertices
/// (the graph is a perfect matching). In between, the value is bracketed by
/// the closed-form witnesses and [`counting_upper_bound`], then the pattern
/// search and finally a maximum-clique search on the graph joining vertices
/// at distance at least 3 close the gap.
pub fn solve_rho2(params: KneserParams, cfg: &SolverConfig) -> Result<SolveResult> {
    let start = Instant::now();
    cfg.validate()?;
    let deadline = Deadline::after(cfg.timeout);
    let (n, r) = (params.n(), params.r());
    let mut st = State {
        params,
        start,
        lo: 1,
        hi: None,
        witness: VertexFamily::new(params, vec![params.first_vertex()])?,
        nodes: 0,
        timed_out: false,
        source: "diameter",
    };
    if n + 1 >= 3 * r {
        st.hi = Some(1);
        return st.finish();
    }
    if n == 2 * r {
        // pairs of complements; all sets containing 1 avoid each other
        params.ensure_enumerable(cfg.vertex_ceiling)?;
        let members: Vec<Vertex> = params.vertices().filter(|v| v.contains(1)).collect();
        st.lo = members.len() as u64;
        st.hi = Some(st.lo);
        st.witness = VertexFamily::new(params, members)?;
        st.source = "matching";
        return st.finish();
    }
    let t = 3 * r - n;

    if cfg.theorem_bounds {
        if let Ok(w) = rho3_witness(r, t) {
            st.improve(w, "construction");
        }
        if let Ok(w) = rho4_witness(r, t) {
            st.improve(w, "construction");
        }
        if let Some(hi) = counting_upper_bound(params) {
            st.hi = Some(hi);
            st.source = "counting bound";
        }
    }
    if st.closed() {
        return st.finish();
    }

    if cfg.pattern_search {
        let top = cfg.pattern_max_members.min(PATTERN_MAX_MEMBERS) as u64;
        let top = st.hi.map_or(top, |hi| top.min(hi));
        let mut m = st.lo + 1;
        while m <= top {
            let (out, nodes) = pattern_search(params, m as u32, deadline)?;
            st.nodes += nodes;
            match out {
                PatternOutcome::Found(w) => st.improve(w, "pattern search"),
                PatternOutcome::Infeasible => {
                    st.hi = Some(m - 1);
                    st.source = "pattern search";
                    break;
                }
                PatternOutcome::Timeout => {
                    st.timed_out = true;
                    return st.finish();
                }
            }
            m += 1;
        }
    }
    if st.closed() {
        return st.finish();
    }

    params.ensure_enumerable(cfg.vertex_ceiling)?;
    let vertices: Vec<Vertex> = if cfg.symmetry_breaking {
        let v0 = params.first_vertex();
        params
            .vertices()
            .filter(|&v| v != v0 && !params.within_distance_2_unchecked(v0, v))
            .collect()
    } else {
        params.vertices().collect()
    };
    if vertices.len() > cfg.search_vertex_limit {
        return Err(Error::Capacity {
            what: "compatibility graph vertex count",
            requested: vertices.len() as u128,
            ceiling: cfg.search_vertex_limit as u128,
        });
    }
    let m = vertices.len();
    let mut adj = vec![Bitset::new(m); m];
    for i in 0..m {
        for j in i + 1..m {
            if !params.within_distance_2_unchecked(vertices[i], vertices[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let fixed = cfg.symmetry_breaking as u64;
    let floor = (st.lo - fixed) as usize;
    let ceiling = st.hi.map_or(usize::MAX, |hi| (hi - fixed) as usize);
    let out = max_clique(&adj, floor, ceiling, deadline, cfg.thread_count);
    st.nodes += out.nodes;
    if !out.best.is_empty() {
        let mut members: Vec<Vertex> = out.best.iter().map(|&i| vertices[i]).collect();
        if cfg.symmetry_breaking {
            members.insert(0, params.first_vertex());
        }
        st.improve(VertexFamily::new(params, members)?, "clique search");
    }
    if out.complete {
        st.hi = Some(st.lo);
        st.source = "clique search";
    } else {
        st.timed_out = true;
        let bound = out.root_bound as u64 + fixed;
        st.hi = Some(st.hi.map_or(bound, |hi| hi.min(bound)));
    }
    st.finish()
}

struct State {
    params: KneserParams,
    start: Instant,
    lo: u64,
    hi: Option<u64>,
    witness: VertexFamily,
    nodes: u64,
    timed_out: bool,
    source: &'static str,
}

impl State {
    fn improve(&mut self, w: VertexFamily, source: &'static str) {
        if w.len() as u64 > self.lo {
            self.lo = w.len() as u64;
            self.witness = w;
            self.source = source;
        }
    }

    fn closed(&self) -> bool {
        self.hi == Some(self.lo)
    }

    fn finish(self) -> Result<SolveResult> {
        let report = verify_2_packing(&self.witness);
        if !report.valid {
            return Err(Error::Internal(format!(
                "2-packing witness fails verification at {:?}",
                report.witness_violation
            )));
        }
        if let Some(hi) = self.hi {
            if hi < self.lo {
                return Err(Error::Internal(format!(
                    "upper bound {hi} below witness size {} on {}",
                    self.lo, self.params
                )));
            }
        }
        let status = match self.hi {
            Some(hi) if hi == self.lo => SolveStatus::Optimal,
            Some(hi) => SolveStatus::Bounds { lo: self.lo, hi },
            None => SolveStatus::Bounds {
                lo: self.lo,
                hi: trivial_upper_bound(self.params),
            },
        };
        Ok(SolveResult {
            params: self.params,
            kind: InvariantKind::TwoPacking,
            k: 0,
            value: Some(self.lo),
            witness: Some(self.witness),
            status,
            stats: SolveStats {
                nodes: self.nodes,
                elapsed_ms: self.start.elapsed().as_millis(),
                timed_out: self.timed_out,
                bound_source: Some(self.source),
            },
        })
    }
}

/// Closed neighborhoods of a 2-packing are disjoint.
fn trivial_upper_bound(params: KneserParams) -> u64 {
    let b = params.vertex_count() / (params.min_degree() + 1);
    b.min(u64::MAX as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn solve(n: u32, r: u32, cfg: &SolverConfig) -> SolveResult {
        solve_rho2(KneserParams::new(n, r).unwrap(), cfg).unwrap()
    }

    #[test]
    fn examples() {
        let cfg = SolverConfig::default();
        assert_eq!(solve(8, 2, &cfg).optimum(), Some(1));
        assert_eq!(solve(24, 9, &cfg).optimum(), Some(4));
        assert_eq!(solve(27, 10, &cfg).optimum(), Some(3));
        assert_eq!(solve(4, 2, &cfg).optimum(), Some(3));
    }

    #[test]
    fn odd_graph_by_clique_search() {
        let cfg = SolverConfig::default()
            .search_only()
            .with_timeout(Duration::from_secs(30));
        let res = solve(7, 3, &cfg);
        assert_eq!(res.optimum(), Some(7));
        assert_eq!(res.stats.bound_source, Some("clique search"));
        let plain = SolverConfig {
            symmetry_breaking: false,
            ..cfg.clone()
        };
        assert_eq!(solve(7, 3, &plain).optimum(), Some(7));
        let threaded = SolverConfig { thread_count: 3, ..cfg };
        assert_eq!(solve(7, 3, &threaded).optimum(), Some(7));
    }

    #[test]
    fn counting_bound_window() {
        let p = |n, r| KneserParams::new(n, r).unwrap();
        assert_eq!(counting_upper_bound(p(24, 9)), Some(4));
        assert_eq!(counting_upper_bound(p(27, 10)), Some(3));
        // t = 3 > (r + 3) / 3 = 2
        assert_eq!(counting_upper_bound(p(12, 5)), None);
        assert_eq!(counting_upper_bound(p(30, 10)), None);
    }

    #[test]
    fn capacity_only_when_search_needed() {
        let cfg = SolverConfig {
            vertex_ceiling: 100,
            ..SolverConfig::default()
        };
        assert_eq!(solve(27, 10, &cfg).optimum(), Some(3));
        let r = solve_rho2(
            KneserParams::new(7, 3).unwrap(),
            &SolverConfig {
                vertex_ceiling: 10,
                ..SolverConfig::default()
            },
        );
        assert!(matches!(r, Err(Error::Capacity { .. })));
    }
}
