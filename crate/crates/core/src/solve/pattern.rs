//! Existence of m-member 2-packings in K(n,r), 2r+1 <= n <= 3r-2, decided on
//! Venn-region counts instead of vertices.
//!
//! For members u_1..u_m let c_T be the number of elements lying in exactly
//! the members indexed by T. A family exists iff there are counts with
//! `sum_{T ∋ i} c_T = r` for every i, `1 <= sum_{T ⊇ {i,j}} c_T <= 3r-1-n`
//! for every pair, and at most n elements in total. Singleton regions only
//! fill up loads, so the search runs over regions with |T| >= 2 and asks
//! that `sum (|T| - 1) c_T >= m r - n`.

use std::time::Duration;

use super::Deadline;
use crate::certify::verify_2_packing;
use crate::error::{param_err, Error, Result};
use crate::kneser::{KneserParams, Vertex, VertexFamily};

pub const PATTERN_MAX_MEMBERS: u32 = 8;

#[derive(Clone, Debug)]
pub enum PatternOutcome {
    Found(VertexFamily),
    Infeasible,
    Timeout,
}

/// Decides whether K(n,r) has a 2-packing with `m` members, for parameters
/// in the window 2r+1 <= n <= 3r-2 and 1 <= m <= 8.
pub fn pattern_packing(params: KneserParams, m: u32, timeout: Duration) -> Result<PatternOutcome> {
    pattern_search(params, m, Deadline::after(timeout)).map(|(out, _)| out)
}

pub(crate) fn pattern_search(params: KneserParams, m: u32, deadline: Deadline) -> Result<(PatternOutcome, u64)> {
    let Some(cap) = params.packing_intersection_cap() else {
        return param_err(format!("{params} is outside 2r+1 <= n <= 3r-2"));
    };
    if m == 0 || m > PATTERN_MAX_MEMBERS {
        return param_err(format!("pattern search needs 1 <= m <= {PATTERN_MAX_MEMBERS}, got {m}"));
    }
    let (n, r) = (params.n(), params.r());
    let m = m as usize;
    let pair_index = |i: usize, j: usize| i * m + j;
    let mut regions: Vec<Region> = (0u32..1 << m)
        .filter(|t| t.count_ones() >= 2)
        .map(|t| {
            let members: Vec<usize> = (0..m).filter(|&i| t >> i & 1 == 1).collect();
            let mut pairs = Vec::new();
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    pairs.push(pair_index(i, j));
                }
            }
            Region {
                mask: t,
                members,
                pairs,
            }
        })
        .collect();
    regions.sort_by_key(|reg| (std::cmp::Reverse(reg.members.len()), reg.mask));

    let mut s = Search {
        regions: &regions,
        cap,
        r,
        need: m as i64 * r as i64 - n as i64,
        pair_sum: vec![0; m * m],
        load: vec![0; m],
        weight: 0,
        counts: vec![0; regions.len()],
        deadline,
        nodes: 0,
        stopped: false,
    };
    let found = s.dfs(0);
    let nodes = s.nodes;
    if s.stopped {
        return Ok((PatternOutcome::Timeout, nodes));
    }
    if !found {
        return Ok((PatternOutcome::Infeasible, nodes));
    }

    let mut members = vec![0u128; m];
    let mut next = 0u32;
    for (reg, &c) in regions.iter().zip(&s.counts) {
        for _ in 0..c {
            for &i in &reg.members {
                members[i] |= 1 << next;
            }
            next += 1;
        }
    }
    for (i, bits) in members.iter_mut().enumerate() {
        for _ in s.load[i]..r {
            *bits |= 1 << next;
            next += 1;
        }
    }
    assert!(next <= n, "pattern uses {next} elements, only {n} available");
    let family = VertexFamily::new(params, members.into_iter().map(Vertex::from_bits).collect())?;
    if !verify_2_packing(&family).valid {
        return Err(Error::Internal("pattern witness is not a 2-packing".into()));
    }
    Ok((PatternOutcome::Found(family), nodes))
}

struct Region {
    mask: u32,
    members: Vec<usize>,
    pairs: Vec<usize>,
}

struct Search<'a> {
    regions: &'a [Region],
    cap: u32,
    r: u32,
    need: i64,
    pair_sum: Vec<u32>,
    load: Vec<u32>,
    weight: i64,
    counts: Vec<u32>,
    deadline: Deadline,
    nodes: u64,
    stopped: bool,
}

impl Search<'_> {
    fn dfs(&mut self, idx: usize) -> bool {
        if idx == self.regions.len() {
            return self.weight >= self.need;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.deadline.expired() {
            self.stopped = true;
        }
        if self.stopped {
            return false;
        }

        let size = self.regions[idx].members.len() as i64;
        let pair_room: i64 = self
            .regions
            .iter()
            .filter(|reg| reg.members.len() == 2)
            .map(|reg| (self.cap - self.pair_sum[reg.pairs[0]]) as i64)
            .sum();
        let load_room: i64 = self.load.iter().map(|&l| (self.r - l) as i64).sum();
        let reach = pair_room.min(load_room * (size - 1) / size);
        if self.weight + reach < self.need {
            return false;
        }

        let reg = &self.regions[idx];
        let mut hi = u32::MAX;
        for &p in &reg.pairs {
            hi = hi.min(self.cap - self.pair_sum[p]);
        }
        for &i in &reg.members {
            hi = hi.min(self.r - self.load[i]);
        }
        let lo = u32::from(reg.members.len() == 2 && self.pair_sum[reg.pairs[0]] == 0);
        for c in (lo..=hi).rev() {
            self.apply(idx, c as i64);
            if self.dfs(idx + 1) {
                return true;
            }
            self.apply(idx, -(c as i64));
            if self.stopped {
                return false;
            }
        }
        false
    }

    fn apply(&mut self, idx: usize, delta: i64) {
        let reg = &self.regions[idx];
        for &p in &reg.pairs {
            self.pair_sum[p] = (self.pair_sum[p] as i64 + delta) as u32;
        }
        for &i in &reg.members {
            self.load[i] = (self.load[i] as i64 + delta) as u32;
        }
        self.weight += delta * (reg.members.len() as i64 - 1);
        self.counts[idx] = (self.counts[idx] as i64 + delta) as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: u32, r: u32, m: u32) -> PatternOutcome {
        let p = KneserParams::new(n, r).unwrap();
        pattern_packing(p, m, Duration::from_secs(20)).unwrap()
    }

    #[test]
    fn table2_endpoints() {
        assert!(matches!(run(24, 9, 4), PatternOutcome::Found(_)));
        assert!(matches!(run(24, 9, 5), PatternOutcome::Infeasible));
        assert!(matches!(run(27, 10, 3), PatternOutcome::Found(_)));
        assert!(matches!(run(27, 10, 4), PatternOutcome::Infeasible));
    }

    #[test]
    fn odd_graph_k73() {
        assert!(matches!(run(7, 3, 6), PatternOutcome::Found(_)));
        assert!(matches!(run(7, 3, 7), PatternOutcome::Found(_)));
        assert!(matches!(run(7, 3, 8), PatternOutcome::Infeasible));
    }

    #[test]
    fn table3_sizes_are_reachable() {
        for (r, m) in [(6, 6), (7, 6), (8, 5)] {
            match run(3 * r - 3, r, m) {
                PatternOutcome::Found(f) => assert_eq!(f.len(), m as usize),
                other => panic!("r = {r}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_outside_window() {
        let p = KneserParams::new(8, 2).unwrap();
        assert!(pattern_packing(p, 2, Duration::from_secs(1)).is_err());
        let p = KneserParams::new(24, 9).unwrap();
        assert!(pattern_packing(p, 9, Duration::from_secs(1)).is_err());
    }
}
