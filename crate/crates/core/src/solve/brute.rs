use std::time::Instant;

use super::{SolveResult, SolveStats, SolveStatus};
use crate::certify::{check_definable, verify, InvariantKind};
use crate::error::{param_err, Error, Result};
use crate::kneser::{KneserParams, Vertex, VertexFamily};

pub const BRUTE_FORCE_MAX_VERTICES: usize = 40;
pub const BRUTE_FORCE_MAX_SIZE: usize = 8;

/// Tries every family of size 1, 2, ... in lexicographic order of vertex
/// indices and returns the first one that dominates.
///
/// Limited to graphs with at most [`BRUTE_FORCE_MAX_VERTICES`] vertices and
/// optima of at most [`BRUTE_FORCE_MAX_SIZE`]; beyond that it returns a
/// capacity error.
pub fn brute_force_domination(params: KneserParams, kind: InvariantKind, k: u32) -> Result<SolveResult> {
    let start = Instant::now();
    if kind == InvariantKind::TwoPacking {
        return param_err("brute force handles the three domination kinds only");
    }
    match check_definable(kind, params, k) {
        Ok(()) => {}
        Err(Error::Undefined { .. }) => return Ok(SolveResult::undefined(params, kind, k, start)),
        Err(e) => return Err(e),
    }
    let count = params.ensure_enumerable(BRUTE_FORCE_MAX_VERTICES as u64)?;
    let vertices: Vec<Vertex> = params.vertices().collect();
    let nbr: Vec<u64> = vertices
        .iter()
        .map(|&u| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, &v)| u.is_disjoint(v))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let own = kind.self_weight(k);
    let dominates = |set: u64| {
        (0..count).all(|u| {
            let inside = if set >> u & 1 == 1 { own } else { 0 };
            (nbr[u] & set).count_ones() + inside >= k
        })
    };

    let mut checked = 0u64;
    for size in 1..=BRUTE_FORCE_MAX_SIZE.min(count) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            checked += 1;
            let set = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            if dominates(set) {
                let witness = VertexFamily::new(params, idx.iter().map(|&i| vertices[i]).collect())?;
                if !verify(kind, &witness, k)?.valid {
                    return Err(Error::Internal("brute-force witness fails verification".into()));
                }
                return Ok(SolveResult {
                    params,
                    kind,
                    k,
                    value: Some(size as u64),
                    witness: Some(witness),
                    status: SolveStatus::Optimal,
                    stats: SolveStats {
                        nodes: checked,
                        elapsed_ms: start.elapsed().as_millis(),
                        timed_out: false,
                        bound_source: Some("exhaustive"),
                    },
                });
            }
            if !next_combination(&mut idx, count) {
                break;
            }
        }
    }
    Err(Error::Capacity {
        what: "brute-force family size",
        requested: BRUTE_FORCE_MAX_SIZE as u128 + 1,
        ceiling: BRUTE_FORCE_MAX_SIZE as u128,
    })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let p = |n| KneserParams::new(n, 2).unwrap();
        let v = |n, kind, k| brute_force_domination(p(n), kind, k).unwrap().optimum();
        assert_eq!(v(5, InvariantKind::KDom, 2), Some(4));
        assert_eq!(v(4, InvariantKind::KDom, 2), Some(6));
        assert_eq!(v(6, InvariantKind::KTupleTotal, 2), Some(6));
        assert_eq!(
            brute_force_domination(p(4), InvariantKind::KTupleTotal, 2)
                .unwrap()
                .status,
            SolveStatus::Undefined
        );
    }

    #[test]
    fn guard() {
        // 56 vertices
        let p = KneserParams::new(8, 3).unwrap();
        assert!(matches!(
            brute_force_domination(p, InvariantKind::KDom, 1),
            Err(Error::Capacity { .. })
        ));
    }
}
