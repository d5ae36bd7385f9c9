//! Certificate checks: k-domination, k-tuple domination, k-tuple total
//! domination and 2-packings.
//!
//! Domination checks stream every vertex of K(n,r) in colex order and stop at
//! the first vertex whose neighborhood holds too few members. With more than
//! one thread the vertex range is split into chunks, and the reported
//! violation is still the first one in colex order.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param_err, Error, Result};
use crate::kneser::{default_vertex_ceiling, KneserParams, Vertex, VertexFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvariantKind {
    /// k-domination: every vertex outside D has k neighbors in D.
    #[serde(rename = "gamma_k")]
    KDom,
    /// k-tuple domination: every closed neighborhood holds k members of D.
    #[serde(rename = "gamma_xk")]
    KTuple,
    /// k-tuple total domination: every open neighborhood holds k members of D.
    #[serde(rename = "gamma_xkt")]
    KTupleTotal,
    #[serde(rename = "two_packing")]
    TwoPacking,
}

impl InvariantKind {
    pub const DOMINATION: [InvariantKind; 3] = [InvariantKind::KDom, InvariantKind::KTuple, InvariantKind::KTupleTotal];

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::KDom => "gamma_k",
            InvariantKind::KTuple => "gamma_xk",
            InvariantKind::KTupleTotal => "gamma_xkt",
            InvariantKind::TwoPacking => "two_packing",
        }
    }

    /// Minimum degree needed for the invariant to exist.
    pub fn required_degree(self, k: u32) -> u32 {
        match self {
            InvariantKind::KTuple => k.saturating_sub(1),
            InvariantKind::KTupleTotal => k,
            InvariantKind::KDom | InvariantKind::TwoPacking => 0,
        }
    }

    /// How much a member contributes to its own count.
    pub(crate) fn self_weight(self, k: u32) -> u32 {
        match self {
            InvariantKind::KDom => k,
            InvariantKind::KTuple => 1,
            InvariantKind::KTupleTotal | InvariantKind::TwoPacking => 0,
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rejects k = 0 and invariants the minimum degree does not support.
pub fn check_definable(kind: InvariantKind, params: KneserParams, k: u32) -> Result<()> {
    if kind == InvariantKind::TwoPacking {
        return Ok(());
    }
    if k == 0 {
        return param_err("k must be at least 1");
    }
    let required = kind.required_degree(k);
    let min_degree = params.min_degree();
    if min_degree < required as u128 {
        return Err(Error::Undefined {
            kind,
            k,
            n: params.n(),
            r: params.r(),
            min_degree,
            required,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Violation {
    Vertex(Vertex),
    Pair(Vertex, Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Vertex(v) => write!(f, "vertex {v}"),
            Violation::Pair(u, v) => write!(f, "pair {u}, {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub invariant_kind: InvariantKind,
    /// 0 for 2-packings.
    pub k: u32,
    pub witness_violation: Option<Violation>,
    /// Vertices (or pairs, for packings) examined before stopping.
    pub checked_count: u64,
}

impl VerificationReport {
    fn new(kind: InvariantKind, k: u32, violation: Option<Violation>, checked: u64) -> Self {
        VerificationReport {
            valid: violation.is_none(),
            invariant_kind: kind,
            k,
            witness_violation: violation,
            checked_count: checked,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub vertex_ceiling: u64,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            vertex_ceiling: default_vertex_ceiling(),
            threads: 1,
        }
    }
}

pub fn verify_k_dominating(d: &VertexFamily, k: u32) -> Result<VerificationReport> {
    verify_with(InvariantKind::KDom, d, k, &VerifyOptions::default())
}

pub fn verify_k_tuple_dominating(d: &VertexFamily, k: u32) -> Result<VerificationReport> {
    verify_with(InvariantKind::KTuple, d, k, &VerifyOptions::default())
}

pub fn verify_k_tuple_total_dominating(d: &VertexFamily, k: u32) -> Result<VerificationReport> {
    verify_with(InvariantKind::KTupleTotal, d, k, &VerifyOptions::default())
}

pub fn verify(kind: InvariantKind, d: &VertexFamily, k: u32) -> Result<VerificationReport> {
    verify_with(kind, d, k, &VerifyOptions::default())
}

pub fn verify_with(kind: InvariantKind, d: &VertexFamily, k: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    if kind == InvariantKind::TwoPacking {
        return Ok(verify_2_packing(d));
    }
    let params = d.params();
    check_definable(kind, params, k)?;
    let total = params.ensure_enumerable(opts.vertex_ceiling)? as u64;

    let mut members = d.members().to_vec();
    members.sort_unstable();
    let self_weight = kind.self_weight(k);
    let fails = |u: Vertex| -> bool {
        let mut count = if self_weight > 0 && members.binary_search(&u).is_ok() {
            self_weight
        } else {
            0
        };
        if count >= k {
            return false;
        }
        for v in &members {
            if v.is_disjoint(u) {
                count += 1;
                if count >= k {
                    return false;
                }
            }
        }
        true
    };

    let first_failure = if opts.threads <= 1 || total < 1024 {
        params
            .vertices()
            .enumerate()
            .find(|(_, u)| fails(*u))
            .map(|(i, u)| (i as u64, u))
    } else {
        let chunks = (opts.threads * 8) as u64;
        let chunk_len = total.div_ceil(chunks);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..chunks).into_par_iter().find_map_first(|c| {
                let start = c * chunk_len;
                if start >= total {
                    return None;
                }
                let len = chunk_len.min(total - start) as usize;
                params
                    .vertices_from(start)
                    .take(len)
                    .enumerate()
                    .find(|(_, u)| fails(*u))
                    .map(|(i, u)| (start + i as u64, u))
            })
        })
    };

    Ok(match first_failure {
        Some((idx, u)) => VerificationReport::new(kind, k, Some(Violation::Vertex(u)), idx + 1),
        None => VerificationReport::new(kind, k, None, total),
    })
}

/// Pairwise distance check. Inside 2r+1 <= n <= 3r-2 two members are far
/// enough apart iff `1 <= |u ∩ v| <= 3r-1-n`; elsewhere the general
/// distance test is used.
pub fn verify_2_packing(s: &VertexFamily) -> VerificationReport {
    let params = s.params();
    let mut members = s.members().to_vec();
    members.sort_unstable();
    let too_close = |u: Vertex, v: Vertex| match params.packing_intersection_cap() {
        Some(cap) => {
            let common = u.intersection_len(v);
            !(1..=cap).contains(&common)
        }
        None => params.within_distance_2_unchecked(u, v),
    };
    let mut checked = 0u64;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            checked += 1;
            if too_close(u, v) {
                return VerificationReport::new(InvariantKind::TwoPacking, 0, Some(Violation::Pair(u, v)), checked);
            }
        }
    }
    VerificationReport::new(InvariantKind::TwoPacking, 0, None, checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, r: u32) -> KneserParams {
        KneserParams::new(n, r).unwrap()
    }

    #[test]
    fn whole_vertex_set_is_2_dominating_in_k42() {
        let k = p(4, 2);
        let d = VertexFamily::new(k, k.vertices().collect()).unwrap();
        let rep = verify_k_dominating(&d, 2).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.checked_count, 6);
    }

    #[test]
    fn disjoint_pairs_in_k82() {
        let d = VertexFamily::from_sets(p(8, 2), &[[1, 2], [3, 4], [5, 6], [7, 8]]).unwrap();
        assert!(verify_k_dominating(&d, 2).unwrap().valid);
        assert!(verify_k_tuple_dominating(&d, 2).unwrap().valid);
        assert!(verify_k_tuple_total_dominating(&d, 2).unwrap().valid);
    }

    #[test]
    fn first_violation_is_reported() {
        let k = p(5, 2);
        let d = VertexFamily::from_sets(k, &[[1, 2], [3, 4]]).unwrap();
        let rep = verify_k_dominating(&d, 2).unwrap();
        assert!(!rep.valid);
        // colex order: {1,2} in D, {1,3} meets both members
        assert_eq!(
            rep.witness_violation,
            Some(Violation::Vertex(k.vertex(&[1, 3]).unwrap()))
        );
        assert_eq!(rep.checked_count, 2);
    }

    #[test]
    fn k_tuple_total_undefined_on_k42() {
        let k = p(4, 2);
        let d = VertexFamily::new(k, k.vertices().collect()).unwrap();
        assert!(matches!(
            verify_k_tuple_total_dominating(&d, 2),
            Err(Error::Undefined { required: 2, .. })
        ));
        assert!(verify_k_tuple_total_dominating(&d, 1).unwrap().valid);
        assert!(verify_k_tuple_dominating(&d, 3).is_err());
    }

    #[test]
    fn zero_k_rejected() {
        let d = VertexFamily::empty(p(5, 2));
        assert!(matches!(verify_k_dominating(&d, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn capacity_is_enforced() {
        let d = VertexFamily::empty(p(30, 10));
        assert!(matches!(verify_k_dominating(&d, 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn packing_small_cases() {
        let k = p(9, 4);
        assert!(verify_2_packing(&VertexFamily::empty(k)).valid);
        let one = VertexFamily::new(k, vec![k.first_vertex()]).unwrap();
        assert!(verify_2_packing(&one).valid);
        let bad = VertexFamily::from_sets(k, &[[1, 2, 3, 4], [1, 2, 3, 5]]).unwrap();
        let rep = verify_2_packing(&bad);
        assert!(!rep.valid);
        assert!(matches!(rep.witness_violation, Some(Violation::Pair(..))));
    }

    #[test]
    fn parallel_matches_sequential() {
        let k = p(16, 4);
        let d = VertexFamily::from_sets(
            k,
            &[
                [1, 2, 3, 4],
                [5, 6, 7, 8],
                [9, 10, 11, 12],
                [1, 5, 9, 13],
                [2, 6, 10, 14],
            ],
        )
        .unwrap();
        for kind in InvariantKind::DOMINATION {
            for kk in 1..=3 {
                let seq = verify(kind, &d, kk).unwrap();
                let opts = VerifyOptions {
                    threads: 4,
                    ..Default::default()
                };
                let par = verify_with(kind, &d, kk, &opts).unwrap();
                assert_eq!(seq, par);
            }
        }
    }
}
