//! Seeded 2-packings of K(3r-t, r) with elements in three or more members,
//! used as normalization inputs.
//!
//! Starting from a family where every two members share exactly t-1
//! elements and none lies in three, a merge step adds one unused element to
//! `h` members and removes, for every pair of them, one element that pair
//! shared exclusively. Intersection sizes are unchanged.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param_err, Result};
use crate::kneser::{Vertex, VertexFamily};

use super::check_t_range;

/// `m` members of K(3r-t, r), every two sharing exactly t-1 elements and no
/// element in three. Pair blocks come first in lexicographic pair order,
/// then each member's own block.
pub fn pairwise_design(r: u32, t: u32, m: u32) -> Result<VertexFamily> {
    let params = check_t_range(r, t)?;
    if m < 2 {
        return param_err("pairwise design needs at least two members");
    }
    let shared = t - 1;
    let Some(own) = r.checked_sub((m - 1) * shared) else {
        return param_err(format!("{m} members sharing {shared} elements pairwise exceed r = {r}"));
    };
    let used = m * (m - 1) / 2 * shared + m * own;
    if used > params.n() {
        return param_err(format!(
            "pairwise design needs {used} elements, {params} has {}",
            params.n()
        ));
    }
    let m = m as usize;
    let mut members = vec![Vertex::default(); m];
    let mut next = 1;
    for i in 0..m {
        for j in i + 1..m {
            for x in next..next + shared {
                members[i] = members[i].with(x);
                members[j] = members[j].with(x);
            }
            next += shared;
        }
    }
    for member in members.iter_mut() {
        for x in next..next + own {
            *member = member.with(x);
        }
        next += own;
    }
    VertexFamily::new(params, members)
}

/// One merge step on `holders` randomly chosen members. Fails when there are
/// not enough unused elements or some pair has no exclusive common element.
pub fn merge_into_free_element<R: Rng + ?Sized>(s: &VertexFamily, holders: usize, rng: &mut R) -> Result<VertexFamily> {
    let params = s.params();
    if holders < 3 || holders > s.len() {
        return param_err(format!("merge needs 3 <= holders <= {}, got {holders}", s.len()));
    }
    let picked: Vec<usize> = sample(rng, s.len(), holders).into_vec();
    let doubles = s.occurrence_classes(2).exactly;
    let mut free: Vec<u32> = s.occurrence_classes(0).exactly.iter().collect();
    free.shuffle(rng);

    let mut members = s.members().to_vec();
    let mut losses = vec![0u32; holders];
    for a in 0..holders {
        for b in a + 1..holders {
            let (u, v) = (s.members()[picked[a]], s.members()[picked[b]]);
            let common: Vec<u32> = u.elements().filter(|&x| v.contains(x) && doubles.contains(x)).collect();
            let Some(&y) = common.choose(rng) else {
                return param_err("a pair of chosen members has no exclusive common element");
            };
            // balanced orientation: every member loses about (holders - 1) / 2
            let d = b - a;
            let loser = if d < holders - d { b } else { a };
            losses[loser] += 1;
            members[picked[loser]] = members[picked[loser]].without(y);
        }
    }
    let needed = 1 + losses.iter().map(|&l| l.saturating_sub(1) as usize).sum::<usize>();
    if free.len() < needed {
        return param_err(format!(
            "merge needs {needed} unused elements, {} available",
            free.len()
        ));
    }
    let x = free.pop().unwrap_or_default();
    for (slot, &i) in picked.iter().enumerate() {
        members[i] = members[i].with(x);
        for _ in 1..losses[slot] {
            let fill = free.pop().unwrap_or_default();
            members[i] = members[i].with(fill);
        }
    }
    let out = VertexFamily::new(params, members)?;
    assert_eq!(out.pairwise_intersections(), s.pairwise_intersections());
    Ok(out)
}

/// Applies a random permutation to the ground set and to the member order.
pub fn relabel<R: Rng + ?Sized>(s: &VertexFamily, rng: &mut R) -> Result<VertexFamily> {
    let params = s.params();
    let mut perm: Vec<u32> = (1..=params.n()).collect();
    perm.shuffle(rng);
    let mut members: Vec<Vertex> = s
        .members()
        .iter()
        .map(|v| Vertex::from_elements(v.elements().map(|x| perm[x as usize - 1])))
        .collect::<Result<_>>()?;
    members.shuffle(rng);
    VertexFamily::new(params, members)
}

/// Seeded m-member 2-packing of K(3r-t, r) with an element in `holders`
/// members: a pairwise design, one merge of that size, up to three further
/// merges of random size, and a random relabeling.
pub fn perturbed_packing(r: u32, t: u32, m: u32, holders: usize, seed: u64) -> Result<VertexFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = pairwise_design(r, t, m)?;
    let mut s = merge_into_free_element(&base, holders, &mut rng)?;
    for _ in 0..3 {
        let h = rng.gen_range(3..=holders);
        if let Ok(next) = merge_into_free_element(&s, h, &mut rng) {
            s = next;
        }
    }
    relabel(&s, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify_2_packing;

    #[test]
    fn design_matches_rho4_layout() {
        let d = pairwise_design(9, 3, 4).unwrap();
        assert_eq!(d.pairwise_intersections(), vec![2; 6]);
        assert!(d.occurrences().iter().all(|&c| c <= 2));
        assert!(verify_2_packing(&d).valid);
        assert!(pairwise_design(9, 3, 6).is_err());
    }

    #[test]
    fn perturbed_has_heavy_element() {
        for (r, t, m, h) in [(7, 3, 4, 3), (6, 3, 4, 4), (8, 3, 5, 3), (16, 5, 5, 4)] {
            let s = perturbed_packing(r, t, m, h, 11).unwrap();
            assert_eq!(s.len(), m as usize);
            assert!(s.occurrences().iter().any(|&c| c as usize >= h), "r={r} t={t}");
            assert!(verify_2_packing(&s).valid);
        }
        assert!(perturbed_packing(9, 3, 4, 3, 0).is_err());
    }

    #[test]
    fn same_seed_same_family() {
        let a = perturbed_packing(11, 4, 4, 4, 5).unwrap();
        let b = perturbed_packing(11, 4, 4, 4, 5).unwrap();
        assert_eq!(a, b);
    }
}
