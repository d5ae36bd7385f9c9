//! Rewriting 2-packings of size 4 or 5 in K(3r-t, r) so that no element lies
//! in more than two members.
//!
//! Each step picks the smallest element `x` with `i_x >= 3`, removes it from
//! the members holding it and, for every pair of those members, re-creates
//! the lost common element from elements that occurred only once. Pairwise
//! intersection sizes are unchanged, so the result is again a 2-packing, and
//! the number of elements with `i_x >= 3` drops by one per step.

use crate::certify::verify_2_packing;
use crate::error::{param_err, Result};
use crate::kneser::{ElementSet, Vertex, VertexFamily};

#[derive(Clone, Debug)]
pub struct Normalized {
    pub family: VertexFamily,
    /// Number of rewrite steps applied.
    pub steps: usize,
}

pub fn normalize_packing(s: &VertexFamily) -> Result<VertexFamily> {
    normalize_packing_traced(s).map(|out| out.family)
}

/// Checks the size and parameter window in which the rewrite is guaranteed
/// to find the single-occurrence elements it needs.
pub fn check_normalizable(s: &VertexFamily) -> Result<u32> {
    let params = s.params();
    let (n, r) = (params.n(), params.r());
    let m = s.len() as u32;
    if m != 4 && m != 5 {
        return param_err(format!("normalization needs a family of 4 or 5 members, got {m}"));
    }
    if r < 3 {
        return param_err("normalization needs r >= 3");
    }
    if n + 2 > 3 * r {
        return param_err(format!("{params} has n > 3r - 2"));
    }
    let t = 3 * r - n;
    // m = 4: t <= (r + 3) / 3;  m = 5: t <= (r + 4) / 4
    let (den, off) = if m == 4 { (3, 3) } else { (4, 4) };
    if den * t > r + off {
        return param_err(format!("t = {t} is outside 2 <= t <= (r + {off}) / {den} for r = {r}"));
    }
    if !verify_2_packing(s).valid {
        return param_err("input family is not a 2-packing");
    }
    Ok(t)
}

pub fn normalize_packing_traced(s: &VertexFamily) -> Result<Normalized> {
    check_normalizable(s)?;
    let params = s.params();
    let original = s.pairwise_intersections();
    let mut family = s.clone();
    let mut steps = 0;
    loop {
        let heavy = family.occurrence_classes(3).at_least;
        let Some(x) = heavy.first() else { break };
        let singles = family.occurrence_classes(1).exactly;
        let members = rewrite(family.members(), x, singles);
        family = VertexFamily::new(params, members)?;
        steps += 1;

        let remaining = family.occurrence_classes(3).at_least.len();
        assert_eq!(
            remaining,
            heavy.len() - 1,
            "rewrite of element {x} did not reduce the heavy elements"
        );
        assert_eq!(
            family.pairwise_intersections(),
            original,
            "rewrite of element {x} changed an intersection size"
        );
        assert!(steps <= params.n() as usize);
    }
    Ok(Normalized { family, steps })
}

/// The `count` smallest elements of `u` that occur in no other member.
fn own_elements(u: Vertex, singles: ElementSet, count: usize) -> Vec<u32> {
    let own: Vec<u32> = u.elements().filter(|&e| singles.contains(e)).take(count).collect();
    assert_eq!(
        own.len(),
        count,
        "member {u} has fewer than {count} single-occurrence elements"
    );
    own
}

fn rewrite(members: &[Vertex], x: u32, singles: ElementSet) -> Vec<Vertex> {
    let holders: Vec<usize> = (0..members.len()).filter(|&i| members[i].contains(x)).collect();
    let mut out = members.to_vec();
    match holders.len() {
        // also used for i_x = 4 in a 5-member family, on the first three holders
        3 => {
            let [a, b, c] = [holders[0], holders[1], holders[2]];
            let [xa, xb, xc] = [a, b, c].map(|i| own_elements(members[i], singles, 1)[0]);
            out[a] = members[a].without(x).with(xb);
            out[b] = members[b].without(x).with(xc);
            out[c] = members[c].without(x).with(xa);
        }
        4 => {
            let h = [holders[0], holders[1], holders[2], holders[3]];
            let own = h.map(|i| own_elements(members[i], singles, 2));
            out[h[0]] = members[h[0]].without(x).with(own[3][0]);
            out[h[1]] = members[h[1]].without(x).with(own[0][0]);
            out[h[2]] = members[h[2]]
                .without(x)
                .without(own[2][1])
                .with(own[0][1])
                .with(own[1][0]);
            out[h[3]] = members[h[3]]
                .without(x)
                .without(own[3][1])
                .with(own[1][1])
                .with(own[2][0]);
        }
        5 => {
            let h = [holders[0], holders[1], holders[2], holders[3], holders[4]];
            let own = h.map(|i| own_elements(members[i], singles, 3));
            out[h[0]] = members[h[0]].without(x).with(own[4][0]);
            out[h[1]] = members[h[1]].without(x).with(own[0][0]);
            out[h[2]] = members[h[2]]
                .without(x)
                .without(own[2][2])
                .with(own[0][1])
                .with(own[1][0]);
            out[h[3]] = members[h[3]]
                .without(x)
                .without(own[3][1])
                .without(own[3][2])
                .with(own[0][2])
                .with(own[1][1])
                .with(own[2][0]);
            out[h[4]] = members[h[4]]
                .without(x)
                .without(own[4][1])
                .without(own[4][2])
                .with(own[1][2])
                .with(own[2][1])
                .with(own[3][0]);
        }
        k => unreachable!("element {x} held by {k} members"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{rho4_witness, table3_packing};
    use crate::kneser::KneserParams;

    #[test]
    fn fixed_point_when_already_normal() {
        let s = rho4_witness(9, 3).unwrap();
        let out = normalize_packing_traced(&s).unwrap();
        assert_eq!(out.steps, 0);
        assert_eq!(out.family, s);
    }

    #[test]
    fn table3_r8_has_a_triple_element() {
        // element 5 lies in three of the five members
        let s = table3_packing(8).unwrap();
        assert_eq!(s.occurrence(5), 3);
        let out = normalize_packing_traced(&s).unwrap();
        assert_eq!(out.steps, 1);
        assert!(out.family.occurrences().iter().all(|&c| c <= 2));
        assert_eq!(out.family.pairwise_intersections(), s.pairwise_intersections());
        assert!(verify_2_packing(&out.family).valid);
    }

    #[test]
    fn rejects_out_of_window() {
        // size 12 family
        assert!(normalize_packing(&table3_packing(4).unwrap()).is_err());
        // K(18,7), t = 3 with six members
        assert!(normalize_packing(&table3_packing(7).unwrap()).is_err());
        // four members but t = 4 > (r + 3) / 3 for r = 8
        let p = KneserParams::new(20, 8).unwrap();
        let s = VertexFamily::from_sets(
            p,
            &[
                [1, 2, 3, 4, 5, 6, 7, 8],
                [1, 2, 3, 9, 10, 11, 12, 13],
                [4, 5, 6, 9, 10, 11, 14, 15],
                [7, 8, 12, 13, 14, 15, 16, 17],
            ],
        )
        .unwrap();
        assert!(normalize_packing(&s).is_err());
    }

    #[test]
    fn rejects_non_packing() {
        let p = KneserParams::new(15, 6).unwrap();
        let s = VertexFamily::from_sets(
            p,
            &[
                [1, 2, 3, 4, 5, 6],
                [1, 2, 3, 7, 8, 9],
                [4, 5, 7, 10, 11, 12],
                [6, 8, 10, 13, 14, 15],
            ],
        )
        .unwrap();
        assert!(normalize_packing(&s).is_err());
    }
}
