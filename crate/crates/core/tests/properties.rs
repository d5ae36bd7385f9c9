use std::time::Duration;

use kneser::certify::{verify, verify_2_packing, InvariantKind};
use kneser::construct::table3_packing;
use kneser::solve::{solve_domination, solve_rho2, SolveStatus, SolverConfig};
use kneser::{KneserParams, Vertex, VertexFamily};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn params_strategy() -> impl Strategy<Value = KneserParams> {
    (2u32..=4).prop_flat_map(|r| (2 * r + 1..=2 * r + 4).prop_map(move |n| KneserParams::new(n, r).unwrap()))
}

fn family_strategy() -> impl Strategy<Value = VertexFamily> {
    params_strategy().prop_flat_map(|p| {
        let all: Vec<Vertex> = p.vertices().collect();
        let max = all.len().min(12);
        subsequence(all, 1..=max).prop_map(move |m| VertexFamily::new(p, m).unwrap())
    })
}

fn valid(kind: InvariantKind, d: &VertexFamily, k: u32) -> bool {
    verify(kind, d, k).map(|r| r.valid).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn occurrences_sum_to_r_times_size(d in family_strategy()) {
        let total: u32 = d.occurrences().iter().sum();
        prop_assert_eq!(total, d.params().r() * d.len() as u32);
    }

    #[test]
    fn adjacency_and_distance_are_symmetric(d in family_strategy()) {
        let p = d.params();
        for &u in d.members() {
            for &v in d.members() {
                prop_assert_eq!(p.is_adjacent(u, v).unwrap(), p.is_adjacent(v, u).unwrap());
                prop_assert_eq!(p.distance_at_most_2(u, v).unwrap(), p.distance_at_most_2(v, u).unwrap());
            }
        }
    }

    #[test]
    fn domination_kinds_nest(d in family_strategy(), k in 1u32..=3) {
        if valid(InvariantKind::KTupleTotal, &d, k) {
            prop_assert!(valid(InvariantKind::KTuple, &d, k));
        }
        if valid(InvariantKind::KTuple, &d, k) {
            prop_assert!(valid(InvariantKind::KDom, &d, k));
        }
    }

    #[test]
    fn supersets_stay_dominating(d in family_strategy(), k in 1u32..=2, extra in 0usize..1000) {
        let p = d.params();
        let outside: Vec<Vertex> = p.vertices().filter(|v| !d.contains(*v)).collect();
        prop_assume!(!outside.is_empty());
        let mut members = d.members().to_vec();
        members.push(outside[extra % outside.len()]);
        let bigger = VertexFamily::new(p, members).unwrap();
        for kind in InvariantKind::DOMINATION {
            if valid(kind, &d, k) {
                prop_assert!(valid(kind, &bigger, k), "{:?}", kind);
            }
        }
    }

    #[test]
    fn member_order_is_irrelevant(d in family_strategy(), k in 1u32..=2) {
        let mut members = d.members().to_vec();
        members.reverse();
        let reversed = VertexFamily::new(d.params(), members).unwrap();
        for kind in InvariantKind::DOMINATION {
            prop_assert_eq!(valid(kind, &d, k), valid(kind, &reversed, k));
        }
        prop_assert_eq!(verify_2_packing(&d).valid, verify_2_packing(&reversed).valid);
    }

    #[test]
    fn packing_subfamilies_stay_packings(r in 4u32..=8, keep in proptest::collection::vec(any::<bool>(), 12)) {
        let s = table3_packing(r).unwrap();
        let members: Vec<Vertex> = s.members().iter().zip(keep.iter().cycle()).filter(|(_, &k)| k).map(|(v, _)| *v).collect();
        let sub = VertexFamily::new(s.params(), members).unwrap();
        prop_assert!(verify_2_packing(&sub).valid);
    }
}

#[test]
fn values_do_not_depend_on_thread_count() {
    let base = SolverConfig::default()
        .search_only()
        .with_timeout(Duration::from_secs(60));
    for (n, r, kind, k) in [
        (7, 2, InvariantKind::KDom, 2),
        (6, 2, InvariantKind::KTupleTotal, 2),
        (7, 3, InvariantKind::KDom, 1),
        (7, 3, InvariantKind::KTuple, 2),
    ] {
        let p = KneserParams::new(n, r).unwrap();
        let one = solve_domination(p, kind, k, &base).unwrap();
        let again = solve_domination(p, kind, k, &base).unwrap();
        assert_eq!(
            one.witness, again.witness,
            "single-thread witness must be deterministic"
        );
        for threads in [2, 4] {
            let cfg = SolverConfig {
                thread_count: threads,
                ..base.clone()
            };
            let many = solve_domination(p, kind, k, &cfg).unwrap();
            assert_eq!(
                (one.status, one.value),
                (many.status, many.value),
                "K({n},{r}) {kind:?} threads={threads}"
            );
        }
    }
    let p = KneserParams::new(7, 3).unwrap();
    let one = solve_rho2(p, &base).unwrap();
    let many = solve_rho2(
        p,
        &SolverConfig {
            thread_count: 4,
            ..base.clone()
        },
    )
    .unwrap();
    assert_eq!((one.status, one.value), (many.status, many.value));
    assert_eq!(one.status, SolveStatus::Optimal);
}

#[test]
fn symmetry_breaking_does_not_change_values() {
    let on = SolverConfig::default().search_only();
    let off = SolverConfig {
        symmetry_breaking: false,
        ..on.clone()
    };
    for n in 5..=8 {
        let p = KneserParams::new(n, 2).unwrap();
        for kind in InvariantKind::DOMINATION {
            let a = solve_domination(p, kind, 2, &on).unwrap();
            let b = solve_domination(p, kind, 2, &off).unwrap();
            assert_eq!((a.status, a.value), (b.status, b.value), "K({n},2) {kind:?}");
        }
    }
}
