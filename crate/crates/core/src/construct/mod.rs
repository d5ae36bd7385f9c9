//! Explicit families: clique and boundary dominating sets, small 2-packings
//! of K(3r-t, r), lifts of packings to larger Kneser graphs, and the
//! tabulated packings of K(3r-3, r).
//!
//! Every builder returns a [`VertexFamily`]; [`ConstructionSpec::designated_check`]
//! names the certificate each family is expected to pass.

mod normalize;
mod perturb;
mod table3;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use normalize::{check_normalizable, normalize_packing, normalize_packing_traced, Normalized};
pub use perturb::{merge_into_free_element, pairwise_design, perturbed_packing, relabel};
pub use table3::{table3_packing, table3_rows};

use crate::certify::InvariantKind;
use crate::error::{param_err, Error, Result};
use crate::kneser::{KneserParams, Vertex, VertexFamily, MAX_GROUND_SET};

/// `k + r` pairwise disjoint r-sets `[(i-1)r+1 .. ir]` in K(n,r), n >= r(k+r).
pub fn disjoint_clique(k: u32, r: u32, n: u32) -> Result<VertexFamily> {
    if k == 0 || r == 0 {
        return param_err("k and r must be positive");
    }
    if n < r * (k + r) {
        return param_err(format!("disjoint clique needs n >= r(k+r) = {}, got {n}", r * (k + r)));
    }
    let params = KneserParams::new(n, r)?;
    let members = (1..=k + r).map(|i| Vertex::interval((i - 1) * r + 1, i * r)).collect();
    VertexFamily::new(params, members)
}

/// k-tuple total dominating set of size k+r+1 in K(r(k+r)-1, r): three
/// pairwise intersecting sets on [2r-1] plus k+r-2 disjoint blocks above.
pub fn gamma_kt_boundary(k: u32, r: u32) -> Result<VertexFamily> {
    if k < 2 {
        return param_err("boundary construction needs k >= 2");
    }
    if r < 2 {
        return param_err("boundary construction needs r >= 2");
    }
    let n = r * (k + r) - 1;
    let params = KneserParams::new(n, r)?;
    let mut members = vec![
        Vertex::interval(1, r),
        Vertex::interval(1, r - 1).with(r + 1),
        Vertex::interval(r, 2 * r - 1),
    ];
    members.extend((2..k + r).map(|j| Vertex::interval(j * r, (j + 1) * r - 1)));
    VertexFamily::new(params, members)
}

fn check_t_range(r: u32, t: u32) -> Result<KneserParams> {
    if t < 2 || t + 1 > r {
        return param_err(format!("need 2 <= t <= r - 1, got r = {r}, t = {t}"));
    }
    KneserParams::new(3 * r - t, r)
}

/// Three-member 2-packing of K(3r-t, r) with intersections t-1, 1, 1.
pub fn rho3_witness(r: u32, t: u32) -> Result<VertexFamily> {
    let params = check_t_range(r, t)?;
    let n = params.n();
    let u1 = Vertex::interval(1, r);
    let u2 = Vertex::interval(1, t - 1).union(Vertex::interval(r + 1, 2 * r - t + 1));
    let u3 = Vertex::interval(2 * r - t + 2, n).with(1);
    VertexFamily::new(params, vec![u1, u2, u3])
}

/// Four-member 2-packing of K(3r-t, r) in which every two members share
/// exactly t-1 elements, for (r+5)/5 < t <= (2r+9)/9.
///
/// Blocks are laid out left to right as A12, A13, A14, A23, A24, A34, B1..B4
/// with |Aij| = t-1 and |Bi| = r - 3(t-1); member i is the union of the
/// blocks carrying its index.
pub fn rho4_witness(r: u32, t: u32) -> Result<VertexFamily> {
    let params = check_t_range(r, t)?;
    if 5 * t <= r + 5 || 9 * t > 2 * r + 9 {
        return param_err(format!("need (r+5)/5 < t <= (2r+9)/9, got r = {r}, t = {t}"));
    }
    let shared = t - 1;
    let own = r - 3 * shared;
    let used = 6 * shared + 4 * own;
    assert!(
        used <= params.n(),
        "blocks need {used} elements, only {} available",
        params.n()
    );

    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut members = [Vertex::default(); 4];
    let mut next = 1;
    let mut block = |len: u32| {
        let b = Vertex::interval(next, next + len - 1);
        next += len;
        b
    };
    for (i, j) in pairs {
        let b = block(shared);
        members[i] = members[i].union(b);
        members[j] = members[j].union(b);
    }
    for m in members.iter_mut() {
        *m = m.union(block(own));
    }
    VertexFamily::new(params, members.to_vec())
}

/// Lifts a 2-packing of the odd graph K(2r+1, r) to K(n+2a, r+a): each
/// member spawns two sets, one padded with [n+1..n+a] and one with
/// [n+a+1..n+2a].
pub fn doubling_lift(s: &VertexFamily, a: u32) -> Result<VertexFamily> {
    let params = s.params();
    let (n, r) = (params.n(), params.r());
    if n != 2 * r + 1 {
        return param_err(format!("doubling lift needs an odd graph K(2r+1, r), got {params}"));
    }
    if a < 2 {
        return param_err("doubling lift needs a >= 2");
    }
    if n + 2 * a > MAX_GROUND_SET {
        return param_err(format!("lifted ground set n + 2a = {} is too large", n + 2 * a));
    }
    let target = KneserParams::new(n + 2 * a, r + a)?;
    let low = Vertex::interval(n + 1, n + a);
    let high = Vertex::interval(n + a + 1, n + 2 * a);
    let members = s.members().iter().flat_map(|v| [v.union(low), v.union(high)]).collect();
    VertexFamily::new(target, members)
}

/// Adds the new element n+1 to every member, moving a 2-packing of K(n,r)
/// to K(n+1, r+1).
pub fn diagonal_lift(s: &VertexFamily) -> Result<VertexFamily> {
    let params = s.params();
    let (n, r) = (params.n(), params.r());
    if n < 2 * r + 1 {
        return param_err(format!("diagonal lift needs n >= 2r + 1, got {params}"));
    }
    if n + 1 > MAX_GROUND_SET {
        return param_err("lifted ground set is too large");
    }
    let target = KneserParams::new(n + 1, r + 1)?;
    let members = s.members().iter().map(|v| v.with(n + 1)).collect();
    VertexFamily::new(target, members)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionName {
    DisjointClique,
    GammaKtBoundary,
    Rho3Witness,
    Rho4Witness,
    DoublingLift,
    DiagonalLift,
    Normalize4,
    Normalize5,
    TablePacking,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 9] = [
        ConstructionName::DisjointClique,
        ConstructionName::GammaKtBoundary,
        ConstructionName::Rho3Witness,
        ConstructionName::Rho4Witness,
        ConstructionName::DoublingLift,
        ConstructionName::DiagonalLift,
        ConstructionName::Normalize4,
        ConstructionName::Normalize5,
        ConstructionName::TablePacking,
    ];

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            ConstructionName::DisjointClique => "disjoint_clique",
            ConstructionName::GammaKtBoundary => "gamma_kt_boundary",
            ConstructionName::Rho3Witness => "rho3",
            ConstructionName::Rho4Witness => "rho4",
            ConstructionName::DoublingLift => "doubling_lift",
            ConstructionName::DiagonalLift => "diagonal_lift",
            ConstructionName::Normalize4 => "normalize4",
            ConstructionName::Normalize5 => "normalize5",
            ConstructionName::TablePacking => "table3",
        }
    }

    /// Whether the construction transforms an input family.
    pub fn needs_input(self) -> bool {
        matches!(
            self,
            ConstructionName::DoublingLift
                | ConstructionName::DiagonalLift
                | ConstructionName::Normalize4
                | ConstructionName::Normalize5
        )
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = match s {
            "rho3_witness" => ConstructionName::Rho3Witness,
            "rho4_witness" => ConstructionName::Rho4Witness,
            "table3_packing" | "table_packing" => ConstructionName::TablePacking,
            other => match ConstructionName::ALL.iter().find(|c| c.cli_name() == other) {
                Some(c) => *c,
                None => return param_err(format!("unknown construction '{other}'")),
            },
        };
        Ok(name)
    }
}

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20240601;

/// A named construction with its integer parameters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub name: Option<ConstructionName>,
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub n: Option<u32>,
    pub t: Option<u32>,
    pub a: Option<u32>,
    /// Seed for the generated input of a normalization without `--input`.
    pub seed: Option<u64>,
}

impl ConstructionSpec {
    pub fn new(name: ConstructionName) -> Self {
        ConstructionSpec {
            name: Some(name),
            ..Default::default()
        }
    }

    fn need(&self, value: Option<u32>, label: &str) -> Result<u32> {
        value.ok_or_else(|| {
            Error::Parameter(format!(
                "construction {} needs --{label}",
                self.name_or_err().map_or("?", |n| n.cli_name())
            ))
        })
    }

    fn name_or_err(&self) -> Result<ConstructionName> {
        self.name
            .ok_or_else(|| Error::Parameter("construction name missing".into()))
    }

    /// Builds the family. Lifts and normalizations transform `input`.
    pub fn build(&self, input: Option<&VertexFamily>) -> Result<VertexFamily> {
        let name = self.name_or_err()?;
        let given = input;
        let input = || given.ok_or_else(|| Error::Parameter(format!("construction {name} needs an input family")));
        match name {
            ConstructionName::DisjointClique => {
                let (k, r) = (self.need(self.k, "k")?, self.need(self.r, "r")?);
                let n = self.n.unwrap_or(r * (k + r));
                disjoint_clique(k, r, n)
            }
            ConstructionName::GammaKtBoundary => gamma_kt_boundary(self.need(self.k, "k")?, self.need(self.r, "r")?),
            ConstructionName::Rho3Witness => rho3_witness(self.need(self.r, "r")?, self.need(self.t, "t")?),
            ConstructionName::Rho4Witness => rho4_witness(self.need(self.r, "r")?, self.need(self.t, "t")?),
            ConstructionName::DoublingLift => doubling_lift(input()?, self.a.unwrap_or(2)),
            ConstructionName::DiagonalLift => diagonal_lift(input()?),
            ConstructionName::Normalize4 | ConstructionName::Normalize5 => {
                let want = if name == ConstructionName::Normalize4 { 4 } else { 5 };
                let generated;
                let s = match given {
                    Some(s) => s,
                    None => {
                        generated = self.normalization_input(want)?;
                        &generated
                    }
                };
                if s.len() != want as usize {
                    return param_err(format!("{name} needs a family of {want} members, got {}", s.len()));
                }
                normalize_packing(s)
            }
            ConstructionName::TablePacking => table3_packing(self.need(self.r, "r")?),
        }
    }

    /// Seeded packing with an element in as many members as the parameters
    /// allow, for normalizations run without an input family.
    pub fn normalization_input(&self, members: u32) -> Result<VertexFamily> {
        let (r, t) = (self.need(self.r, "r")?, self.need(self.t, "t")?);
        let seed = self.seed.unwrap_or(DEFAULT_SEED);
        let mut last = None;
        for holders in (3..=members as usize).rev() {
            match perturbed_packing(r, t, members, holders, seed) {
                Ok(s) => return Ok(s),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Parameter("no perturbed packing".into())))
    }

    /// Certificate the built family must pass, as (kind, k).
    pub fn designated_check(&self) -> Result<(InvariantKind, u32)> {
        Ok(match self.name_or_err()? {
            ConstructionName::DisjointClique | ConstructionName::GammaKtBoundary => {
                (InvariantKind::KTupleTotal, self.need(self.k, "k")?)
            }
            _ => (InvariantKind::TwoPacking, 0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{verify_2_packing, verify_k_tuple_total_dominating};

    #[test]
    fn disjoint_clique_examples() {
        let d = disjoint_clique(2, 2, 8).unwrap();
        assert_eq!(d.to_sets(), vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]]);
        assert!(d.is_clique());
        assert_eq!(disjoint_clique(2, 3, 15).unwrap().len(), 5);
        assert_eq!(disjoint_clique(1, 2, 6).unwrap().len(), 3);
        assert!(disjoint_clique(2, 2, 7).is_err());
    }

    #[test]
    fn boundary_sets() {
        let d = gamma_kt_boundary(2, 2).unwrap();
        assert_eq!(d.params().n(), 7);
        assert_eq!(
            d.to_sets(),
            vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![4, 5], vec![6, 7]]
        );
        assert!(verify_k_tuple_total_dominating(&d, 2).unwrap().valid);
        let d = gamma_kt_boundary(2, 3).unwrap();
        assert_eq!((d.params().n(), d.len()), (14, 6));
        let d = gamma_kt_boundary(3, 2).unwrap();
        assert_eq!((d.params().n(), d.len()), (9, 6));
        assert!(verify_k_tuple_total_dominating(&d, 3).unwrap().valid);
        assert!(gamma_kt_boundary(1, 2).is_err());
    }

    #[test]
    fn rho3_intersections() {
        for (r, t) in [(10, 3), (5, 2), (9, 2), (4, 3)] {
            let s = rho3_witness(r, t).unwrap();
            assert_eq!(s.params().n(), 3 * r - t);
            assert_eq!(s.pairwise_intersections(), vec![t - 1, 1, 1]);
            assert!(verify_2_packing(&s).valid);
        }
        assert!(rho3_witness(5, 1).is_err());
        assert!(rho3_witness(5, 5).is_err());
    }

    #[test]
    fn rho4_blocks() {
        for (r, t) in [(9, 3), (14, 4), (18, 5)] {
            let s = rho4_witness(r, t).unwrap();
            assert_eq!(s.params().n(), 3 * r - t);
            assert!(s.pairwise_intersections().iter().all(|&c| c == t - 1));
            assert!(verify_2_packing(&s).valid);
        }
        let s = rho4_witness(9, 3).unwrap();
        assert_eq!(s.members()[0].to_vec(), vec![1, 2, 3, 4, 5, 6, 13, 14, 15]);
        // t too small: the 3-packing range
        assert!(rho4_witness(10, 3).is_err());
        // t too large
        assert!(rho4_witness(9, 4).is_err());
    }

    #[test]
    fn lifts() {
        let s = table3_packing(4).unwrap();
        let up = diagonal_lift(&s).unwrap();
        assert_eq!((up.params().n(), up.params().r(), up.len()), (10, 5, 12));
        assert!(verify_2_packing(&up).valid);

        let p = KneserParams::new(7, 3).unwrap();
        let single = VertexFamily::new(p, vec![p.first_vertex()]).unwrap();
        assert_eq!(doubling_lift(&single, 2).unwrap().len(), 2);
        assert!(doubling_lift(&single, 1).is_err());
        assert_eq!(doubling_lift(&s, 2).unwrap().len(), 24);
        assert!(doubling_lift(&table3_packing(5).unwrap(), 2).is_err());

        let p = KneserParams::new(8, 4).unwrap();
        assert!(diagonal_lift(&VertexFamily::empty(p)).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let spec = ConstructionSpec {
            name: Some("rho3".parse().unwrap()),
            r: Some(10),
            t: Some(3),
            ..Default::default()
        };
        assert_eq!(spec.build(None).unwrap().len(), 3);
        assert_eq!(spec.designated_check().unwrap(), (InvariantKind::TwoPacking, 0));
        assert!("bogus".parse::<ConstructionName>().is_err());
        for name in ConstructionName::ALL {
            assert_eq!(name.cli_name().parse::<ConstructionName>().unwrap(), name);
        }
        let lift = ConstructionSpec::new(ConstructionName::DiagonalLift);
        assert!(lift.build(None).is_err());

        let norm = ConstructionSpec {
            r: Some(7),
            t: Some(3),
            ..ConstructionSpec::new(ConstructionName::Normalize4)
        };
        let out = norm.build(None).unwrap();
        assert!(out.occurrences().iter().all(|&c| c <= 2));
        assert!(norm
            .normalization_input(4)
            .unwrap()
            .occurrences()
            .iter()
            .any(|&c| c >= 3));
    }
}
