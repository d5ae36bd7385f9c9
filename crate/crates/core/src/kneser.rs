//! Data model for Kneser graphs K(n,r).
//!
//! Vertices are r-subsets of the ground set [n] = {1, ..., n}, stored as a
//! `u128` bit mask where bit `x - 1` encodes element `x`. Two vertices are
//! adjacent exactly when their subsets are disjoint. Elements are 1-based at
//! every public boundary; bit positions never leak.
//!
//! Numeric order on the masks is colexicographic order on the subsets, and
//! every enumeration in the crate follows it.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{param_err, Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND_SET: u32 = 128;

/// Default bound on `binomial(n, r)` for operations that enumerate every vertex.
pub const DEFAULT_VERTEX_CEILING: u64 = 5_000_000;

/// Environment variable overriding [`DEFAULT_VERTEX_CEILING`].
pub const VERTEX_CEILING_ENV: &str = "KNESER_VERTEX_CEILING";

/// Vertex ceiling from the environment, falling back to the default.
pub fn default_vertex_ceiling() -> u64 {
    std::env::var(VERTEX_CEILING_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_CEILING)
}

/// `binomial(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        // d divides num because acc * num is divisible by den and gcd(a, d) = 1
        acc = match a.checked_mul(num / d) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Mask with bits `0..n` set.
fn low_mask(n: u32) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the 1-based elements of a mask in increasing order.
#[derive(Clone, Debug)]
pub struct Elements(u128);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let pos = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(pos + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// An r-subset of [n]: one vertex of K(n,r).
///
/// A `Vertex` does not carry its parameters; [`KneserParams::check_vertex`]
/// validates one against a particular graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vertex(u128);

impl Vertex {
    pub const fn from_bits(bits: u128) -> Self {
        Vertex(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// Builds a vertex from 1-based elements without checking its size.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u128;
        for x in elements {
            if x == 0 || x > MAX_GROUND_SET {
                return param_err(format!("element {x} outside [1..{MAX_GROUND_SET}]"));
            }
            let b = 1u128 << (x - 1);
            if bits & b != 0 {
                return param_err(format!("element {x} repeated"));
            }
            bits |= b;
        }
        Ok(Vertex(bits))
    }

    /// The interval [lo..hi] of consecutive elements.
    pub fn interval(lo: u32, hi: u32) -> Self {
        debug_assert!(1 <= lo && lo <= hi + 1 && hi <= MAX_GROUND_SET);
        if hi < lo {
            return Vertex(0);
        }
        Vertex(low_mask(hi) & !low_mask(lo - 1))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: u32) -> bool {
        (1..=MAX_GROUND_SET).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> u32 {
        128 - self.0.leading_zeros()
    }

    pub fn is_disjoint(self, other: Vertex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersection_len(self, other: Vertex) -> u32 {
        (self.0 & other.0).count_ones()
    }

    pub fn union(self, other: Vertex) -> Vertex {
        Vertex(self.0 | other.0)
    }

    pub fn with(self, x: u32) -> Vertex {
        Vertex(self.0 | 1u128 << (x - 1))
    }

    pub fn without(self, x: u32) -> Vertex {
        Vertex(self.0 & !(1u128 << (x - 1)))
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len() as usize))?;
        for x in self.elements() {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

/// A set of ground-set elements, as returned by [`VertexFamily::occurrence_classes`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn full(n: u32) -> Self {
        ElementSet(low_mask(n))
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: u32) -> bool {
        Vertex(self.0).contains(x)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn first(self) -> Option<u32> {
        self.iter().next()
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The graph K(n,r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KneserParams {
    n: u32,
    r: u32,
}

impl KneserParams {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if r == 0 {
            return param_err("r must be positive");
        }
        if n > MAX_GROUND_SET {
            return param_err(format!("n = {n} exceeds the supported maximum {MAX_GROUND_SET}"));
        }
        if n < 2 * r {
            return param_err(format!("K({n},{r}) requires n >= 2r"));
        }
        Ok(KneserParams { n, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn vertex_count(&self) -> u128 {
        binomial(self.n, self.r)
    }

    /// K(n,r) is regular; every vertex has `binomial(n - r, r)` neighbors.
    pub fn min_degree(&self) -> u128 {
        binomial(self.n - self.r, self.r)
    }

    /// Vertex count as `usize`, or a capacity error above `ceiling`.
    pub fn ensure_enumerable(&self, ceiling: u64) -> Result<usize> {
        let count = self.vertex_count();
        if count > ceiling as u128 {
            return Err(Error::Capacity {
                what: "vertex count",
                requested: count,
                ceiling: ceiling as u128,
            });
        }
        Ok(count as usize)
    }

    /// True for 2r+1 <= n <= 3r-2, where distance >= 3 reduces to an
    /// intersection-size window.
    pub fn in_packing_window(&self) -> bool {
        2 * self.r < self.n && self.n + 2 <= 3 * self.r
    }

    /// Largest pairwise intersection allowed in a 2-packing, `(3r - 1) - n`,
    /// when [`in_packing_window`](Self::in_packing_window) holds.
    pub fn packing_intersection_cap(&self) -> Option<u32> {
        self.in_packing_window().then(|| 3 * self.r - 1 - self.n)
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.len() == self.r && v.bits() & !low_mask(self.n) == 0
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v.to_string(),
                n: self.n,
                r: self.r,
            })
        }
    }

    /// Validated vertex from 1-based elements.
    pub fn vertex(&self, elements: &[u32]) -> Result<Vertex> {
        let v = Vertex::from_elements(elements.iter().copied())?;
        self.check_vertex(v)?;
        Ok(v)
    }

    /// The vertex [1..r], first in colex order.
    pub fn first_vertex(&self) -> Vertex {
        Vertex(low_mask(self.r))
    }

    /// All vertices in colexicographic order.
    pub fn vertices(&self) -> VertexIter {
        VertexIter {
            next: Some(self.first_vertex().bits()),
            limit: low_mask(self.n),
        }
    }

    /// Vertices starting at colex rank `index`.
    pub fn vertices_from(&self, index: u64) -> VertexIter {
        let next = if (index as u128) < self.vertex_count() {
            Some(self.vertex_at(index).bits())
        } else {
            None
        };
        VertexIter {
            next,
            limit: low_mask(self.n),
        }
    }

    /// Colex rank of a vertex.
    pub fn rank(&self, v: Vertex) -> u64 {
        v.elements()
            .enumerate()
            .map(|(i, x)| binomial(x - 1, i as u32 + 1) as u64)
            .sum()
    }

    /// Vertex of colex rank `index`. `index` must be below the vertex count.
    pub fn vertex_at(&self, index: u64) -> Vertex {
        let mut rest = index as u128;
        let mut bits = 0u128;
        let mut hi = self.n;
        for i in (1..=self.r).rev() {
            // largest c < hi with binomial(c, i) <= rest
            let mut c = hi - 1;
            while binomial(c, i) > rest {
                c -= 1;
            }
            rest -= binomial(c, i);
            bits |= 1u128 << c;
            hi = c;
        }
        Vertex(bits)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u.is_disjoint(v))
    }

    /// Whether distinct `u`, `v` are at distance at most 2: adjacent, or both
    /// disjoint from some common r-subset of the complement of `u ∪ v`.
    pub fn distance_at_most_2(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.within_distance_2_unchecked(u, v))
    }

    pub(crate) fn within_distance_2_unchecked(&self, u: Vertex, v: Vertex) -> bool {
        u.is_disjoint(v) || self.n - u.union(v).len() >= self.r
    }
}

impl fmt::Display for KneserParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.n, self.r)
    }
}

/// Colex enumeration of r-subsets (Gosper's hack).
#[derive(Clone, Debug)]
pub struct VertexIter {
    next: Option<u128>,
    limit: u128,
}

impl Iterator for VertexIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let x = self.next?;
        let c = x & x.wrapping_neg();
        self.next = x.checked_add(c).and_then(|s| {
            let nx = (((s ^ x) >> 2) / c) | s;
            (nx & !self.limit == 0).then_some(nx)
        });
        Some(Vertex(x))
    }
}

/// Membership and neighbor counts of `u` against a slice of vertices.
fn count_disjoint(u: Vertex, members: &[Vertex]) -> usize {
    members.iter().filter(|v| v.is_disjoint(u)).count()
}

/// Occurrence classes X_a, X_a^>=, X_a^<= of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OccurrenceClasses {
    pub exactly: ElementSet,
    pub at_least: ElementSet,
    pub at_most: ElementSet,
}

/// A set of distinct vertices of K(n,r) (a candidate dominating set or
/// packing) with cached element occurrences `i_x`.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexFamily {
    params: KneserParams,
    members: Vec<Vertex>,
    occurrences: Vec<u32>,
}

impl VertexFamily {
    pub fn new(params: KneserParams, members: Vec<Vertex>) -> Result<Self> {
        for &v in &members {
            params.check_vertex(v)?;
        }
        let mut sorted = members.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0].to_string()));
        }
        let mut occurrences = vec![0u32; params.n() as usize];
        for v in &members {
            for x in v.elements() {
                occurrences[(x - 1) as usize] += 1;
            }
        }
        Ok(VertexFamily {
            params,
            members,
            occurrences,
        })
    }

    pub fn empty(params: KneserParams) -> Self {
        VertexFamily {
            params,
            members: Vec::new(),
            occurrences: vec![0; params.n() as usize],
        }
    }

    /// Family from 1-based element lists.
    pub fn from_sets<S: AsRef<[u32]>>(params: KneserParams, sets: &[S]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| params.vertex(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, members)
    }

    pub fn params(&self) -> KneserParams {
        self.params
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(&v)
    }

    /// `i_x`: number of members containing element `x` (1-based).
    pub fn occurrence(&self, x: u32) -> u32 {
        assert!(
            (1..=self.params.n()).contains(&x),
            "element {x} outside [1..{}]",
            self.params.n()
        );
        self.occurrences[(x - 1) as usize]
    }

    /// Occurrences indexed by `x - 1`.
    pub fn occurrences(&self) -> &[u32] {
        &self.occurrences
    }

    pub fn occurrence_classes(&self, a: u32) -> OccurrenceClasses {
        let mut classes = OccurrenceClasses {
            exactly: ElementSet::default(),
            at_least: ElementSet::default(),
            at_most: ElementSet::default(),
        };
        for (i, &c) in self.occurrences.iter().enumerate() {
            let b = 1u128 << i;
            if c == a {
                classes.exactly.0 |= b;
            }
            if c >= a {
                classes.at_least.0 |= b;
            }
            if c <= a {
                classes.at_most.0 |= b;
            }
        }
        classes
    }

    /// |N[u] ∩ D|.
    pub fn closed_neighbor_count(&self, u: Vertex) -> Result<usize> {
        self.params.check_vertex(u)?;
        Ok(count_disjoint(u, &self.members) + usize::from(self.contains(u)))
    }

    /// |N(u) ∩ D|.
    pub fn open_neighbor_count(&self, u: Vertex) -> Result<usize> {
        self.params.check_vertex(u)?;
        Ok(count_disjoint(u, &self.members))
    }

    /// True when members are pairwise disjoint, i.e. a clique of K(n,r).
    pub fn is_clique(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, u)| self.members[i + 1..].iter().all(|v| u.is_disjoint(*v)))
    }

    /// Intersection sizes `|u_i ∩ u_j|` for `i < j`, in member order.
    pub fn pairwise_intersections(&self) -> Vec<u32> {
        let m = &self.members;
        let mut out = Vec::with_capacity(m.len() * m.len().saturating_sub(1) / 2);
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                out.push(m[i].intersection_len(m[j]));
            }
        }
        out
    }

    /// The same subsets read as vertices of another Kneser graph.
    pub fn reinterpret(&self, params: KneserParams) -> Result<Self> {
        Self::new(params, self.members.clone())
    }

    /// Copy with members sorted in colex order.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.members.sort_unstable();
        out
    }

    pub fn to_sets(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|v| v.to_vec()).collect()
    }
}

impl fmt::Debug for VertexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.params)?;
        f.debug_list().entries(&self.members).finish()
    }
}
