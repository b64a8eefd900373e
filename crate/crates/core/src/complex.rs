//! Finite simplicial complexes on a vertex set `{1, ..., m}`, `m <= 64`.
//!
//! Complexes are stored by their facets (inclusion-maximal faces) as an
//! antichain of bitmask vertex sets. Faces keep their global 1-based labels
//! throughout, so chains of a full subcomplex re-index into any larger
//! subcomplex without translation tables.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum supported vertex label; a vertex set is one machine word.
pub const MAX_VERTICES: u32 = 64;

/// A subset of `{1, ..., 64}` encoded as a bitmask (bit `v-1` for vertex `v`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// Builds a set from 1-based vertex labels, validating the range.
    pub fn from_vertices(vertices: &[u32], m: u32) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vertices {
            if v == 0 || v > m || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            mask |= 1 << (v - 1);
        }
        Ok(VertexSet(mask))
    }

    /// The full set `{1, ..., m}`.
    pub fn full(m: u32) -> Self {
        debug_assert!(m <= MAX_VERTICES);
        if m == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & (1 << (v - 1)) != 0
    }

    pub fn insert(self, v: u32) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(self.0 | (1 << (v - 1)))
    }

    pub fn remove(self, v: u32) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside `universe`.
    pub fn complement_in(self, universe: VertexSet) -> Self {
        VertexSet(universe.0 & !self.0)
    }

    /// 1-based vertex labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn vertices(self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn min_vertex(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() + 1)
        }
    }

    /// Position of `v` among the members of `self` (0-based), if present.
    pub fn rank_of(self, v: u32) -> Option<u32> {
        if !self.contains(v) {
            return None;
        }
        let below = self.0 & ((1u64 << (v - 1)) - 1);
        Some(below.count_ones())
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the ascending vertex lists, with a proper
    /// prefix sorting before its extensions. This is the single canonical
    /// face/summand order used for every basis downstream.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let low = diff & diff.wrapping_neg();
        // Members below `low` coincide. The set containing `low` has the
        // smaller next element, unless the other set has no members left
        // (then it is a strict prefix and sorts first).
        let tail_mask = !(low - 1) & !low;
        if self.0 & low != 0 {
            if other.0 & tail_mask == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 & tail_mask == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `universe` of cardinality `size`, in lexicographic order.
pub fn subsets_of_size(universe: VertexSet, size: u32) -> Vec<VertexSet> {
    let verts = universe.vertices();
    let n = verts.len();
    let k = size as usize;
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![VertexSet::EMPTY];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut mask = 0u64;
        for &i in &idx {
            mask |= 1 << (verts[i] - 1);
        }
        out.push(VertexSet(mask));
        // advance to the next combination in lex order
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != pos + n - k {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

/// Dense indexing of the subset lattice `2^universe`.
///
/// `index_of` compresses a subset's bits into `0..2^|universe|`; the map is
/// a bijection independent of evaluation order, so parallel sweeps keyed by
/// index are deterministic.
#[derive(Clone, Debug)]
pub struct SubsetLattice {
    universe: VertexSet,
    verts: Vec<u32>,
}

impl SubsetLattice {
    pub fn new(universe: VertexSet) -> Self {
        SubsetLattice {
            universe,
            verts: universe.vertices(),
        }
    }

    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    pub fn size(&self) -> usize {
        1usize << self.verts.len()
    }

    pub fn index_of(&self, j: VertexSet) -> usize {
        debug_assert!(j.is_subset_of(self.universe));
        let mut idx = 0usize;
        for (pos, &v) in self.verts.iter().enumerate() {
            if j.contains(v) {
                idx |= 1 << pos;
            }
        }
        idx
    }

    pub fn subset_at(&self, idx: usize) -> VertexSet {
        let mut mask = 0u64;
        for (pos, &v) in self.verts.iter().enumerate() {
            if idx & (1 << pos) != 0 {
                mask |= 1 << (v - 1);
            }
        }
        VertexSet(mask)
    }
}

/// A simplicial complex given by its facet antichain.
///
/// The empty complex `{∅}` (no vertices, no facets) is legal and arises as
/// the full subcomplex over `J = ∅`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    universe: VertexSet,
    facets: Vec<VertexSet>,
    dim: i32,
}

impl SimplicialComplex {
    /// Builds a complex on `{1, ..., m}` from a facet list.
    ///
    /// Dominated facets are dropped; every vertex of `1..=m` must be covered.
    pub fn from_facets(facet_list: &[VertexSet], m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::NoVertices);
        }
        if m > MAX_VERTICES {
            return Err(Error::VertexOutOfRange { vertex: m, m: MAX_VERTICES });
        }
        let universe = VertexSet::full(m);
        let mut covered = VertexSet::EMPTY;
        for &f in facet_list {
            if f.is_empty() {
                return Err(Error::EmptyFacet);
            }
            if !f.is_subset_of(universe) {
                let v = f.difference(universe).min_vertex().unwrap();
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            covered = covered.union(f);
        }
        if covered != universe {
            let v = universe.difference(covered).min_vertex().unwrap();
            return Err(Error::GhostVertex { vertex: v });
        }
        Ok(Self::from_facets_unchecked(facet_list, universe))
    }

    /// Normalizes an arbitrary facet list (over an arbitrary universe) into
    /// antichain form. Assumes range checks were already done.
    fn from_facets_unchecked(facet_list: &[VertexSet], universe: VertexSet) -> Self {
        let mut facets: Vec<VertexSet> = facet_list.iter().copied().filter(|f| !f.is_empty()).collect();
        facets.sort();
        facets.dedup();
        let kept: Vec<VertexSet> = facets
            .iter()
            .copied()
            .filter(|&f| !facets.iter().any(|&g| f != g && f.is_subset_of(g)))
            .collect();
        let dim = kept.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1);
        SimplicialComplex {
            universe,
            facets: kept,
            dim,
        }
    }

    /// Vertex universe of the complex (equals `{1..m}` for `from_facets`).
    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    /// Number of vertices.
    pub fn m(&self) -> u32 {
        self.universe.len()
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension; `-1` for the empty complex `{∅}`.
    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// All facets have the same cardinality (vacuously true when empty).
    pub fn is_pure(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.len() as i32 - 1 == self.dim)
    }

    /// Membership test: `σ ⊆` some facet. The empty face is always a member.
    pub fn contains_face(&self, sigma: VertexSet) -> bool {
        sigma.is_empty() || self.facets.iter().any(|&f| sigma.is_subset_of(f))
    }

    /// The full subcomplex `K_J = {σ ∈ K : σ ⊆ J}`, on vertex universe `J`.
    pub fn full_subcomplex(&self, j: VertexSet) -> SimplicialComplex {
        debug_assert!(j.is_subset_of(self.universe));
        let restricted: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|&f| f.intersection(j))
            .filter(|f| !f.is_empty())
            .collect();
        SimplicialComplex::from_facets_unchecked(&restricted, j)
    }

    /// Faces of dimension `d` (cardinality `d+1`) in lexicographic order.
    /// `d = -1` yields `[∅]`; `d < -1` yields nothing.
    pub fn faces_of_dim(&self, d: i32) -> Vec<VertexSet> {
        if d < -1 {
            return Vec::new();
        }
        if d == -1 {
            return vec![VertexSet::EMPTY];
        }
        let size = (d + 1) as u32;
        let mut set = BTreeSet::new();
        for &f in &self.facets {
            if f.len() >= size {
                for sub in subsets_of_size(f, size) {
                    set.insert(sub);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Number of faces per dimension, `d = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|d| self.faces_of_dim(d).len()).collect()
    }

    /// Euler characteristic `Σ (-1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// The link `{τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}` of a nonempty face, on the
    /// vertices it covers.
    pub fn link(&self, sigma: VertexSet) -> Result<SimplicialComplex> {
        if sigma.is_empty() || !self.contains_face(sigma) {
            return Err(Error::FaceNotInComplex(sigma));
        }
        let link_facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(**f))
            .map(|&f| f.difference(sigma))
            .filter(|f| !f.is_empty())
            .collect();
        let universe = link_facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, &f| acc.union(f));
        Ok(SimplicialComplex::from_facets_unchecked(&link_facets, universe))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(m={}, dim={}, facets=[", self.m(), self.dim)?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, "])")
    }
}
