//! Functors on the subset lattice `2^[m]` valued in finite-dimensional
//! GF(p) vector spaces, their cochain complexes, poset cohomology, and the
//! double homology of `Z_K`.
//!
//! A functor stores its cover edges `(J, J∪{x})` only; longer maps compose
//! along any saturated chain, which is well-defined by the square
//! commutativity invariant. Summands inside each cochain block are ordered
//! lexicographically, fixing every matrix bit-exactly.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::{subsets_of_size, SimplicialComplex, SubsetLattice, VertexSet};
use crate::error::{Error, Result};
use crate::hochster::BigradedTable;
use crate::homology::{ChainComplex, HomologyBasis, induced_map_between};
use crate::linalg::{FieldMatrix, PrimeField, SubquotientBasis};

/// The sign `ε(J, x) = (-1)^{|{j ∈ J : j < x}|}` of the cochain
/// differential's `(J, J∪{x})` component.
pub fn sign_epsilon(j: VertexSet, x: u32) -> i32 {
    debug_assert!(!j.contains(x));
    let below = j.mask() & ((1u64 << (x - 1)) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A functor `2^universe -> finite-dimensional GF(p) vector spaces`:
/// a dimension per subset and a matrix per cover edge, with commuting
/// squares.
#[derive(Debug)]
pub struct PosetFunctor {
    field: PrimeField,
    lattice: SubsetLattice,
    dims: Vec<usize>,
    edges: HashMap<(u64, u32), FieldMatrix>,
}

impl PosetFunctor {
    /// Assembles a functor from per-subset dimensions and per-cover-edge
    /// matrices. Shapes are validated here; square commutativity is
    /// checked when a cochain complex is built (and eagerly, in debug
    /// builds, by the in-crate constructors).
    pub fn from_parts(
        field: PrimeField,
        universe: VertexSet,
        dims: Vec<usize>,
        edges: HashMap<(u64, u32), FieldMatrix>,
    ) -> Self {
        let lattice = SubsetLattice::new(universe);
        assert_eq!(dims.len(), lattice.size(), "one dimension per subset");
        for (&(jm, x), mat) in &edges {
            let j = VertexSet::from_mask(jm);
            assert!(j.is_subset_of(universe) && universe.contains(x) && !j.contains(x));
            let src = dims[lattice.index_of(j)];
            let dst = dims[lattice.index_of(j.insert(x))];
            assert_eq!((mat.rows(), mat.cols()), (dst, src), "edge shape at ({j}, {x})");
        }
        PosetFunctor { field, lattice, dims, edges }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn universe(&self) -> VertexSet {
        self.lattice.universe()
    }

    pub fn m(&self) -> u32 {
        self.universe().len()
    }

    pub fn dim(&self, j: VertexSet) -> usize {
        self.dims[self.lattice.index_of(j)]
    }

    /// The matrix of `F(J -> J∪{x})`.
    pub fn edge(&self, j: VertexSet, x: u32) -> &FieldMatrix {
        &self.edges[&(j.mask(), x)]
    }

    /// The matrix of `F(J -> L)` composed along the ascending-label chain.
    pub fn map_to(&self, j: VertexSet, l: VertexSet) -> FieldMatrix {
        assert!(j.is_subset_of(l));
        let mut cur = j;
        let mut acc = FieldMatrix::identity(self.field, self.dim(j));
        for x in l.difference(j).iter() {
            acc = self.edge(cur, x).mul(&acc);
            cur = cur.insert(x);
        }
        acc
    }

    /// Exhaustive square-commutativity check; returns the first failing
    /// square.
    pub fn check_commutativity_full(&self) -> Result<()> {
        let verts = self.universe().vertices();
        for idx in 0..self.lattice.size() {
            let j = self.lattice.subset_at(idx);
            for (a, &x) in verts.iter().enumerate() {
                if j.contains(x) {
                    continue;
                }
                for &y in &verts[a + 1..] {
                    if j.contains(y) {
                        continue;
                    }
                    self.check_square(j, x, y)?;
                }
            }
        }
        Ok(())
    }

    fn check_square(&self, j: VertexSet, x: u32, y: u32) -> Result<()> {
        let via_x = self.edge(j.insert(x), y).mul(self.edge(j, x));
        let via_y = self.edge(j.insert(y), x).mul(self.edge(j, y));
        if via_x == via_y {
            Ok(())
        } else {
            Err(Error::NonCommutingFunctor { j, x, y })
        }
    }

    /// Full check on small cubes, deterministic sampling on large ones.
    fn check_commutativity(&self) -> Result<()> {
        let m = self.m() as usize;
        if cfg!(debug_assertions) || self.lattice.size().saturating_mul(m * m) <= 1 << 22 {
            return self.check_commutativity_full();
        }
        let verts = self.universe().vertices();
        let mut state = 0x9e3779b97f4a7c15u64 ^ (self.lattice.size() as u64);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..8192 {
            let idx = (next() as usize) % self.lattice.size();
            let j = self.lattice.subset_at(idx);
            let free: Vec<u32> = verts.iter().copied().filter(|&v| !j.contains(v)).collect();
            if free.len() < 2 {
                continue;
            }
            let a = (next() as usize) % free.len();
            let mut b = (next() as usize) % free.len();
            if a == b {
                b = (b + 1) % free.len();
            }
            self.check_square(j, free[a].min(free[b]), free[a].max(free[b]))?;
        }
        Ok(())
    }

    #[cfg(debug_assertions)]
    fn debug_validate(&self) {
        if let Err(e) = self.check_commutativity_full() {
            panic!("constructed functor does not commute: {e}");
        }
    }

    #[cfg(not(debug_assertions))]
    fn debug_validate(&self) {}
}

/// The cochain complex `C^l(F) = ⊕_{|J|=l} F(J)` with the signed
/// sum-over-covers differential.
#[derive(Debug)]
pub struct CochainComplex {
    field: PrimeField,
    m: u32,
    summands: Vec<Vec<VertexSet>>, // per l, lex ordered
    offsets: Vec<HashMap<u64, usize>>,
    block_dims: Vec<usize>,
    differentials: Vec<FieldMatrix>, // d^l : C^l -> C^{l+1} for l = 0..=m
}

impl CochainComplex {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn block_dim(&self, l: u32) -> usize {
        self.block_dims.get(l as usize).copied().unwrap_or(0)
    }

    /// Summands of `C^l` in their block order.
    pub fn summands(&self, l: u32) -> &[VertexSet] {
        &self.summands[l as usize]
    }

    /// Offset of the `J` summand inside the `C^{|J|}` block.
    pub fn offset_of(&self, j: VertexSet) -> usize {
        self.offsets[j.len() as usize][&j.mask()]
    }

    /// `d^l`; zero-shaped outside `0..=m`.
    pub fn differential(&self, l: i32) -> FieldMatrix {
        if (0..=self.m as i32).contains(&l) {
            self.differentials[l as usize].clone()
        } else {
            let rows = if l + 1 >= 0 { self.block_dim((l + 1) as u32) } else { 0 };
            let cols = if l >= 0 { self.block_dim(l as u32) } else { 0 };
            FieldMatrix::zeros(self.field, rows, cols)
        }
    }

    /// `dim H^l` for `l = 0..=m`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.m as i32).map(|l| self.differential(l).rank()).collect();
        (0..=self.m as usize)
            .map(|l| {
                let below = if l == 0 { 0 } else { ranks[l - 1] };
                self.block_dims[l] - ranks[l] - below
            })
            .collect()
    }

    /// Deterministic basis of `H^l` with a coordinate map.
    pub fn cohomology_basis(&self, l: i32) -> SubquotientBasis {
        SubquotientBasis::new(&self.differential(l), &self.differential(l - 1))
    }
}

/// Builds `C^*(F)`, verifying square commutativity first and `d∘d = 0`
/// afterwards.
pub fn cochain_complex(f: &PosetFunctor) -> Result<CochainComplex> {
    f.check_commutativity()?;
    let m = f.m();
    let universe = f.universe();
    let mut summands = Vec::with_capacity(m as usize + 2);
    let mut offsets = Vec::with_capacity(m as usize + 1);
    let mut block_dims = Vec::with_capacity(m as usize + 1);
    for l in 0..=m {
        let js = subsets_of_size(universe, l);
        let mut off = HashMap::new();
        let mut total = 0usize;
        for &j in &js {
            off.insert(j.mask(), total);
            total += f.dim(j);
        }
        summands.push(js);
        offsets.push(off);
        block_dims.push(total);
    }
    summands.push(Vec::new());

    let mut differentials = Vec::with_capacity(m as usize + 1);
    for l in 0..=m as usize {
        let rows = block_dims.get(l + 1).copied().unwrap_or(0);
        let mut d = FieldMatrix::zeros(f.field(), rows, block_dims[l]);
        for j in &summands[l] {
            let src_off = offsets[l][&j.mask()];
            for x in universe.difference(*j).iter() {
                let up = j.insert(x);
                let dst_off = offsets[l + 1][&up.mask()];
                let edge = f.edge(*j, x);
                let sign = sign_epsilon(*j, x);
                for r in 0..edge.rows() {
                    for c in 0..edge.cols() {
                        let v = edge.get(r, c);
                        if v != 0 {
                            let signed = if sign == 1 { v } else { f.field().neg(v) };
                            d.set(dst_off + r, src_off + c, signed);
                        }
                    }
                }
            }
        }
        differentials.push(d);
    }
    let cc = CochainComplex { field: f.field(), m, summands, offsets, block_dims, differentials };
    for l in 0..m as i32 {
        assert!(
            cc.differential(l + 1).mul(&cc.differential(l)).is_zero(),
            "cochain differential does not square to zero at l={l}"
        );
    }
    Ok(cc)
}

/// `dim H^l(F)` for `l = 0..=m`.
pub fn cohomology_dims(f: &PosetFunctor) -> Result<Vec<usize>> {
    Ok(cochain_complex(f)?.cohomology_dims())
}

/// The constant functor `Δ(X)`: every subset maps to `X`, every edge to
/// the identity. Acyclic for m >= 1.
pub fn diagonal_functor(dim: usize, universe: VertexSet, field: PrimeField) -> PosetFunctor {
    let lattice = SubsetLattice::new(universe);
    let dims = vec![dim; lattice.size()];
    let mut edges = HashMap::new();
    for idx in 0..lattice.size() {
        let j = lattice.subset_at(idx);
        for x in universe.difference(j).iter() {
            edges.insert((j.mask(), x), FieldMatrix::identity(field, dim));
        }
    }
    let f = PosetFunctor::from_parts(field, universe, dims, edges);
    f.debug_validate();
    f
}

/// The face functor of `K`: one dimension on faces, zero elsewhere, edges
/// sending generator to generator. Its cochain complex is the reduced
/// simplicial cochain complex of `K` shifted up by one.
pub fn face_functor(k: &SimplicialComplex, field: PrimeField) -> PosetFunctor {
    let universe = k.universe();
    let lattice = SubsetLattice::new(universe);
    let dims: Vec<usize> = (0..lattice.size())
        .map(|idx| k.contains_face(lattice.subset_at(idx)) as usize)
        .collect();
    let mut edges = HashMap::new();
    for idx in 0..lattice.size() {
        let j = lattice.subset_at(idx);
        for x in universe.difference(j).iter() {
            let src = dims[idx];
            let dst = dims[lattice.index_of(j.insert(x))];
            let mut mat = FieldMatrix::zeros(field, dst, src);
            if src == 1 && dst == 1 {
                mat.set(0, 0, 1);
            }
            edges.insert((j.mask(), x), mat);
        }
    }
    let f = PosetFunctor::from_parts(field, universe, dims, edges);
    f.debug_validate();
    f
}

/// Homology bases of every full subcomplex in degree `q`; shared by the
/// functor constructors and the duality machinery.
pub(crate) fn homology_cube(
    k: &SimplicialComplex,
    q: i32,
    field: PrimeField,
    reduced: bool,
) -> Vec<HomologyBasis> {
    let lattice = SubsetLattice::new(k.universe());
    (0..lattice.size())
        .into_par_iter()
        .map(|idx| {
            let sub = k.full_subcomplex(lattice.subset_at(idx));
            ChainComplex::new(&sub, field, reduced).basis(q)
        })
        .collect()
}

pub(crate) fn functor_from_cube(
    k: &SimplicialComplex,
    field: PrimeField,
    bases: &[HomologyBasis],
) -> PosetFunctor {
    let universe = k.universe();
    let lattice = SubsetLattice::new(universe);
    let dims: Vec<usize> = bases.iter().map(|b| b.rank()).collect();
    let edge_keys: Vec<(usize, u32)> = (0..lattice.size())
        .flat_map(|idx| {
            let j = lattice.subset_at(idx);
            universe.difference(j).iter().map(move |x| (idx, x)).collect::<Vec<_>>()
        })
        .collect();
    let edges: HashMap<(u64, u32), FieldMatrix> = edge_keys
        .into_par_iter()
        .map(|(idx, x)| {
            let j = lattice.subset_at(idx);
            let up = lattice.index_of(j.insert(x));
            ((j.mask(), x), induced_map_between(&bases[idx], &bases[up]))
        })
        .collect();
    PosetFunctor::from_parts(field, universe, dims, edges)
}

/// The functor `J ↦ H_q(K_J)` with inclusion-induced edges.
pub fn homology_functor(
    k: &SimplicialComplex,
    q: i32,
    field: PrimeField,
    reduced: bool,
) -> PosetFunctor {
    let bases = homology_cube(k, q, field, reduced);
    let f = functor_from_cube(k, field, &bases);
    f.debug_validate();
    f
}

/// The functor `J ↦ H^{n-q}(K_{J^c})`, covariant on the subset lattice via
/// restriction of cohomology (transposes of the induced maps).
pub fn complement_cohomology_functor(
    k: &SimplicialComplex,
    q: i32,
    field: PrimeField,
) -> Result<PosetFunctor> {
    if !k.is_pure() || k.dim() < 0 {
        return Err(Error::NotPure);
    }
    let n = k.dim();
    let universe = k.universe();
    let lattice = SubsetLattice::new(universe);
    let bases = homology_cube(k, n - q, field, false);
    let dims: Vec<usize> = (0..lattice.size())
        .map(|idx| {
            let jc = lattice.subset_at(idx).complement_in(universe);
            bases[lattice.index_of(jc)].rank()
        })
        .collect();
    let edge_keys: Vec<(usize, u32)> = (0..lattice.size())
        .flat_map(|idx| {
            let j = lattice.subset_at(idx);
            universe.difference(j).iter().map(move |x| (idx, x)).collect::<Vec<_>>()
        })
        .collect();
    let edges: HashMap<(u64, u32), FieldMatrix> = edge_keys
        .into_par_iter()
        .map(|(idx, x)| {
            let j = lattice.subset_at(idx);
            let jc = j.complement_in(universe);
            let up_c = j.insert(x).complement_in(universe);
            let incl = induced_map_between(
                &bases[lattice.index_of(up_c)],
                &bases[lattice.index_of(jc)],
            );
            ((j.mask(), x), incl.transpose())
        })
        .collect();
    let f = PosetFunctor::from_parts(field, universe, dims, edges);
    f.debug_validate();
    Ok(f)
}

/// `G(J) := F(J^c)^*`: dimensions from the complement, edges the
/// transposes of the reversed edges.
pub fn complement_dualize(f: &PosetFunctor) -> PosetFunctor {
    let universe = f.universe();
    let lattice = SubsetLattice::new(universe);
    let dims: Vec<usize> = (0..lattice.size())
        .map(|idx| f.dim(lattice.subset_at(idx).complement_in(universe)))
        .collect();
    let mut edges = HashMap::new();
    for idx in 0..lattice.size() {
        let j = lattice.subset_at(idx);
        for x in universe.difference(j).iter() {
            let up_c = j.insert(x).complement_in(universe);
            edges.insert((j.mask(), x), f.edge(up_c, x).transpose());
        }
    }
    let g = PosetFunctor::from_parts(f.field(), universe, dims, edges);
    g.debug_validate();
    g
}

/// Double homology of `Z_K`: for each `q̃`, the poset cohomology of the
/// reduced homology functor `J ↦ H̃_q̃(K_J)`, re-indexed to the bidegrees
/// `(-k, 2l)` with `k = l - q̃ - 1`. Table keys store `(k, l)`.
pub fn double_homology(
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
) -> Result<BigradedTable> {
    if k.m() > m_cap {
        return Err(Error::BudgetExceeded { m: k.m(), cap: m_cap });
    }
    let mut table = BigradedTable::default();
    for q in -1..=k.dim() {
        let f = homology_functor(k, q, field, true);
        let dims = cochain_complex(&f)?.cohomology_dims();
        for (l, &d) in dims.iter().enumerate() {
            if d > 0 {
                let kk = l as i64 - q as i64 - 1;
                debug_assert!(kk >= 0);
                table.add(kk as u32, l as u32, d);
            }
        }
    }
    Ok(table)
}
