//! Simplicial homology over GF(p): boundary matrices, Betti numbers,
//! homology bases with explicit cycle representatives, induced maps of
//! inclusions, and the manifold / orientability gates.
//!
//! Bases of chain groups are the lexicographically ordered face lists, and
//! all elimination is deterministic, so homology bases, induced-map
//! matrices, and everything computed from them are bit-reproducible.

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, PrimeField, SubquotientBasis};

/// Betti numbers `β_q` for `q = -1 ..= dim`. Degree `-1` is nonzero only
/// for the reduced homology of the empty complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    dims: Vec<usize>, // index 0 holds β_{-1}
}

impl BettiVector {
    pub(crate) fn from_offset_vec(dims: Vec<usize>) -> Self {
        BettiVector { dims }
    }

    pub fn get(&self, q: i32) -> usize {
        if q < -1 {
            return 0;
        }
        self.dims.get((q + 1) as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Largest degree with a stored entry (the complex dimension).
    pub fn max_degree(&self) -> i32 {
        self.dims.len() as i32 - 2
    }

    /// Nonzero entries as `(q, dim)`, ascending.
    pub fn nonzero(&self) -> Vec<(i32, usize)> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (i as i32 - 1, d))
            .collect()
    }

    /// Converts reduced Betti numbers of a complex into unreduced ones:
    /// the empty complex has no unreduced homology, otherwise only `β_0`
    /// gains the extra component class.
    pub fn to_unreduced(&self) -> BettiVector {
        if self.get(-1) > 0 {
            // the empty complex {∅}
            return BettiVector { dims: vec![0] };
        }
        let mut dims = self.dims.clone();
        if dims.len() < 2 {
            dims.resize(2, 0);
        }
        dims[0] = 0;
        dims[1] += 1;
        BettiVector { dims }
    }
}

/// The simplicial chain complex of `K` over GF(p), reduced or unreduced.
///
/// Face lists per degree are in lexicographic order; the boundary of a face
/// deletes its `i`-th smallest vertex with sign `(-1)^i`. The reduced
/// variant has `C_{-1} = GF(p)` spanned by the empty face and the
/// augmentation as `∂_0`.
pub struct ChainComplex {
    field: PrimeField,
    reduced: bool,
    dim: i32,
    faces: Vec<Vec<VertexSet>>, // faces[d+1] = faces of dimension d
    boundaries: Vec<FieldMatrix>, // boundaries[q] = ∂_q for q = 0..=dim
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex, field: PrimeField, reduced: bool) -> Self {
        let dim = k.dim();
        let mut faces = Vec::with_capacity((dim + 2) as usize);
        for d in -1..=dim {
            faces.push(k.faces_of_dim(d));
        }
        let mut cc = ChainComplex { field, reduced, dim, faces, boundaries: Vec::new() };
        for q in 0..=dim {
            let m = cc.build_boundary(q);
            cc.boundaries.push(m);
        }
        cc
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// Faces of dimension `q` (the chain basis), lex ordered.
    pub fn faces(&self, q: i32) -> &[VertexSet] {
        if q < -1 || q > self.dim {
            return &[];
        }
        &self.faces[(q + 1) as usize]
    }

    pub fn chain_dim(&self, q: i32) -> usize {
        if q == -1 {
            return if self.reduced { 1 } else { 0 };
        }
        self.faces(q).len()
    }

    /// The boundary matrix `∂_q : C_q -> C_{q-1}`; zero-shaped outside the
    /// support of the complex.
    pub fn boundary(&self, q: i32) -> FieldMatrix {
        if (0..=self.dim).contains(&q) {
            self.boundaries[q as usize].clone()
        } else {
            FieldMatrix::zeros(self.field, self.chain_dim(q - 1), self.chain_dim(q))
        }
    }

    fn build_boundary(&self, q: i32) -> FieldMatrix {
        let cols = self.faces(q);
        let mut m = FieldMatrix::zeros(self.field, self.chain_dim(q - 1), cols.len());
        if q == 0 {
            if self.reduced {
                for c in 0..cols.len() {
                    m.set(0, c, 1);
                }
            }
            return m;
        }
        let rows = self.faces(q - 1);
        for (c, &sigma) in cols.iter().enumerate() {
            for (i, v) in sigma.iter().enumerate() {
                let tau = sigma.remove(v);
                let r = rows.binary_search(&tau).expect("face boundary stays in the complex");
                let sign = if i % 2 == 0 { 1 } else { self.field.neg(1) };
                m.set(r, c, sign);
            }
        }
        m
    }

    /// Betti numbers for `q = -1 ..= dim`.
    pub fn betti(&self) -> BettiVector {
        let ranks: Vec<usize> = (0..=self.dim).map(|q| self.boundary(q).rank()).collect();
        let rank_of = |q: i32| -> usize {
            if (0..=self.dim).contains(&q) {
                ranks[q as usize]
            } else {
                0
            }
        };
        let mut dims = Vec::with_capacity((self.dim + 2) as usize);
        for q in -1..=self.dim.max(-1) {
            let b = self.chain_dim(q) - rank_of(q) - rank_of(q + 1);
            dims.push(b);
        }
        BettiVector::from_offset_vec(dims)
    }

    /// Deterministic homology basis in degree `q`.
    pub fn basis(&self, q: i32) -> HomologyBasis {
        let inner = SubquotientBasis::new(&self.boundary(q), &self.boundary(q + 1));
        HomologyBasis { degree: q, faces: self.faces(q).to_vec(), inner }
    }
}

/// A homology basis: cycle representatives (columns, in the lex face basis)
/// plus a coordinate map sending any cycle to its class coordinates.
pub struct HomologyBasis {
    degree: i32,
    faces: Vec<VertexSet>,
    inner: SubquotientBasis,
}

impl HomologyBasis {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    pub fn faces(&self) -> &[VertexSet] {
        &self.faces
    }

    pub fn representatives(&self) -> &FieldMatrix {
        self.inner.representatives()
    }

    /// Sparse form of the `i`-th representative cycle.
    pub fn representative_chain(&self, i: usize) -> Vec<(VertexSet, u32)> {
        let col = self.inner.representatives().col(i);
        self.faces
            .iter()
            .zip(col)
            .filter(|(_, v)| *v != 0)
            .map(|(&f, v)| (f, v))
            .collect()
    }

    /// Class coordinates of a cycle chain; rejects non-cycles.
    pub fn coordinates(&self, chain: &[u32]) -> Result<Vec<u32>> {
        self.inner
            .class_of(chain)
            .ok_or(Error::NotACycle { degree: self.degree })
    }
}

/// Matrix of `H_q(K_J) -> H_q(K_L)` between two deterministic bases, where
/// the source complex's faces all appear among the target's (`J ⊆ L`).
/// Column `i` holds the coordinates of the `i`-th source representative.
pub fn induced_map_between(src: &HomologyBasis, dst: &HomologyBasis) -> FieldMatrix {
    let field = src.representatives().field();
    let mut out = FieldMatrix::zeros(field, dst.rank(), src.rank());
    if src.rank() == 0 {
        return out;
    }
    for i in 0..src.rank() {
        let mut chain = vec![0u32; dst.faces().len()];
        for (face, coeff) in src.representative_chain(i) {
            let pos = dst
                .faces()
                .binary_search(&face)
                .expect("source face must appear in the target complex");
            chain[pos] = coeff;
        }
        let coords = dst
            .coordinates(&chain)
            .expect("a cycle re-indexed along an inclusion stays a cycle");
        out.set_col(i, &coords);
    }
    out
}

/// Boundary matrix of `∂_q` in the lex face bases.
pub fn boundary_matrix(k: &SimplicialComplex, q: i32, field: PrimeField, reduced: bool) -> FieldMatrix {
    ChainComplex::new(k, field, reduced).boundary(q)
}

/// Betti numbers of `K` over GF(p).
pub fn betti_numbers(k: &SimplicialComplex, field: PrimeField, reduced: bool) -> BettiVector {
    ChainComplex::new(k, field, reduced).betti()
}

/// Deterministic homology basis of `K` in degree `q`.
pub fn homology_basis(k: &SimplicialComplex, q: i32, field: PrimeField, reduced: bool) -> HomologyBasis {
    ChainComplex::new(k, field, reduced).basis(q)
}

/// Matrix of the map `H_q(K_J) -> H_q(K_L)` induced by `K_J ⊆ K_L`.
pub fn induced_map(
    k: &SimplicialComplex,
    j: VertexSet,
    l: VertexSet,
    q: i32,
    field: PrimeField,
    reduced: bool,
) -> FieldMatrix {
    assert!(j.is_subset_of(l), "induced maps require J ⊆ L");
    assert!(l.is_subset_of(k.universe()));
    let src = homology_basis(&k.full_subcomplex(j), q, field, reduced);
    let dst = homology_basis(&k.full_subcomplex(l), q, field, reduced);
    induced_map_between(&src, &dst)
}

/// Matrix of the restriction `H^q(K_L) -> H^q(K_J)` in the dual bases of
/// the deterministic homology bases: the transpose of [`induced_map`].
pub fn cohomology_restriction(
    k: &SimplicialComplex,
    j: VertexSet,
    l: VertexSet,
    q: i32,
    field: PrimeField,
) -> FieldMatrix {
    induced_map(k, j, l, q, field, false).transpose()
}

/// `K` is GF(p)-orientable: pure of some dimension `n` with `β_n > 0`.
pub fn is_f_orientable(k: &SimplicialComplex, field: PrimeField) -> Result<bool> {
    if !k.is_pure() || k.dim() < 0 {
        return Err(Error::NotPure);
    }
    Ok(betti_numbers(k, field, false).get(k.dim()) > 0)
}

/// Decidable stand-in for "triangulated closed manifold": `K` is pure of
/// dimension `n` and the link of every nonempty face `σ` has the reduced
/// GF(p)-homology of a sphere `S^{n-|σ|}`.
pub fn is_closed_homology_manifold(k: &SimplicialComplex, field: PrimeField) -> bool {
    if k.dim() < 0 || !k.is_pure() {
        return false;
    }
    let n = k.dim();
    for d in 0..=n {
        for sigma in k.faces_of_dim(d) {
            let link = k.link(sigma).expect("enumerated faces are in the complex");
            let betti = betti_numbers(&link, field, true);
            let sphere_dim = n - d - 1;
            let ok = (-1..=betti.max_degree().max(sphere_dim)).all(|q| {
                let want = if q == sphere_dim { 1 } else { 0 };
                betti.get(q) == want
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Gate shared by the manifold-only operations: returns the dimension `n`
/// or the first failing gate as an error.
pub fn manifold_gates(k: &SimplicialComplex, field: PrimeField) -> Result<i32> {
    if !is_closed_homology_manifold(k, field) {
        return Err(Error::NotAManifold { p: field.p() });
    }
    if !is_f_orientable(k, field)? {
        return Err(Error::NotOrientable { p: field.p() });
    }
    Ok(k.dim())
}
