//! Natural transformations between lattice functors, image and quotient
//! functors, snake-lemma connecting homomorphisms, and the rank-duality
//! report `dim H^l(H_q(K_-)) = dim H^{l-1}(H^{n-q}(K_{-^c}))` satisfied by
//! tight triangulations of closed orientable homology manifolds.

use std::sync::Arc;

use crate::complex::{SimplicialComplex, SubsetLattice, VertexSet};
use crate::error::{Error, Result};
use crate::homology::{induced_map_between, manifold_gates};
use crate::linalg::{image_and_coordinates, quotient_basis, FieldMatrix, LinearSolver, PrimeField};
use crate::poset::{
    cochain_complex, complement_cohomology_functor, diagonal_functor, functor_from_cube,
    homology_cube, CochainComplex, PosetFunctor,
};
use crate::tightness::{direct_check, Verdict};

/// A natural transformation between two functors on the same lattice:
/// one matrix per subset, commuting with every edge exactly.
pub struct NaturalTransformation {
    source: Arc<PosetFunctor>,
    target: Arc<PosetFunctor>,
    components: Vec<FieldMatrix>, // by lattice index
}

impl NaturalTransformation {
    /// Validates component shapes and exact naturality.
    pub fn new(
        source: Arc<PosetFunctor>,
        target: Arc<PosetFunctor>,
        components: Vec<FieldMatrix>,
    ) -> Result<Self> {
        let universe = source.universe();
        assert_eq!(universe, target.universe(), "functors must share the lattice");
        let lattice = SubsetLattice::new(universe);
        assert_eq!(components.len(), lattice.size());
        for idx in 0..lattice.size() {
            let j = lattice.subset_at(idx);
            let comp = &components[idx];
            assert_eq!(
                (comp.rows(), comp.cols()),
                (target.dim(j), source.dim(j)),
                "component shape at J={j}"
            );
        }
        for idx in 0..lattice.size() {
            let j = lattice.subset_at(idx);
            for x in universe.difference(j).iter() {
                let up = lattice.index_of(j.insert(x));
                let left = components[up].mul(source.edge(j, x));
                let right = target.edge(j, x).mul(&components[idx]);
                if left != right {
                    return Err(Error::InternalInconsistency(format!(
                        "naturality square fails at J={j}, x={x}"
                    )));
                }
            }
        }
        Ok(NaturalTransformation { source, target, components })
    }

    pub fn source(&self) -> &Arc<PosetFunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PosetFunctor> {
        &self.target
    }

    pub fn component(&self, j: VertexSet) -> &FieldMatrix {
        &self.components[SubsetLattice::new(self.source.universe()).index_of(j)]
    }

    fn component_at(&self, idx: usize) -> &FieldMatrix {
        &self.components[idx]
    }

    /// The block-diagonal matrix `C^l(source) -> C^l(target)` induced on
    /// cochain blocks (summand order is lex on both sides).
    pub fn cochain_map(&self, src: &CochainComplex, dst: &CochainComplex, l: u32) -> FieldMatrix {
        let field = self.source.field();
        let mut out = FieldMatrix::zeros(field, dst.block_dim(l), src.block_dim(l));
        for &j in src.summands(l) {
            let comp = self.component(j);
            let ro = dst.offset_of(j);
            let co = src.offset_of(j);
            for r in 0..comp.rows() {
                for c in 0..comp.cols() {
                    let v = comp.get(r, c);
                    if v != 0 {
                        out.set(ro + r, co + c, v);
                    }
                }
            }
        }
        out
    }
}

/// The transformation `i_q : H_q(K_-) -> Δ(H_q(K))` whose component at `J`
/// is the map induced by `K_J ⊆ K` (unreduced homology).
pub fn i_q_transformation(
    k: &SimplicialComplex,
    q: i32,
    field: PrimeField,
) -> NaturalTransformation {
    let lattice = SubsetLattice::new(k.universe());
    let bases = homology_cube(k, q, field, false);
    let full = lattice.index_of(k.universe());
    let components: Vec<FieldMatrix> = (0..lattice.size())
        .map(|idx| induced_map_between(&bases[idx], &bases[full]))
        .collect();
    let source = Arc::new(functor_from_cube(k, field, &bases));
    let target = Arc::new(diagonal_functor(bases[full].rank(), k.universe(), field));
    NaturalTransformation::new(source, target, components)
        .expect("induced maps assemble into a natural transformation")
}

/// The image subfunctor of a natural transformation: `Im(J)` is the
/// deterministic column-space basis of the component at `J`, edges are the
/// target edges restricted. Returns the functor and its inclusion into the
/// target.
pub fn image_subfunctor(t: &NaturalTransformation) -> (Arc<PosetFunctor>, NaturalTransformation) {
    let field = t.source.field();
    let universe = t.source.universe();
    let lattice = SubsetLattice::new(universe);
    let bases: Vec<FieldMatrix> = (0..lattice.size())
        .map(|idx| image_and_coordinates(t.component_at(idx)).0)
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let mut edges = std::collections::HashMap::new();
    for idx in 0..lattice.size() {
        let j = lattice.subset_at(idx);
        for x in universe.difference(j).iter() {
            let up = lattice.index_of(j.insert(x));
            let pushed = t.target.edge(j, x).mul(&bases[idx]);
            let coords = crate::linalg::ImageCoordinates::new(bases[up].clone());
            let mut edge = FieldMatrix::zeros(field, dims[up], dims[idx]);
            for c in 0..pushed.cols() {
                let col = coords
                    .express(&pushed.col(c))
                    .expect("target edges keep the image inside the image subfunctor");
                edge.set_col(c, &col);
            }
            edges.insert((j.mask(), x), edge);
        }
    }
    let im = Arc::new(PosetFunctor::from_parts(field, universe, dims, edges));
    let incl = NaturalTransformation::new(Arc::clone(&im), Arc::clone(&t.target), bases)
        .expect("image inclusions are natural");
    (im, incl)
}

/// The cokernel functor of a componentwise-injective inclusion
/// `incl : Im -> B`: `Q(J)` is the canonical quotient of `B(J)` by the
/// image, via `quotient_basis`. Returns the functor and the projection
/// `B -> Q`.
pub fn quotient_functor(
    incl: &NaturalTransformation,
) -> Result<(Arc<PosetFunctor>, NaturalTransformation)> {
    let b = Arc::clone(&incl.target);
    let field = b.field();
    let universe = b.universe();
    let lattice = SubsetLattice::new(universe);
    let mut projs = Vec::with_capacity(lattice.size());
    let mut lifts = Vec::with_capacity(lattice.size());
    for idx in 0..lattice.size() {
        let j = lattice.subset_at(idx);
        let comp = incl.component_at(idx);
        if comp.rank() != comp.cols() {
            return Err(Error::NotASubfunctor(j));
        }
        let (proj, lift) = quotient_basis(comp, b.dim(j))?;
        projs.push(proj);
        lifts.push(lift);
    }
    let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
    let mut edges = std::collections::HashMap::new();
    for idx in 0..lattice.size() {
        let j = lattice.subset_at(idx);
        for x in universe.difference(j).iter() {
            let up = lattice.index_of(j.insert(x));
            let edge = projs[up].mul(&b.edge(j, x).mul(&lifts[idx]));
            edges.insert((j.mask(), x), edge);
        }
    }
    let q = Arc::new(PosetFunctor::from_parts(field, universe, dims, edges));
    let proj = NaturalTransformation::new(b, Arc::clone(&q), projs)?;
    Ok((q, proj))
}

/// A degreewise short exact sequence of functors
/// `0 -> A -> B -> C -> 0`.
pub struct FunctorSES {
    pub a: Arc<PosetFunctor>,
    pub b: Arc<PosetFunctor>,
    pub c: Arc<PosetFunctor>,
    pub inc: NaturalTransformation,
    pub proj: NaturalTransformation,
}

impl FunctorSES {
    /// Validates per-subset exactness: inclusion injective, projection
    /// surjective, `proj ∘ inc = 0` and `rank inc = dim ker proj`.
    pub fn new(inc: NaturalTransformation, proj: NaturalTransformation) -> Result<Self> {
        assert!(
            Arc::ptr_eq(&inc.target, &proj.source),
            "middle functors of the sequence must be the same value"
        );
        let lattice = SubsetLattice::new(inc.source.universe());
        for idx in 0..lattice.size() {
            let j = lattice.subset_at(idx);
            let i = inc.component_at(idx);
            let p = proj.component_at(idx);
            let exact = i.rank() == i.cols()
                && p.rank() == p.rows()
                && p.mul(i).is_zero()
                && i.rank() == p.cols() - p.rank();
            if !exact {
                return Err(Error::InternalInconsistency(format!(
                    "sequence is not exact at J={j}"
                )));
            }
        }
        Ok(FunctorSES {
            a: Arc::clone(&inc.source),
            b: Arc::clone(&inc.target),
            c: Arc::clone(&proj.target),
            inc,
            proj,
        })
    }

    /// Cochain complexes of all three functors plus the per-degree maps.
    pub fn cohomology(&self) -> Result<SesCohomology<'_>> {
        let ca = cochain_complex(&self.a)?;
        let cb = cochain_complex(&self.b)?;
        let cc = cochain_complex(&self.c)?;
        Ok(SesCohomology { ses: self, ca, cb, cc })
    }
}

/// Cohomology-level view of a functor SES: induced maps and connecting
/// homomorphisms in the canonical bases.
pub struct SesCohomology<'a> {
    ses: &'a FunctorSES,
    ca: CochainComplex,
    cb: CochainComplex,
    cc: CochainComplex,
}

impl SesCohomology<'_> {
    pub fn h_dims(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        (self.ca.cohomology_dims(), self.cb.cohomology_dims(), self.cc.cohomology_dims())
    }

    /// `H^l(A) -> H^l(B)` induced by the inclusion.
    pub fn alpha(&self, l: i32) -> FieldMatrix {
        induced_on_cohomology(&self.ses.inc, &self.ca, &self.cb, l)
    }

    /// `H^l(B) -> H^l(C)` induced by the projection.
    pub fn beta(&self, l: i32) -> FieldMatrix {
        induced_on_cohomology(&self.ses.proj, &self.cb, &self.cc, l)
    }

    /// The connecting homomorphism `δ : H^l(C) -> H^{l+1}(A)` by the
    /// standard zig-zag: lift along the projection, apply `d`, pull back
    /// along the inclusion. All lifts use the deterministic solver.
    pub fn delta(&self, l: i32) -> FieldMatrix {
        let field = self.ca.differential(0).field();
        let basis_c = self.cc.cohomology_basis(l);
        let basis_a = self.ca.cohomology_basis(l + 1);
        let mut out = FieldMatrix::zeros(field, basis_a.rank(), basis_c.rank());
        if basis_c.rank() == 0 {
            return out;
        }
        let lu = (l.max(0)) as u32;
        let proj_l = self.ses.proj.cochain_map(&self.cb, &self.cc, lu);
        let inc_l1 = self.ses.inc.cochain_map(&self.ca, &self.cb, lu + 1);
        let proj_solver = LinearSolver::new(&proj_l);
        let inc_solver = LinearSolver::new(&inc_l1);
        let d_b = self.cb.differential(l);
        for i in 0..basis_c.rank() {
            let c = basis_c.representatives().col(i);
            let b = proj_solver.solve(&c).expect("projection components are surjective");
            let db = d_b.mul_vec(&b);
            let a = inc_solver
                .solve(&db)
                .expect("d of a lift of a cocycle lies in the subfunctor");
            let class = basis_a
                .class_of(&a)
                .expect("zig-zag output is a cocycle");
            out.set_col(i, &class);
        }
        out
    }

    /// Rank bookkeeping of the induced long sequence
    /// `… -> H^l(A) -> H^l(B) -> H^l(C) -> H^{l+1}(A) -> …`: composites
    /// vanish and `rank(in) + rank(out) = dim` at every node. Also checks
    /// exactness at the cochain level first: block dimensions add up and
    /// `im(inc) = ker(proj)` in every block.
    pub fn verify_long_exactness(&self) -> Result<()> {
        let (ha, hb, hc) = self.h_dims();
        let m = self.ca.m() as i32;
        let fail = |what: String| Err(Error::InternalInconsistency(what));
        for l in 0..=m as u32 {
            let dim_b = self.cb.block_dim(l);
            if self.ca.block_dim(l) + self.cc.block_dim(l) != dim_b {
                return fail(format!("cochain block dimensions do not add up at l={l}"));
            }
            let inc_l = self.ses.inc.cochain_map(&self.ca, &self.cb, l);
            let proj_l = self.ses.proj.cochain_map(&self.cb, &self.cc, l);
            if !proj_l.mul(&inc_l).is_zero() || inc_l.rank() + proj_l.rank() != dim_b {
                return fail(format!("cochain-level exactness fails at l={l}"));
            }
        }
        for l in 0..=m {
            let alpha = self.alpha(l);
            let beta = self.beta(l);
            let delta = self.delta(l);
            let delta_prev = self.delta(l - 1);
            if !beta.mul(&alpha).is_zero() || !delta.mul(&beta).is_zero() {
                return fail(format!("long sequence composites nonzero at l={l}"));
            }
            if l + 1 <= m {
                let alpha_next = self.alpha(l + 1);
                if !alpha_next.mul(&delta).is_zero() {
                    return fail(format!("α∘δ nonzero at l={l}"));
                }
            }
            let at_a = delta_prev.rank() + alpha.rank() == ha[l as usize];
            let at_b = alpha.rank() + beta.rank() == hb[l as usize];
            let at_c = beta.rank() + delta.rank() == hc[l as usize];
            if !(at_a && at_b && at_c) {
                return fail(format!("long sequence not exact at l={l}"));
            }
        }
        Ok(())
    }
}

/// Matrix of `H^l(source) -> H^l(target)` induced by a natural
/// transformation, in the canonical cohomology bases.
pub fn induced_on_cohomology(
    t: &NaturalTransformation,
    src: &CochainComplex,
    dst: &CochainComplex,
    l: i32,
) -> FieldMatrix {
    let field = t.source().field();
    let src_basis = src.cohomology_basis(l);
    let dst_basis = dst.cohomology_basis(l);
    let mut out = FieldMatrix::zeros(field, dst_basis.rank(), src_basis.rank());
    if src_basis.rank() == 0 {
        return out;
    }
    let map = t.cochain_map(src, dst, l.max(0) as u32);
    for i in 0..src_basis.rank() {
        let image = map.mul_vec(&src_basis.representatives().col(i));
        let class = dst_basis
            .class_of(&image)
            .expect("cochain maps send cocycles to cocycles");
        out.set_col(i, &class);
    }
    out
}

/// The connecting homomorphism of a functor SES at one degree.
pub fn connecting_hom(s: &FunctorSES, l: i32) -> Result<FieldMatrix> {
    Ok(s.cohomology()?.delta(l))
}

/// One row of the duality report: dimensions for a fixed `q`, indexed by
/// `l = 0..=m`.
#[derive(Clone, Debug)]
pub struct TheoremBRow {
    pub q: i32,
    /// `dim H^l(H_q(K_-))`.
    pub lhs: Vec<usize>,
    /// `dim H^l(H^{n-q}(K_{-^c}))` (unshifted).
    pub rhs: Vec<usize>,
    /// Per-`l` verdicts of `lhs_l = rhs_{l-1}` for `l = 0..=m+1`.
    pub equal_at: Vec<bool>,
    pub equal: bool,
}

#[derive(Debug)]
pub struct TheoremBReport {
    pub n: i32,
    pub p: u32,
    pub rows: Vec<TheoremBRow>,
    pub overall: bool,
    /// Verdict of the direct tightness sweep, for context.
    pub tight: bool,
}

/// Compares `dim H^l(H_q(K_-))` with `dim H^{l-1}(H^{n-q}(K_{-^c}))` for
/// every `q = 0..=n`. Requires the manifold gates. When the direct sweep
/// certifies tightness the tables must agree; disagreement in that case is
/// an implementation bug.
pub fn theorem_b_report(
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
) -> Result<TheoremBReport> {
    let n = manifold_gates(k, field)?;
    if k.m() > m_cap {
        return Err(Error::BudgetExceeded { m: k.m(), cap: m_cap });
    }
    let mut rows = Vec::new();
    for q in 0..=n {
        let lhs = cochain_complex(&crate::poset::homology_functor(k, q, field, false))?
            .cohomology_dims();
        let rhs = cochain_complex(&complement_cohomology_functor(k, q, field)?)?.cohomology_dims();
        let get = |v: &[usize], l: i32| -> usize {
            if l < 0 {
                0
            } else {
                v.get(l as usize).copied().unwrap_or(0)
            }
        };
        let equal_at: Vec<bool> = (0..=k.m() as i32 + 1)
            .map(|l| get(&lhs, l) == get(&rhs, l - 1))
            .collect();
        let equal = equal_at.iter().all(|&b| b);
        rows.push(TheoremBRow { q, lhs, rhs, equal_at, equal });
    }
    let overall = rows.iter().all(|r| r.equal);
    let tight = direct_check(k, field, m_cap)?.verdict == Verdict::Tight;
    if tight && !overall {
        return Err(Error::InternalInconsistency(
            "duality tables disagree on a tight complex".into(),
        ));
    }
    Ok(TheoremBReport { n, p: field.p(), rows, overall, tight })
}
