//! The `2^m` full-subcomplex sweep and the bigraded table of
//! `H^{-k,2l}(Z_K) ≅ ⊕_{|J|=l} H̃^{l-k-1}(K_J)`, plus an independent
//! finite Koszul-complex oracle for small vertex counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::complex::{subsets_of_size, SimplicialComplex, SubsetLattice, VertexSet};
use crate::error::{Error, Result};
use crate::homology::{betti_numbers, BettiVector};
use crate::linalg::{FieldMatrix, PrimeField};

/// Reduced Betti vectors of every full subcomplex `K_J`, `J ⊆ [m]`.
#[derive(Debug)]
pub struct SubcomplexBettiCache {
    field: PrimeField,
    lattice: SubsetLattice,
    entries: Vec<BettiVector>, // indexed by the lattice's dense subset index
}

impl SubcomplexBettiCache {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn universe(&self) -> VertexSet {
        self.lattice.universe()
    }

    pub fn lattice(&self) -> &SubsetLattice {
        &self.lattice
    }

    /// Reduced Betti vector of `K_J`.
    pub fn reduced(&self, j: VertexSet) -> &BettiVector {
        &self.entries[self.lattice.index_of(j)]
    }

    /// Unreduced Betti vector of `K_J`.
    pub fn unreduced(&self, j: VertexSet) -> BettiVector {
        self.reduced(j).to_unreduced()
    }

    /// `Σ_J β(K_J)` with unreduced Betti numbers.
    pub fn unreduced_grand_total(&self) -> usize {
        self.entries.iter().map(|b| b.to_unreduced().total()).sum()
    }
}

/// Computes the reduced Betti vector of every `K_J` in parallel. Results
/// are keyed by subset, so the contents are independent of scheduling.
pub fn all_subcomplex_betti(
    k: &SimplicialComplex,
    field: PrimeField,
    m_cap: u32,
) -> Result<SubcomplexBettiCache> {
    let m = k.m();
    if m > m_cap {
        return Err(Error::BudgetExceeded { m, cap: m_cap });
    }
    let lattice = SubsetLattice::new(k.universe());
    let entries: Vec<BettiVector> = (0..lattice.size())
        .into_par_iter()
        .map(|idx| betti_numbers(&k.full_subcomplex(lattice.subset_at(idx)), field, true))
        .collect();
    Ok(SubcomplexBettiCache { field, lattice, entries })
}

/// Dimensions indexed by bidegree `(k, l)`, meaning `H^{-k,2l}`. Only
/// nonzero entries are stored; iteration order is sorted.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BigradedTable {
    entries: BTreeMap<(u32, u32), usize>,
}

impl BigradedTable {
    pub fn add(&mut self, k: u32, l: u32, dim: usize) {
        if dim > 0 {
            *self.entries.entry((k, l)).or_insert(0) += dim;
        }
    }

    pub fn get(&self, k: u32, l: u32) -> usize {
        self.entries.get(&(k, l)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((k, l), dim)` in ascending bidegree order.
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &usize)> {
        self.entries.iter()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// The single-graded dimensions `β_n` collected along `n = 2l - k`.
    pub fn single_graded(&self) -> Vec<usize> {
        let max_n = self
            .entries
            .keys()
            .map(|&(k, l)| 2 * l as usize - k as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![0usize; max_n + 1];
        for (&(k, l), &d) in &self.entries {
            out[2 * l as usize - k as usize] += d;
        }
        out
    }
}

impl fmt::Debug for BigradedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigradedTable{{")?;
        for (i, (&(k, l), &d)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({k},{l}):{d}")?;
        }
        write!(f, "}}")
    }
}

/// Assembles the bigraded table from a completed cache:
/// entry `(k, l) = Σ_{|J|=l} β̃_{l-k-1}(K_J)`.
pub fn hochster_table(cache: &SubcomplexBettiCache) -> BigradedTable {
    let mut table = BigradedTable::default();
    for idx in 0..cache.lattice.size() {
        let j = cache.lattice.subset_at(idx);
        let l = j.len();
        for (q, d) in cache.entries[idx].nonzero() {
            let k = l as i64 - q as i64 - 1;
            debug_assert!(k >= 0, "reduced homology above the vertex count");
            table.add(k as u32, l, d);
        }
    }
    table
}

/// Total rank `β(Z_K) = Σ_J β̃(K_J)`, including the `J = ∅` term.
pub fn beta_zk_total(cache: &SubcomplexBettiCache) -> usize {
    cache.entries.iter().map(|b| b.total()).sum()
}

/// Independent oracle: cohomology of the finite squarefree Koszul complex
/// `Λ[u_1..u_m] ⊗ F[K] / (u_i v_i, v_i^2)` with `du_i = v_i`, graded by
/// `bideg u_i = (-1,2)`, `bideg v_i = (0,2)`. Must match [`hochster_table`]
/// entrywise. Exponential in `m`; capped at `m <= 6`.
pub fn koszul_oracle(k: &SimplicialComplex, field: PrimeField) -> Result<BigradedTable> {
    const KOSZUL_CAP: u32 = 6;
    let m = k.m();
    if m > KOSZUL_CAP {
        return Err(Error::BudgetExceeded { m, cap: KOSZUL_CAP });
    }
    let universe = k.universe();
    let mut faces: Vec<VertexSet> = vec![VertexSet::EMPTY];
    for d in 0..=k.dim() {
        faces.extend(k.faces_of_dim(d));
    }
    let is_face: Vec<bool> = {
        let lattice = SubsetLattice::new(universe);
        let mut flags = vec![false; lattice.size()];
        for &f in &faces {
            flags[lattice.index_of(f)] = true;
        }
        flags
    };
    let lattice = SubsetLattice::new(universe);

    // basis[l][kk] = monomials u_A v_B with |A| = kk, |A| + |B| = l, A∩B = ∅
    let mut basis: Vec<Vec<Vec<(VertexSet, VertexSet)>>> = Vec::new();
    for l in 0..=m {
        let mut per_k = Vec::new();
        for kk in 0..=l {
            let mut elems = Vec::new();
            for a in subsets_of_size(universe, kk) {
                for b in &faces {
                    if b.len() == l - kk && a.is_disjoint_from(*b) {
                        elems.push((a, *b));
                    }
                }
            }
            elems.sort();
            per_k.push(elems);
        }
        basis.push(per_k);
    }

    let mut table = BigradedTable::default();
    for l in 0..=m as usize {
        // d_kk : span(basis[l][kk]) -> span(basis[l][kk-1]), moving one
        // exterior generator into the polynomial part
        let differential = |kk: usize| -> FieldMatrix {
            let cols = &basis[l][kk];
            let rows = if kk >= 1 { &basis[l][kk - 1] } else { return FieldMatrix::zeros(field, 0, cols.len()) };
            let row_index: HashMap<(u64, u64), usize> = rows
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| ((a.mask(), b.mask()), i))
                .collect();
            let mut mat = FieldMatrix::zeros(field, rows.len(), cols.len());
            for (c, &(a, b)) in cols.iter().enumerate() {
                for (i, x) in a.iter().enumerate() {
                    let b_new = b.insert(x);
                    if !is_face[lattice.index_of(b_new)] {
                        continue;
                    }
                    let r = row_index[&(a.remove(x).mask(), b_new.mask())];
                    let sign = if i % 2 == 0 { 1 } else { field.neg(1) };
                    mat.set(r, c, field.add(mat.get(r, c), sign));
                }
            }
            mat
        };
        for kk in 0..=l {
            let d_out = differential(kk);
            let kernel = basis[l][kk].len() - d_out.rank();
            let image_rank = if kk + 1 <= l { differential(kk + 1).rank() } else { 0 };
            table.add(kk as u32, l as u32, kernel - image_rank);
        }
    }
    Ok(table)
}
