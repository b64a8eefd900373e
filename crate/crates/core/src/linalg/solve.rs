use super::{FieldMatrix, Rref};
use crate::error::{Error, Result};

/// Deterministic solver for `A x = v` with `A` fixed. Eliminates the
/// augmented system `[A | I]` once; each solve is one transform product.
/// Free variables are always set to zero, so solutions are canonical.
pub struct LinearSolver {
    cols: usize,
    rank: usize,
    pivots: Vec<usize>,
    transform: FieldMatrix,
}

impl LinearSolver {
    pub fn new(a: &FieldMatrix) -> Self {
        let id = FieldMatrix::identity(a.field(), a.rows());
        let aug = a.hstack(&id);
        let Rref { rank, pivots, matrix } = aug.rref_in_columns(a.cols());
        let transform = matrix.select_cols(&(a.cols()..a.cols() + a.rows()).collect::<Vec<_>>());
        LinearSolver { cols: a.cols(), rank, pivots, transform }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Returns the canonical solution of `A x = v`, or `None` when `v` is
    /// not in the column space of `A`.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        let w = self.transform.mul_vec(v);
        if w[self.rank..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in self.pivots.iter().enumerate() {
            x[c] = w[i];
        }
        Some(x)
    }
}

/// Expresses vectors in a fixed independent column basis.
pub struct ImageCoordinates {
    basis: FieldMatrix,
    solver: LinearSolver,
}

impl ImageCoordinates {
    pub fn new(basis: FieldMatrix) -> Self {
        let solver = LinearSolver::new(&basis);
        debug_assert_eq!(solver.rank(), basis.cols(), "basis columns must be independent");
        ImageCoordinates { basis, solver }
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    /// Coefficients `c` with `basis · c = v`, or `None` when unsolvable.
    pub fn express(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.solver.solve(v)
    }
}

/// Deterministic basis of the column space of `m` (the original columns at
/// the elimination's pivot positions) together with a coordinate map.
pub fn image_and_coordinates(m: &FieldMatrix) -> (FieldMatrix, ImageCoordinates) {
    let pivots = m.rref().pivots;
    let basis = m.select_cols(&pivots);
    let coords = ImageCoordinates::new(basis.clone());
    (basis, coords)
}

/// For a subspace spanned by the independent columns of `sub` inside
/// GF(p)^ambient, returns `(proj, lift)` with `ker proj = span(sub)`,
/// `proj` of shape `q x ambient` (`q = ambient - cols(sub)`), and
/// `proj · lift = identity` on GF(p)^q.
pub fn quotient_basis(sub: &FieldMatrix, ambient_dim: usize) -> Result<(FieldMatrix, FieldMatrix)> {
    assert_eq!(sub.rows(), ambient_dim, "subspace must live in the ambient space");
    if sub.rank() != sub.cols() {
        return Err(Error::DependentColumns);
    }
    let proj = sub.transpose().kernel_basis().transpose();
    debug_assert_eq!(proj.rows(), ambient_dim - sub.cols());
    let q = proj.rows();
    let solver = LinearSolver::new(&proj);
    let mut lift = FieldMatrix::zeros(sub.field(), ambient_dim, q);
    let mut e = vec![0u32; q];
    for j in 0..q {
        e[j] = 1;
        let x = solver.solve(&e).expect("projection has full row rank");
        lift.set_col(j, &x);
        e[j] = 0;
    }
    Ok((proj, lift))
}

/// Canonical basis for `ker(out_map) / im(in_map)` — the homology of a
/// complex at one node. Representatives are chosen greedily from the
/// canonical kernel basis, skipping anything already spanned by the image.
pub struct SubquotientBasis {
    ambient_dim: usize,
    image_rank: usize,
    representatives: FieldMatrix,
    express: ImageCoordinates,
    out_map: FieldMatrix,
}

impl SubquotientBasis {
    pub fn new(out_map: &FieldMatrix, in_map: &FieldMatrix) -> Self {
        let ambient_dim = out_map.cols();
        assert_eq!(in_map.rows(), ambient_dim, "maps must share the middle space");
        let cycles = out_map.kernel_basis();
        let (image_basis, _) = image_and_coordinates(in_map);
        let stacked = image_basis.hstack(&cycles);
        let pivots = stacked.rref().pivots;
        let rep_cols: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&c| c >= image_basis.cols())
            .map(|c| c - image_basis.cols())
            .collect();
        let representatives = cycles.select_cols(&rep_cols);
        let express = ImageCoordinates::new(image_basis.hstack(&representatives));
        SubquotientBasis {
            ambient_dim,
            image_rank: image_basis.cols(),
            representatives,
            express,
            out_map: out_map.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.representatives.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn representatives(&self) -> &FieldMatrix {
        &self.representatives
    }

    /// Coordinates of the class of `v` in the representative basis, or
    /// `None` when `v` is not in `ker(out_map)`.
    pub fn class_of(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.out_map.mul_vec(v).iter().any(|&x| x != 0) {
            return None;
        }
        let full = self
            .express
            .express(v)
            .expect("kernel vectors lie in the span of image and representatives");
        Some(full[self.image_rank..].to_vec())
    }
}
