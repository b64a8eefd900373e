//! Named example complexes used across tests, docs and the CLI fixtures.

use crate::complex::{subsets_of_size, SimplicialComplex, VertexSet};

fn vs(verts: &[u32]) -> VertexSet {
    VertexSet::from_vertices(verts, 64).unwrap()
}

/// The 3-cycle (boundary of a triangle): a minimal circle.
pub fn c3() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vs(&[1, 2]), vs(&[2, 3]), vs(&[1, 3])], 3).unwrap()
}

/// The 4-cycle: a circle with a pair of opposite, non-adjacent vertices.
pub fn c4() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vs(&[1, 2]), vs(&[2, 3]), vs(&[3, 4]), vs(&[1, 4])], 4)
        .unwrap()
}

/// Boundary of the 3-simplex: the minimal 2-sphere on 4 vertices.
pub fn boundary_delta3() -> SimplicialComplex {
    let facets = subsets_of_size(VertexSet::full(4), 3);
    SimplicialComplex::from_facets(&facets, 4).unwrap()
}

/// The full simplex on `m` vertices.
pub fn full_simplex(m: u32) -> SimplicialComplex {
    SimplicialComplex::from_facets(&[VertexSet::full(m)], m).unwrap()
}

/// Two isolated points.
pub fn two_points() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vs(&[1]), vs(&[2])], 2).unwrap()
}

/// The minimal 6-vertex triangulation of the real projective plane
/// (antipodal quotient of the icosahedron). 2-neighborly, f = (6, 15, 10).
pub fn rp2_6() -> SimplicialComplex {
    let facets = [
        [1, 2, 3],
        [1, 2, 4],
        [1, 3, 5],
        [1, 4, 6],
        [1, 5, 6],
        [2, 3, 6],
        [2, 4, 5],
        [2, 5, 6],
        [3, 4, 5],
        [3, 4, 6],
    ];
    let facets: Vec<VertexSet> = facets.iter().map(|f| vs(f)).collect();
    SimplicialComplex::from_facets(&facets, 6).unwrap()
}

/// The cyclic 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}`
/// mod 7 (labels 1-based). 2-neighborly, f = (7, 21, 14), χ = 0.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::with_capacity(14);
    for i in 0..7u32 {
        let t1 = [i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1];
        let t2 = [i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1];
        facets.push(vs(&t1));
        facets.push(vs(&t2));
    }
    SimplicialComplex::from_facets(&facets, 7).unwrap()
}

/// The standard 3x3 grid torus with diagonals: vertex `(r, c)` is labeled
/// `3r + c + 1`, each grid cell split along one diagonal. f = (9, 27, 18).
pub fn torus9() -> SimplicialComplex {
    let v = |r: u32, c: u32| 3 * (r % 3) + (c % 3) + 1;
    let mut facets = Vec::with_capacity(18);
    for r in 0..3u32 {
        for c in 0..3u32 {
            facets.push(vs(&[v(r, c), v(r, c + 1), v(r + 1, c + 1)]));
            facets.push(vs(&[v(r, c), v(r + 1, c), v(r + 1, c + 1)]));
        }
    }
    SimplicialComplex::from_facets(&facets, 9).unwrap()
}
