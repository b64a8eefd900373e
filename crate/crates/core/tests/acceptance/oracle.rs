//! Brute-force oracle used by the acceptance suite.
//!
//! Everything here is written independently of the library under test:
//! faces are sorted `Vec<u32>` lists found by filtering all `2^m` subsets,
//! ranks come from a fresh fraction-free Gaussian elimination over GF(p),
//! and connectivity is union-find. Slow and simple on purpose.

/// Loads a facet file with a one-off parser (header `m <n>`, `#` comments).
pub fn load_facets(path: &std::path::Path) -> (Vec<Vec<u32>>, u32) {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut m = 0u32;
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if facets.is_empty() && m == 0 && toks[0] == "m" {
            m = toks[1].parse().unwrap();
            continue;
        }
        let mut f: Vec<u32> = toks.iter().map(|t| t.parse().unwrap()).collect();
        f.sort_unstable();
        facets.push(f);
    }
    if m == 0 {
        m = facets.iter().flatten().copied().max().unwrap();
    }
    (facets, m)
}

fn mask_of(vertices: &[u32]) -> u32 {
    vertices.iter().fold(0u32, |acc, &v| acc | (1 << (v - 1)))
}

fn subset_vertices(mask: u32) -> Vec<u32> {
    (1..=32).filter(|v| mask & (1 << (v - 1)) != 0).collect()
}

/// All faces of the induced subcomplex on `sub`, grouped by cardinality
/// (index = cardinality; index 0 holds the empty face).
fn faces_by_cardinality(facets: &[Vec<u32>], m: u32, sub: u32) -> Vec<Vec<u32>> {
    let facet_masks: Vec<u32> = facets.iter().map(|f| mask_of(f)).collect();
    let mut by_card: Vec<Vec<u32>> = vec![Vec::new(); m as usize + 2];
    for candidate in 0u32..(1 << m) {
        if candidate & !sub != 0 {
            continue;
        }
        if candidate == 0 || facet_masks.iter().any(|&f| candidate & !f == 0) {
            by_card[candidate.count_ones() as usize].push(candidate);
        }
    }
    for group in &mut by_card {
        group.sort_unstable();
    }
    by_card
}

/// Rank of an integer matrix over GF(p), fresh elimination.
fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| rows[r][col].rem_euclid(p) != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col].rem_euclid(p), p);
        for c in 0..ncols {
            rows[rank][c] = (rows[rank][c].rem_euclid(p) * inv).rem_euclid(p);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col].rem_euclid(p) != 0 {
                let factor = rows[r][col].rem_euclid(p);
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] - factor * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // Fermat: p is prime
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Boundary matrix from cardinality `c` faces to cardinality `c-1` faces.
fn boundary(by_card: &[Vec<u32>], c: usize) -> Vec<Vec<i64>> {
    let cols = &by_card[c];
    let rows = &by_card[c - 1];
    let mut mat = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, &face) in cols.iter().enumerate() {
        for (i, v) in subset_vertices(face).into_iter().enumerate() {
            let smaller = face & !(1 << (v - 1));
            let r = rows.binary_search(&smaller).unwrap();
            mat[r][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    mat
}

/// Total reduced Betti number of the induced subcomplex on `sub` over
/// GF(p), by direct rank computation through every degree.
pub fn reduced_betti_total(facets: &[Vec<u32>], m: u32, sub: u32, p: i64) -> usize {
    let by_card = faces_by_cardinality(facets, m, sub);
    let max_card = m as usize;
    let rank_of = |c: usize| -> usize {
        if c == 0 || c > max_card || by_card[c].is_empty() {
            0
        } else {
            rank_mod_p(boundary(&by_card, c), p)
        }
    };
    let mut total = 0usize;
    let ranks: Vec<usize> = (0..=max_card + 1).map(rank_of).collect();
    for c in 0..=max_card {
        total += by_card[c].len() - ranks[c] - ranks[c + 1];
    }
    total
}

/// `β(Z_K) = Σ_{J ⊆ [m]} β̃(K_J)` by the brute-force path.
pub fn beta_zk(facets: &[Vec<u32>], m: u32, p: i64) -> usize {
    (0u32..(1 << m)).map(|sub| reduced_betti_total(facets, m, sub, p)).sum()
}

/// Number of connected components of the induced subcomplex on `sub`
/// (union-find over the edges).
pub fn component_count(facets: &[Vec<u32>], _m: u32, sub: u32) -> usize {
    let vertices: Vec<u32> = subset_vertices(sub)
        .into_iter()
        .filter(|&v| facets.iter().any(|f| f.contains(&v)))
        .collect();
    let index = |v: u32| vertices.iter().position(|&w| w == v).unwrap();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for f in facets {
        for a in 0..f.len() {
            for b in a + 1..f.len() {
                let (va, vb) = (f[a], f[b]);
                if sub & (1 << (va - 1)) != 0 && sub & (1 << (vb - 1)) != 0 {
                    let (ra, rb) = (find(&mut parent, index(va)), find(&mut parent, index(vb)));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
    }
    (0..vertices.len()).filter(|&i| find(&mut parent, i) == i).count()
}
