use std::fmt;

use super::PrimeField;

/// Dense matrix over GF(p). Rows of a GF(2) matrix are bit-packed 64
/// entries per word; other moduli store one `u32` per entry. Zero-dimension
/// matrices are legal and behave as empty linear maps.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    storage: Storage,
}

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    Dense(Vec<u32>),
    Packed { wpr: usize, words: Vec<u64> },
}

/// Result of a reduced-row-echelon elimination.
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub matrix: FieldMatrix,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        if field.is_gf2() {
            let wpr = cols.div_ceil(64);
            FieldMatrix {
                field,
                rows,
                cols,
                storage: Storage::Packed { wpr, words: vec![0; rows * wpr] },
            }
        } else {
            Self::zeros_dense(field, rows, cols)
        }
    }

    /// Forces the generic `u32` layout even at p = 2. The packed and dense
    /// paths must agree entrywise on every operation; tests compare them.
    pub fn zeros_dense(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            storage: Storage::Dense(vec![0; rows * cols]),
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c) % field.p());
            }
        }
        m
    }

    pub fn from_rows(field: PrimeField, entries: &[Vec<u32>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows, cols, |r, c| entries[r][c])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_packed(&self) -> bool {
        matches!(self.storage, Storage::Packed { .. })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c],
            Storage::Packed { wpr, words } => ((words[r * wpr + c / 64] >> (c % 64)) & 1) as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(r < self.rows && c < self.cols);
        debug_assert!(v < self.field.p());
        match &mut self.storage {
            Storage::Dense(d) => d[r * self.cols + c] = v,
            Storage::Packed { wpr, words } => {
                let w = &mut words[r * *wpr + c / 64];
                let bit = 1u64 << (c % 64);
                if v == 0 {
                    *w &= !bit;
                } else {
                    *w |= bit;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Dense(d) => d.iter().all(|&x| x == 0),
            Storage::Packed { words, .. } => words.iter().all(|&w| w == 0),
        }
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[u32]) {
        debug_assert_eq!(v.len(), self.rows);
        for (r, &x) in v.iter().enumerate() {
            self.set(r, c, x);
        }
    }

    /// Matrix with the listed columns of `self`, in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> FieldMatrix {
        let mut out = Self::with_layout_of(self, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`, preserving self's layout.
    pub fn hstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.field, other.field);
        let mut out = Self::with_layout_of(self, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = Self::with_layout_of(self, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    fn with_layout_of(like: &FieldMatrix, rows: usize, cols: usize) -> FieldMatrix {
        if like.is_packed() {
            let wpr = cols.div_ceil(64);
            FieldMatrix {
                field: like.field,
                rows,
                cols,
                storage: Storage::Packed { wpr, words: vec![0; rows * wpr] },
            }
        } else {
            FieldMatrix::zeros_dense(like.field, rows, cols)
        }
    }

    /// Matrix product. Both operands packed takes the word-parallel path.
    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.field, other.field);
        if let (Storage::Packed { wpr: wa, words: a }, Storage::Packed { wpr: wb, words: b }) =
            (&self.storage, &other.storage)
        {
            let wpr = other.cols.div_ceil(64);
            debug_assert_eq!(*wb, wpr);
            let mut words = vec![0u64; self.rows * wpr];
            for i in 0..self.rows {
                let arow = &a[i * wa..(i + 1) * wa];
                let out = &mut words[i * wpr..(i + 1) * wpr];
                for (wi, &word) in arow.iter().enumerate() {
                    let mut w = word;
                    while w != 0 {
                        let k = wi * 64 + w.trailing_zeros() as usize;
                        w &= w - 1;
                        let brow = &b[k * wpr..(k + 1) * wpr];
                        for (o, &bw) in out.iter_mut().zip(brow) {
                            *o ^= bw;
                        }
                    }
                }
            }
            return FieldMatrix {
                field: self.field,
                rows: self.rows,
                cols: other.cols,
                storage: Storage::Packed { wpr, words },
            };
        }
        let p = self.field.p() as u64;
        let mut out = Self::with_layout_of(self, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                out.set(i, j, (acc % p) as u32);
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch in matrix-vector product");
        let p = self.field.p() as u64;
        let mut out = vec![0u32; self.rows];
        match &self.storage {
            Storage::Packed { wpr, words } => {
                let mut vw = vec![0u64; *wpr];
                for (c, &x) in v.iter().enumerate() {
                    if x & 1 == 1 {
                        vw[c / 64] |= 1 << (c % 64);
                    }
                }
                for r in 0..self.rows {
                    let row = &words[r * wpr..(r + 1) * wpr];
                    let ones: u32 = row.iter().zip(&vw).map(|(a, b)| (a & b).count_ones()).sum();
                    out[r] = ones & 1;
                }
            }
            Storage::Dense(_) => {
                for (r, o) in out.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (c, &x) in v.iter().enumerate() {
                        acc += self.get(r, c) as u64 * x as u64;
                        if acc >= 1 << 62 {
                            acc %= p;
                        }
                    }
                    *o = (acc % p) as u32;
                }
            }
        }
        out
    }

    /// Reduced row echelon form with the deterministic pivot rule: columns
    /// scanned left to right, topmost nonzero row picked per column, the
    /// pivot normalized to 1 and cleared from every other row.
    pub fn rref(&self) -> Rref {
        self.rref_in_columns(self.cols)
    }

    /// Like [`rref`](Self::rref) but only the first `pivot_limit` columns
    /// may produce pivots; later columns are just carried along. Used to
    /// eliminate augmented systems `[A | I]`.
    pub fn rref_in_columns(&self, pivot_limit: usize) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..pivot_limit.min(self.cols) {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.field.inv(m.get(r, c));
            if inv != 1 {
                m.scale_row(r, inv);
            }
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.sub_scaled_row(i, r, factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref { rank: pivots.len(), pivots, matrix: m }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns forming the canonical basis of the null space: one column
    /// per free column `f` (ascending), with a 1 in position `f` and the
    /// negated echelon entries in the pivot positions.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let Rref { pivots, matrix: r, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::with_layout_of(self, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                if v != 0 {
                    out.set(pc, j, self.field.neg(v));
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.storage {
            Storage::Dense(d) => {
                for c in 0..self.cols {
                    d.swap(a * self.cols + c, b * self.cols + c);
                }
            }
            Storage::Packed { wpr, words } => {
                for w in 0..*wpr {
                    words.swap(a * *wpr + w, b * *wpr + w);
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: u32) {
        match &mut self.storage {
            Storage::Dense(d) => {
                let p = self.field;
                for c in 0..self.cols {
                    let idx = r * self.cols + c;
                    d[idx] = p.mul(d[idx], factor);
                }
            }
            Storage::Packed { .. } => {
                debug_assert_eq!(factor & 1, 1);
            }
        }
    }

    /// row_i -= factor * row_src
    fn sub_scaled_row(&mut self, i: usize, src: usize, factor: u32) {
        debug_assert_ne!(i, src);
        match &mut self.storage {
            Storage::Dense(d) => {
                let p = self.field;
                for c in 0..self.cols {
                    let v = p.mul(d[src * self.cols + c], factor);
                    let idx = i * self.cols + c;
                    d[idx] = p.sub(d[idx], v);
                }
            }
            Storage::Packed { wpr, words } => {
                let (lo, hi) = (i.min(src), i.max(src));
                let (head, tail) = words.split_at_mut(hi * *wpr);
                let (dst, srcs) = if i < src {
                    (&mut head[lo * *wpr..(lo + 1) * *wpr], &tail[..*wpr])
                } else {
                    let t = &mut tail[..*wpr];
                    (t, &head[lo * *wpr..(lo + 1) * *wpr])
                };
                for (dw, &sw) in dst.iter_mut().zip(srcs.iter()) {
                    *dw ^= sw;
                }
            }
        }
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} mod {}", self.rows, self.cols, self.field.p())?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
