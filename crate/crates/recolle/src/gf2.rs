//! Exact dense linear algebra over the field with two elements.
//!
//! Everything upstream (representations, functors, recollement checks) reduces
//! to rank computations, kernels, cokernels and factorizations of bit
//! matrices. Matrices are packed row-major into 64-bit words; all values are
//! immutable after construction and all operations are pure.

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense matrix over GF(2), row-major, 64 bits per word.
///
/// Zero-row and zero-column matrices are legal and show up constantly
/// (maps in and out of zero-dimensional spaces). Padding bits past `cols`
/// in the last word of each row are kept zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from 0/1 entries given row-major.
    pub fn from_entries(rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if entries[r * cols + c] % 2 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.words[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / 64;
        let bit = 1u64 << (c % 64);
        if v {
            self.words[idx] |= bit;
        } else {
            self.words[idx] &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (a, b) = (src * self.words_per_row, dst * self.words_per_row);
        for k in 0..self.words_per_row {
            let w = self.words[a + k];
            self.words[b + k] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words_per_row {
            self.words
                .swap(a * self.words_per_row + k, b * self.words_per_row + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix sum (XOR).
    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let src = c * other.words_per_row;
                    let dst = r * out.words_per_row;
                    for k in 0..other.words_per_row {
                        out.words[dst + k] ^= other.words[src + k];
                    }
                }
            }
        }
        out
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.words[self.words.len()..].copy_from_slice(&other.words);
        out
    }

    /// Place `self` left of `other`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(self.rows + r, self.cols + c, true);
                }
            }
        }
        out
    }

    pub fn submatrix_cols(&self, col_start: usize, col_end: usize) -> BitMatrix {
        assert!(col_start <= col_end && col_end <= self.cols);
        let mut out = BitMatrix::zeros(self.rows, col_end - col_start);
        for r in 0..self.rows {
            for c in col_start..col_end {
                if self.get(r, c) {
                    out.set(r, c - col_start, true);
                }
            }
        }
        out
    }

    pub fn submatrix_rows(&self, row_start: usize, row_end: usize) -> BitMatrix {
        assert!(row_start <= row_end && row_end <= self.rows);
        let mut out = BitMatrix::zeros(row_end - row_start, self.cols);
        for r in row_start..row_end {
            out.words[(r - row_start) * out.words_per_row..(r - row_start + 1) * out.words_per_row]
                .copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Reduced row echelon form with pivot columns and the invertible row
    /// transform: `transform * self = reduced`.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut t = BitMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(pivot_row) = (next..self.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(next, pivot_row);
            t.swap_rows(next, pivot_row);
            for r in 0..self.rows {
                if r != next && m.get(r, c) {
                    m.xor_row_into(next, r);
                    t.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Rref {
            reduced: m,
            pivots,
            transform: t,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let r = self.rref();
        if r.pivots.len() == self.rows {
            Some(r.transform)
        } else {
            None
        }
    }

    /// Row `r` as a one-row matrix.
    pub fn row(&self, r: usize) -> BitMatrix {
        self.submatrix_rows(r, r + 1)
    }

    /// Reduce a row vector modulo the span of `basis` rows (basis in RREF).
    pub fn reduce_row_mod(&self, basis: &BitMatrix, pivots: &[usize]) -> BitMatrix {
        assert_eq!(self.rows, 1);
        let mut v = self.clone();
        for (i, &p) in pivots.iter().enumerate() {
            if v.get(0, p) {
                let src = basis.row_words(i);
                for k in 0..v.words_per_row {
                    v.words[k] ^= src[k];
                }
            }
        }
        v
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

// JSON form fixed by the external interface: one bit-string per row,
// first character = column 0.
impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BitMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let data: Vec<String> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        st.serialize_field("data", &data)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = BitMatrix;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a bit matrix object with rows, cols, data")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<BitMatrix, A::Error> {
                let (mut rows, mut cols, mut data): (Option<usize>, Option<usize>, Option<Vec<String>>) =
                    (None, None, None);
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "rows" => rows = Some(map.next_value()?),
                        "cols" => cols = Some(map.next_value()?),
                        "data" => data = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["rows", "cols", "data"])),
                    }
                }
                let rows = rows.ok_or_else(|| de::Error::missing_field("rows"))?;
                let cols = cols.ok_or_else(|| de::Error::missing_field("cols"))?;
                let data = data.ok_or_else(|| de::Error::missing_field("data"))?;
                if data.len() != rows {
                    return Err(de::Error::custom("row count does not match data"));
                }
                let mut m = BitMatrix::zeros(rows, cols);
                for (r, s) in data.iter().enumerate() {
                    if s.len() != cols {
                        return Err(de::Error::custom("row length does not match cols"));
                    }
                    for (c, ch) in s.chars().enumerate() {
                        match ch {
                            '0' => {}
                            '1' => m.set(r, c, true),
                            _ => return Err(de::Error::custom("bit strings must be 0/1")),
                        }
                    }
                }
                Ok(m)
            }
        }
        deserializer.deserialize_struct("BitMatrix", &["rows", "cols", "data"], V)
    }
}

/// Output of [`BitMatrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
    pub transform: BitMatrix,
}

/// A linear map between GF(2) coordinate spaces, stored as a
/// `codomain_dim x domain_dim` matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearMap {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub matrix: BitMatrix,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap {}->{} {:?}", self.domain_dim, self.codomain_dim, self.matrix)
    }
}

impl LinearMap {
    pub fn new(matrix: BitMatrix) -> Self {
        LinearMap {
            domain_dim: matrix.cols(),
            codomain_dim: matrix.rows(),
            matrix,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(BitMatrix::identity(n))
    }

    pub fn zero(domain_dim: usize, codomain_dim: usize) -> Self {
        Self::new(BitMatrix::zeros(codomain_dim, domain_dim))
    }

    pub fn from_entries(codomain_dim: usize, domain_dim: usize, entries: &[u8]) -> Self {
        Self::new(BitMatrix::from_entries(codomain_dim, domain_dim, entries))
    }

    /// `self` after `other`: the composite `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(
            self.domain_dim, other.codomain_dim,
            "composition dimension mismatch"
        );
        LinearMap::new(self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.add(&other.matrix))
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::new(self.matrix.transpose())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.domain_dim == self.codomain_dim && self.rank() == self.domain_dim
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        self.matrix.inverse().map(LinearMap::new)
    }

    /// Block-diagonal direct sum of maps.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.block_diag(&other.matrix))
    }

    /// `[self | other]` on a direct-sum domain.
    pub fn juxtapose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.codomain_dim, other.codomain_dim);
        LinearMap::new(self.matrix.hstack(&other.matrix))
    }

    /// `[self ; other]` into a direct-sum codomain.
    pub fn stack(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.domain_dim, other.domain_dim);
        LinearMap::new(self.matrix.vstack(&other.matrix))
    }
}

/// A subspace of a coordinate space, canonically presented: basis rows in
/// reduced row echelon form. Subspace equality is bit equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: BitMatrix,
}

impl Subspace {
    /// Canonicalize a spanning set (rows of `span`) into an RREF basis.
    pub fn from_spanning_rows(ambient_dim: usize, span: &BitMatrix) -> Self {
        assert_eq!(span.cols(), ambient_dim);
        let r = span.rref();
        let rank = r.pivots.len();
        Subspace {
            ambient_dim,
            basis: r.reduced.submatrix_rows(0, rank),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: BitMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: BitMatrix::identity(ambient_dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Inclusion of the subspace into the ambient space, in basis coordinates.
    pub fn inclusion(&self) -> LinearMap {
        LinearMap::new(self.basis.transpose())
    }

    pub fn contains_row(&self, v: &BitMatrix) -> bool {
        let pivots: Vec<usize> = self.pivot_cols();
        v.reduce_row_mod(&self.basis, &pivots).is_zero()
    }

    fn pivot_cols(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| (0..self.ambient_dim).find(|&c| self.basis.get(r, c)).unwrap())
            .collect()
    }
}

/// Kernel of `f` as a canonical subspace of the domain.
pub fn kernel_basis(f: &LinearMap) -> Subspace {
    let r = f.matrix.rref();
    let rank = r.pivots.len();
    let mut free_cols: Vec<usize> = Vec::new();
    let mut is_pivot = vec![false; f.domain_dim];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    for c in 0..f.domain_dim {
        if !is_pivot[c] {
            free_cols.push(c);
        }
    }
    let mut span = BitMatrix::zeros(free_cols.len(), f.domain_dim);
    for (i, &j) in free_cols.iter().enumerate() {
        span.set(i, j, true);
        for (row, &p) in r.pivots.iter().enumerate().take(rank) {
            if r.reduced.get(row, j) {
                span.set(i, p, true);
            }
        }
    }
    Subspace::from_spanning_rows(f.domain_dim, &span)
}

/// Image of `f` plus the canonical cokernel projection.
///
/// The cokernel coordinate system is the complement of the image's pivot
/// columns, so induced maps on cokernels are deterministic bit-for-bit.
pub fn image_and_cokernel(f: &LinearMap) -> (Subspace, usize, LinearMap) {
    let image = Subspace::from_spanning_rows(f.codomain_dim, &f.matrix.transpose());
    let pivots = image.pivot_cols();
    let mut is_pivot = vec![false; f.codomain_dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let non_pivots: Vec<usize> = (0..f.codomain_dim).filter(|&c| !is_pivot[c]).collect();
    let coker_dim = non_pivots.len();
    let mut proj = BitMatrix::zeros(coker_dim, f.codomain_dim);
    for j in 0..f.codomain_dim {
        let mut e = BitMatrix::zeros(1, f.codomain_dim);
        e.set(0, j, true);
        let reduced = e.reduce_row_mod(&image.basis, &pivots);
        for (k, &np) in non_pivots.iter().enumerate() {
            if reduced.get(0, np) {
                proj.set(k, j, true);
            }
        }
    }
    (image, coker_dim, LinearMap::new(proj))
}

/// The canonical section of the cokernel projection produced by
/// [`image_and_cokernel`]: maps the k-th cokernel coordinate to the k-th
/// non-pivot standard basis vector. Satisfies `proj ∘ section = id`.
pub fn cokernel_section(f: &LinearMap) -> LinearMap {
    let image = Subspace::from_spanning_rows(f.codomain_dim, &f.matrix.transpose());
    let pivots = image.pivot_cols();
    let mut is_pivot = vec![false; f.codomain_dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let non_pivots: Vec<usize> = (0..f.codomain_dim).filter(|&c| !is_pivot[c]).collect();
    let mut s = BitMatrix::zeros(f.codomain_dim, non_pivots.len());
    for (k, &np) in non_pivots.iter().enumerate() {
        s.set(np, k, true);
    }
    LinearMap::new(s)
}

/// Solve `f ∘ g = target` for `g`. Returns `None` when the target's image is
/// not contained in the image of `f`. The solution is the columnwise
/// lexicographically minimal one, for determinism.
pub fn solve(f: &LinearMap, target: &LinearMap) -> Option<LinearMap> {
    assert_eq!(
        f.codomain_dim, target.codomain_dim,
        "solve: codomain mismatch"
    );
    let r = f.matrix.rref();
    let rank = r.pivots.len();
    // Kernel basis rows in RREF, for lex-minimization of each column.
    let ker = kernel_basis(f);
    let ker_pivots: Vec<usize> = (0..ker.dim())
        .map(|row| (0..f.domain_dim).find(|&c| ker.basis.get(row, c)).unwrap())
        .collect();
    let rt = r.transform.mul(&target.matrix);
    // Rows of the rref past the rank are zero; consistency demands the
    // transformed target vanish there.
    for row in rank..f.codomain_dim {
        for c in 0..target.domain_dim {
            if rt.get(row, c) {
                return None;
            }
        }
    }
    let mut g = BitMatrix::zeros(f.domain_dim, target.domain_dim);
    for c in 0..target.domain_dim {
        // Particular solution: free variables zero.
        let mut x = BitMatrix::zeros(1, f.domain_dim);
        for (row, &p) in r.pivots.iter().enumerate() {
            if rt.get(row, c) {
                x.set(0, p, true);
            }
        }
        // Lex-minimize over the solution coset. Kernel rows are in RREF, so
        // each has zeros before its leading column; clearing leading bits in
        // ascending order is optimal.
        for (row, &p) in ker_pivots.iter().enumerate() {
            if x.get(0, p) {
                let b = ker.basis.row(row);
                x = x.add(&b);
            }
        }
        for j in 0..f.domain_dim {
            if x.get(0, j) {
                g.set(j, c, true);
            }
        }
    }
    let g = LinearMap::new(g);
    debug_assert_eq!(f.compose(&g).matrix, target.matrix);
    Some(g)
}

/// Solve `g ∘ f = target` for `g` (factor through a given map on the right).
/// Exists iff `ker f ⊆ ker target`.
pub fn solve_right(f: &LinearMap, target: &LinearMap) -> Option<LinearMap> {
    assert_eq!(f.domain_dim, target.domain_dim, "solve_right: domain mismatch");
    let g_t = solve(&f.transpose(), &target.transpose())?;
    Some(g_t.transpose())
}

/// Pullback of `f: A -> C`, `g: B -> C`: the kernel of `[f | g]` on `A ⊕ B`
/// (signs are invisible in characteristic 2).
pub fn pullback(f: &LinearMap, g: &LinearMap) -> (usize, LinearMap, LinearMap) {
    assert_eq!(f.codomain_dim, g.codomain_dim, "pullback: codomain mismatch");
    let combined = f.juxtapose(g);
    let ker = kernel_basis(&combined);
    let dim = ker.dim();
    let incl = ker.inclusion();
    let p1 = LinearMap::new(incl.matrix.submatrix_rows(0, f.domain_dim));
    let p2 = LinearMap::new(
        incl.matrix
            .submatrix_rows(f.domain_dim, f.domain_dim + g.domain_dim),
    );
    debug_assert_eq!(f.compose(&p1).matrix, g.compose(&p2).matrix);
    (dim, p1, p2)
}

/// Pushout of `f: C -> A`, `g: C -> B`: the cokernel of `[f ; g]` on `A ⊕ B`.
pub fn pushout(f: &LinearMap, g: &LinearMap) -> (usize, LinearMap, LinearMap) {
    assert_eq!(f.domain_dim, g.domain_dim, "pushout: domain mismatch");
    let combined = f.stack(g);
    let (_, dim, proj) = image_and_cokernel(&combined);
    let q1 = LinearMap::new(proj.matrix.submatrix_cols(0, f.codomain_dim));
    let q2 = LinearMap::new(
        proj.matrix
            .submatrix_cols(f.codomain_dim, f.codomain_dim + g.codomain_dim),
    );
    debug_assert_eq!(q1.compose(f).matrix, q2.compose(g).matrix);
    (dim, q1, q2)
}

/// Corestrict `f: X -> V` to a subspace `S ⊆ V` containing its image.
/// Panics when the image does not land in `S`; callers rely on this being a
/// theorem about their inputs.
pub fn corestrict(f: &LinearMap, s: &Subspace) -> LinearMap {
    solve(&s.inclusion(), f).expect("corestrict: image not contained in subspace")
}

/// Map induced by `f: V -> W` on cokernel presentations `q: V -> C`,
/// `q2: W -> C2`: the unique `h` with `h ∘ q = q2 ∘ f`.
pub fn induced_on_cokernels(q: &LinearMap, q2: &LinearMap, f: &LinearMap) -> LinearMap {
    solve_right(q, &q2.compose(f)).expect("induced cokernel map does not exist")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lm(cod: usize, dom: usize, e: &[u8]) -> LinearMap {
        LinearMap::from_entries(cod, dom, e)
    }

    #[test]
    fn rref_identity() {
        let m = BitMatrix::identity(2);
        let r = m.rref();
        assert_eq!(r.reduced, m);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let m = BitMatrix::zeros(2, 2);
        let r = m.rref();
        assert_eq!(r.reduced, m);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_equal_rows_char2() {
        let m = BitMatrix::from_entries(2, 2, &[1, 1, 1, 1]);
        let r = m.rref();
        assert_eq!(r.reduced, BitMatrix::from_entries(2, 2, &[1, 1, 0, 0]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.transform.mul(&m), r.reduced);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(kernel_basis(&LinearMap::identity(2)).dim(), 0);
    }

    #[test]
    fn kernel_of_sum_map() {
        // f = [1 1] : F2^2 -> F2
        let k = kernel_basis(&lm(1, 2, &[1, 1]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis, BitMatrix::from_entries(1, 2, &[1, 1]));
    }

    #[test]
    fn kernel_by_enumeration() {
        // f = [[1,1],[1,1]]: enumerating all four vectors gives span{(1,1)}.
        let f = lm(2, 2, &[1, 1, 1, 1]);
        let k = kernel_basis(&f);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis, BitMatrix::from_entries(1, 2, &[1, 1]));
    }

    #[test]
    fn cokernel_of_map_from_zero() {
        // f = 0 : 0 -> V yields projection = identity on V.
        let f = LinearMap::zero(0, 3);
        let (im, coker_dim, proj) = image_and_cokernel(&f);
        assert_eq!(im.dim(), 0);
        assert_eq!(coker_dim, 3);
        assert_eq!(proj.matrix, BitMatrix::identity(3));
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        let (_, d, _) = image_and_cokernel(&LinearMap::identity(2));
        assert_eq!(d, 0);
    }

    #[test]
    fn cokernel_kills_second_coordinate() {
        // f = [0;1] : F2 -> F2^2, cokernel keeps the first coordinate.
        let f = lm(2, 1, &[0, 1]);
        let (_, d, proj) = image_and_cokernel(&f);
        assert_eq!(d, 1);
        assert_eq!(proj.matrix, BitMatrix::from_entries(1, 2, &[1, 0]));
    }

    #[test]
    fn solve_through_identity() {
        let t = lm(2, 2, &[1, 0, 1, 1]);
        let g = solve(&LinearMap::identity(2), &t).unwrap();
        assert_eq!(g, t);
    }

    #[test]
    fn solve_picks_lex_minimal() {
        // f = [1 1], target = [1]: solutions (1,0) and (0,1); lex-min is (0,1)?
        // Column vector coordinates: (1,0) has bit at coordinate 0, (0,1) at
        // coordinate 1. Lex order on coordinate strings: "01" < "10", so the
        // minimal solution is (0,1).
        let f = lm(1, 2, &[1, 1]);
        let g = solve(&f, &LinearMap::identity(1)).unwrap();
        assert_eq!(g.matrix, BitMatrix::from_entries(2, 1, &[0, 1]));
    }

    #[test]
    fn solve_no_solution() {
        let f = LinearMap::zero(1, 1);
        let t = LinearMap::identity(1);
        assert!(solve(&f, &t).is_none());
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let (d, p1, p2) = pullback(&LinearMap::identity(2), &LinearMap::identity(2));
        assert_eq!(d, 2);
        assert_eq!(p1.matrix, p2.matrix);
        assert!(p1.is_invertible());
    }

    #[test]
    fn pullback_with_zero_source() {
        // g = 0 from the zero space: pullback is the kernel of f.
        let f = lm(1, 2, &[1, 1]);
        let g = LinearMap::zero(0, 1);
        let (d, p1, _) = pullback(&f, &g);
        assert_eq!(d, 1);
        assert!(f.compose(&p1).is_zero());
    }

    #[test]
    fn pullback_rank_count() {
        let f = lm(1, 2, &[1, 1]);
        let (d, _, _) = pullback(&f, &LinearMap::identity(1));
        assert_eq!(d, 2);
    }

    #[test]
    fn pushout_of_identities() {
        let (d, q1, q2) = pushout(&LinearMap::identity(2), &LinearMap::identity(2));
        assert_eq!(d, 2);
        assert_eq!(q1.matrix, q2.matrix);
    }

    #[test]
    fn pushout_with_zero_target() {
        // g into the zero space: pushout is the cokernel of f.
        let f = lm(2, 1, &[0, 1]);
        let g = LinearMap::zero(1, 0);
        let (d, q1, _) = pushout(&f, &g);
        assert_eq!(d, 1);
        assert!(q1.compose(&f).is_zero());
    }

    #[test]
    fn pushout_rank_count() {
        let f = lm(2, 1, &[1, 1]);
        let (d, _, _) = pushout(&f, &LinearMap::identity(1));
        assert_eq!(d, 2);
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let m = BitMatrix::from_entries(2, 4, &[0, 1, 1, 0, 1, 0, 0, 1]);
        let j = serde_json::to_value(&m).unwrap();
        assert_eq!(j["rows"], 2);
        assert_eq!(j["cols"], 4);
        assert_eq!(j["data"][0], "0110");
        assert_eq!(j["data"][1], "1001");
        let back: BitMatrix = serde_json::from_value(j).unwrap();
        assert_eq!(back, m);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max, 0..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u8..2, r * c)
                .prop_map(move |e| BitMatrix::from_entries(r, c, &e))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix(6)) {
            let r = m.rref();
            let r2 = r.reduced.rref();
            prop_assert_eq!(&r2.reduced, &r.reduced);
            prop_assert_eq!(r.transform.mul(&m), r.reduced);
        }

        #[test]
        fn rank_nullity(m in arb_matrix(6)) {
            let f = LinearMap::new(m);
            prop_assert_eq!(kernel_basis(&f).dim() + f.rank(), f.domain_dim);
        }

        #[test]
        fn solve_is_sound(m in arb_matrix(5), t in arb_matrix(5)) {
            if m.rows() == t.rows() {
                let f = LinearMap::new(m);
                let target = LinearMap::new(t);
                if let Some(g) = solve(&f, &target) {
                    prop_assert_eq!(f.compose(&g).matrix, target.matrix);
                }
            }
        }

        #[test]
        fn pullback_square_commutes(a in arb_matrix(4), b in arb_matrix(4)) {
            if a.rows() == b.rows() {
                let f = LinearMap::new(a);
                let g = LinearMap::new(b);
                let (_, p1, p2) = pullback(&f, &g);
                prop_assert_eq!(f.compose(&p1).matrix, g.compose(&p2).matrix);
            }
        }

        #[test]
        fn pushout_square_commutes(a in arb_matrix(4), b in arb_matrix(4)) {
            if a.cols() == b.cols() {
                let f = LinearMap::new(a);
                let g = LinearMap::new(b);
                let (_, q1, q2) = pushout(&f, &g);
                prop_assert_eq!(q1.compose(&f).matrix, q2.compose(&g).matrix);
            }
        }
    }

    // Exhaustive rank-nullity over all matrices up to 3x3.
    #[test]
    fn rank_nullity_exhaustive_small() {
        for rows in 0..=3usize {
            for cols in 0..=3usize {
                let bits = rows * cols;
                for mask in 0u32..(1 << bits) {
                    let entries: Vec<u8> =
                        (0..bits).map(|i| ((mask >> i) & 1) as u8).collect();
                    let f = LinearMap::new(BitMatrix::from_entries(rows, cols, &entries));
                    assert_eq!(kernel_basis(&f).dim() + f.rank(), f.domain_dim);
                }
            }
        }
    }
}
