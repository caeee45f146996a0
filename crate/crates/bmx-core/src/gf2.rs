//! Bit-packed linear algebra over GF(2).
//!
//! Vectors live in dimension at most 16 and pack their coordinates into a
//! `u16`: coordinate `i` (0-based) occupies bit `i`, so the integer value of
//! a vector doubles as a stable point label throughout the crate.

use alloc::vec::Vec;
use core::fmt;
use core::ops::BitXor;

/// Largest supported vector dimension.
pub const MAX_DIM: u8 = 16;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gf2Error {
    /// Operands of a single operation must share one dimension.
    MixedDimensions,
    /// `solve_in_basis` requires a linearly independent basis.
    DependentBasis,
}

impl fmt::Display for Gf2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf2Error::MixedDimensions => write!(f, "vectors have mixed dimensions"),
            Gf2Error::DependentBasis => write!(f, "basis vectors are linearly dependent"),
        }
    }
}

/// A vector in GF(2)^dim, dim <= 16.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf2Vector {
    bits: u16,
    dim: u8,
}

impl Gf2Vector {
    /// Panics if `dim > 16` or `bits` has a coordinate outside the dimension.
    pub fn new(dim: u8, bits: u16) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        assert!(
            dim == MAX_DIM || bits >> dim == 0,
            "bits 0x{bits:x} outside dimension {dim}"
        );
        Gf2Vector { bits, dim }
    }

    pub fn zero(dim: u8) -> Self {
        Self::new(dim, 0)
    }

    /// Standard basis vector with coordinate `coord` (0-based) set.
    pub fn unit(dim: u8, coord: u8) -> Self {
        assert!(coord < dim);
        Self::new(dim, 1 << coord)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i`, 0-based.
    pub fn coord(&self, i: u8) -> bool {
        assert!(i < self.dim);
        self.bits >> i & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;
    fn bitxor(self, rhs: Gf2Vector) -> Gf2Vector {
        assert_eq!(self.dim, rhs.dim, "xor of mixed dimensions");
        Gf2Vector { bits: self.bits ^ rhs.bits, dim: self.dim }
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Coordinates printed first-to-last, e.g. e1 in dim 4 is "1000".
        for i in 0..self.dim {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        write!(f, "<{}>", self.bits)
    }
}

/// A matrix over GF(2) stored as a list of rows sharing one dimension.
///
/// Rows are coordinate vectors; columns are the represented elements. The
/// number of columns equals the row dimension and is capped at 16. The number
/// of rows is unrestricted, but column extraction requires at most 16 rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
    dim: u8,
}

impl Gf2Matrix {
    /// Builds a matrix from rows, which must share one dimension.
    pub fn from_rows(rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        let dim = match rows.first() {
            Some(v) => v.dim(),
            None => 0,
        };
        if rows.iter().any(|v| v.dim() != dim) {
            return Err(Gf2Error::MixedDimensions);
        }
        Ok(Gf2Matrix { rows, dim })
    }

    /// Convenience constructor from 0/1 literals; rows must be equal length.
    pub fn from_rows_01(rows: &[&[u8]]) -> Self {
        let dim = rows.first().map_or(0, |r| r.len()) as u8;
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len() as u8, dim, "ragged rows");
                let mut bits = 0u16;
                for (i, &c) in r.iter().enumerate() {
                    assert!(c <= 1);
                    bits |= (c as u16) << i;
                }
                Gf2Vector::new(dim, bits)
            })
            .collect();
        Gf2Matrix { rows, dim }
    }

    /// Builds a matrix column by column; each column lives in GF(2)^nrows.
    pub fn from_columns(nrows: u8, cols: &[u16]) -> Self {
        assert!(cols.len() <= MAX_DIM as usize, "too many columns");
        assert!(nrows <= MAX_DIM);
        let dim = cols.len() as u8;
        let rows = (0..nrows)
            .map(|i| {
                let mut bits = 0u16;
                for (j, &c) in cols.iter().enumerate() {
                    assert!(nrows == MAX_DIM || c >> nrows == 0, "column outside row count");
                    bits |= (c >> i & 1) << j;
                }
                Gf2Vector::new(dim, bits)
            })
            .collect();
        Gf2Matrix { rows, dim }
    }

    pub fn identity(n: u8) -> Self {
        assert!(n <= MAX_DIM);
        let rows = (0..n).map(|i| Gf2Vector::unit(n, i)).collect();
        Gf2Matrix { rows, dim: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> u8 {
        self.dim
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        self.rows[i]
    }

    /// Column `j` as a vector in GF(2)^nrows. Requires at most 16 rows.
    pub fn column(&self, j: u8) -> Gf2Vector {
        assert!(j < self.dim);
        assert!(self.rows.len() <= MAX_DIM as usize, "too many rows for column view");
        let mut bits = 0u16;
        for (i, row) in self.rows.iter().enumerate() {
            bits |= ((row.bits() >> j) & 1) << i;
        }
        Gf2Vector::new(self.rows.len() as u8, bits)
    }

    pub fn columns(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        (0..self.dim).map(move |j| self.column(j))
    }

    /// Applies the matrix to a column vector in GF(2)^ncols, producing a
    /// vector in GF(2)^nrows. Requires at most 16 rows.
    pub fn apply(&self, v: Gf2Vector) -> Gf2Vector {
        assert_eq!(v.dim(), self.dim, "vector dimension must match column count");
        assert!(self.rows.len() <= MAX_DIM as usize);
        let mut bits = 0u16;
        for (i, row) in self.rows.iter().enumerate() {
            bits |= (((row.bits() & v.bits()).count_ones() & 1) as u16) << i;
        }
        Gf2Vector::new(self.rows.len() as u8, bits)
    }
}

/// Incremental GF(2) eliminator keyed by pivot position (lowest set bit).
#[derive(Default)]
pub(crate) struct Eliminator {
    by_pivot: [u16; MAX_DIM as usize],
}

impl Eliminator {
    pub(crate) fn new() -> Self {
        Eliminator { by_pivot: [0; MAX_DIM as usize] }
    }

    /// Reduces `v` against the rows held so far; inserts the residual if it
    /// is nonzero. Returns true when the vector enlarged the span.
    pub(crate) fn insert(&mut self, mut v: u16) -> bool {
        while v != 0 {
            let p = v.trailing_zeros() as usize;
            if self.by_pivot[p] == 0 {
                self.by_pivot[p] = v;
                return true;
            }
            v ^= self.by_pivot[p];
        }
        false
    }

    pub(crate) fn rank(&self) -> usize {
        self.by_pivot.iter().filter(|&&w| w != 0).count()
    }

    /// Pivot positions of the echelon basis, ascending.
    pub(crate) fn pivots(&self) -> impl Iterator<Item = u8> + '_ {
        (0..MAX_DIM).filter(move |&p| self.by_pivot[p as usize] != 0)
    }

    /// Fully reduced echelon basis rows, sorted by pivot.
    pub(crate) fn reduced_rows(&self) -> Vec<u16> {
        let mut rows: Vec<u16> =
            self.by_pivot.iter().copied().filter(|&w| w != 0).collect();
        // Clear every pivot coordinate from the other rows.
        for i in 0..rows.len() {
            let p = rows[i].trailing_zeros();
            for j in 0..rows.len() {
                if i != j && rows[j] >> p & 1 == 1 {
                    rows[j] ^= rows[i];
                }
            }
        }
        rows.sort_unstable_by_key(|w| w.trailing_zeros());
        rows
    }
}

pub(crate) fn rank_words(words: impl IntoIterator<Item = u16>) -> usize {
    let mut e = Eliminator::new();
    for w in words {
        e.insert(w);
    }
    e.rank()
}

/// Rank of a set of vectors sharing one dimension.
pub fn rank(vectors: &[Gf2Vector]) -> Result<usize, Gf2Error> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.dim() != first.dim()) {
            return Err(Gf2Error::MixedDimensions);
        }
    }
    Ok(rank_words(vectors.iter().map(|v| v.bits())))
}

/// Expresses `target` in terms of an independent `basis`.
///
/// Returns the set of basis indices (bit `i` set means `basis[i]` occurs in
/// the combination), or `None` when the target lies outside the span. The
/// combination over GF(2) is unique because the basis is independent; a
/// dependent basis is rejected.
pub fn solve_in_basis(basis: &[Gf2Vector], target: Gf2Vector) -> Result<Option<u32>, Gf2Error> {
    if basis.iter().any(|v| v.dim() != target.dim()) {
        return Err(Gf2Error::MixedDimensions);
    }
    // Augment each vector with the combination that produced it.
    let mut rows: [(u16, u32); MAX_DIM as usize] = [(0, 0); MAX_DIM as usize];
    for (i, v) in basis.iter().enumerate() {
        let mut w = v.bits();
        let mut c = 1u32 << i;
        loop {
            if w == 0 {
                return Err(Gf2Error::DependentBasis);
            }
            let p = w.trailing_zeros() as usize;
            if rows[p].0 == 0 {
                rows[p] = (w, c);
                break;
            }
            w ^= rows[p].0;
            c ^= rows[p].1;
        }
    }
    let mut w = target.bits();
    let mut c = 0u32;
    while w != 0 {
        let p = w.trailing_zeros() as usize;
        if rows[p].0 == 0 {
            return Ok(None);
        }
        w ^= rows[p].0;
        c ^= rows[p].1;
    }
    Ok(Some(c))
}

/// Reduced row-echelon form. The row space is preserved, pivots are the
/// lowest coordinate of each nonzero row, and zero rows sink to the bottom
/// so the shape is unchanged.
pub fn row_reduce(m: &Gf2Matrix) -> Gf2Matrix {
    let mut e = Eliminator::new();
    for row in m.rows() {
        e.insert(row.bits());
    }
    let mut rows: Vec<Gf2Vector> = e
        .reduced_rows()
        .into_iter()
        .map(|w| Gf2Vector::new(m.ncols(), w))
        .collect();
    rows.resize(m.nrows(), Gf2Vector::zero(m.ncols()));
    Gf2Matrix { rows, dim: m.ncols() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(dim: u8, bits: u16) -> Gf2Vector {
        Gf2Vector::new(dim, bits)
    }

    #[test]
    fn rank_of_empty_set_is_zero() {
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn rank_of_dependent_triple() {
        // e1, e2, e1+e2 in dimension 3.
        assert_eq!(rank(&[v(3, 1), v(3, 2), v(3, 3)]).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_mixed_dimensions() {
        assert_eq!(rank(&[v(3, 1), v(4, 1)]), Err(Gf2Error::MixedDimensions));
    }

    #[test]
    fn solve_in_unit_basis() {
        let basis = [v(3, 1), v(3, 2), v(3, 4)];
        // e1 + e3 decomposes over basis entries 0 and 2.
        assert_eq!(solve_in_basis(&basis, v(3, 5)).unwrap(), Some(0b101));
    }

    #[test]
    fn solve_outside_span() {
        let basis = [v(3, 1), v(3, 2)];
        assert_eq!(solve_in_basis(&basis, v(3, 4)).unwrap(), None);
    }

    #[test]
    fn solve_rejects_dependent_basis() {
        let basis = [v(3, 1), v(3, 2), v(3, 3)];
        assert_eq!(solve_in_basis(&basis, v(3, 7)), Err(Gf2Error::DependentBasis));
    }

    #[test]
    fn solve_zero_target_is_empty_combination() {
        let basis = [v(3, 1), v(3, 6)];
        assert_eq!(solve_in_basis(&basis, v(3, 0)).unwrap(), Some(0));
    }

    #[test]
    fn row_reduce_fixes_identity() {
        let id = Gf2Matrix::identity(4);
        assert_eq!(row_reduce(&id), id);
    }

    #[test]
    fn row_reduce_fixes_zero_matrix() {
        let z = Gf2Matrix::from_rows(alloc::vec![Gf2Vector::zero(5); 3]).unwrap();
        assert_eq!(row_reduce(&z), z);
    }

    #[test]
    fn row_reduce_preserves_row_space() {
        let m = Gf2Matrix::from_rows_01(&[&[1, 1, 0, 1], &[0, 1, 1, 1], &[1, 0, 1, 0]]);
        let r = row_reduce(&m);
        let mut all: Vec<Gf2Vector> = m.rows().to_vec();
        all.extend_from_slice(r.rows());
        // Joint rank unchanged means equal row spaces given equal ranks.
        let rm = rank(m.rows()).unwrap();
        assert_eq!(rank(r.rows()).unwrap(), rm);
        assert_eq!(rank(&all).unwrap(), rm);
    }

    #[test]
    fn columns_roundtrip() {
        let m = Gf2Matrix::from_rows_01(&[&[1, 0, 1], &[1, 1, 0]]);
        let cols: Vec<u16> = m.columns().map(|c| c.bits()).collect();
        assert_eq!(cols, [3, 2, 1]);
        let back = Gf2Matrix::from_columns(2, &cols);
        assert_eq!(back, m);
    }

    #[test]
    fn apply_acts_by_columns() {
        let m = Gf2Matrix::from_rows_01(&[&[0, 1], &[1, 1]]);
        // Image of e1 is column 0.
        assert_eq!(m.apply(v(2, 1)), m.column(0));
        assert_eq!(m.apply(v(2, 3)), m.column(0) ^ m.column(1));
    }
}
