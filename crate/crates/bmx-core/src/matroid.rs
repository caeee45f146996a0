//! Simple binary matroids as sets of nonzero points in GF(2)^r.
//!
//! A matroid of rank r is stored as its sorted list of distinct nonzero
//! point labels, each label the bit-packing of a column vector. Two
//! invariants hold everywhere: points span the full ambient space (the
//! representation has no redundant coordinates), and no point repeats, so
//! every value is simple. Operations that could break either invariant
//! (deletion of a coloop, contraction) re-embed into the correct rank.

use crate::gf2::{Eliminator, Gf2Matrix, Gf2Vector, MAX_DIM};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatroidError {
    NoSuchPoint(u16),
    RankTooLarge(u8),
    ZeroPoint,
    PointsNotAscending,
    PointOutOfRange { point: u16, rank: u8 },
    RankDeficient { declared: u8, actual: u8 },
}

impl fmt::Display for MatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidError::NoSuchPoint(p) => write!(f, "no point {p} in the matroid"),
            MatroidError::RankTooLarge(r) => write!(f, "rank {r} exceeds {MAX_DIM}"),
            MatroidError::ZeroPoint => write!(f, "zero is not a point"),
            MatroidError::PointsNotAscending => {
                write!(f, "points must be strictly ascending")
            }
            MatroidError::PointOutOfRange { point, rank } => {
                write!(f, "point {point} does not fit in rank {rank}")
            }
            MatroidError::RankDeficient { declared, actual } => {
                write!(f, "points span rank {actual}, not the declared {declared}")
            }
        }
    }
}

/// A three-point line: three distinct points XORing to zero, kept sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Line([u16; 3]);

impl Line {
    fn new(a: u16, b: u16, c: u16) -> Self {
        debug_assert_eq!(a ^ b ^ c, 0);
        let mut pts = [a, b, c];
        pts.sort_unstable();
        Line(pts)
    }

    pub fn points(&self) -> [u16; 3] {
        self.0
    }
}

/// Coordinate projection that re-embeds a rank-deficient column set into
/// its own rank. Keeps the pivot coordinates of the column span, which is
/// injective on that span, so point identities survive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reembedding {
    pivots: Vec<u8>,
}

impl Reembedding {
    fn identity(dim: u8) -> Self {
        Reembedding { pivots: (0..dim).collect() }
    }

    pub fn apply(&self, v: u16) -> u16 {
        let mut out = 0u16;
        for (i, &p) in self.pivots.iter().enumerate() {
            out |= (v >> p & 1) << i;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.pivots.iter().enumerate().all(|(i, &p)| i as u8 == p)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BinaryMatroid {
    r: u8,
    points: Vec<u16>,
}

impl BinaryMatroid {
    pub fn empty() -> Self {
        BinaryMatroid { r: 0, points: Vec::new() }
    }

    /// Builds the matroid represented by a list of columns in GF(2)^dim:
    /// zero columns and duplicates collapse, and if the columns do not span
    /// the space the result is re-embedded into its own rank.
    pub fn from_columns(dim: u8, cols: impl IntoIterator<Item = u16>) -> Self {
        Self::from_columns_with_map(dim, cols).0
    }

    /// As `from_columns`, also returning the projection applied to labels,
    /// so callers tracking named columns can follow their points.
    pub fn from_columns_with_map(
        dim: u8,
        cols: impl IntoIterator<Item = u16>,
    ) -> (Self, Reembedding) {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        let mut pts: Vec<u16> = cols.into_iter().filter(|&c| c != 0).collect();
        for &c in &pts {
            assert!(dim == MAX_DIM || c >> dim == 0, "column 0x{c:x} outside dimension {dim}");
        }
        pts.sort_unstable();
        pts.dedup();
        let mut e = Eliminator::new();
        for &c in &pts {
            e.insert(c);
        }
        let rank = e.rank() as u8;
        if rank == dim {
            return (BinaryMatroid { r: dim, points: pts }, Reembedding::identity(dim));
        }
        let map = Reembedding { pivots: e.pivots().collect() };
        let mut mapped: Vec<u16> = pts.iter().map(|&c| map.apply(c)).collect();
        mapped.sort_unstable();
        debug_assert!(mapped.windows(2).all(|w| w[0] != w[1]));
        (BinaryMatroid { r: rank, points: mapped }, map)
    }

    /// Columns of a matrix, one point per column.
    pub fn from_matrix(m: &Gf2Matrix) -> Self {
        Self::from_columns(m.nrows() as u8, m.columns().map(|c| c.bits()))
    }

    /// Validating constructor from an already sorted point list.
    pub fn from_points_checked(r: u8, points: Vec<u16>) -> Result<Self, MatroidError> {
        if r > MAX_DIM {
            return Err(MatroidError::RankTooLarge(r));
        }
        let mut e = Eliminator::new();
        let mut prev = 0u16;
        for &p in &points {
            if p == 0 {
                return Err(MatroidError::ZeroPoint);
            }
            if p <= prev && prev != 0 {
                return Err(MatroidError::PointsNotAscending);
            }
            if r < MAX_DIM && p >> r != 0 {
                return Err(MatroidError::PointOutOfRange { point: p, rank: r });
            }
            e.insert(p);
            prev = p;
        }
        let actual = e.rank() as u8;
        if actual != r {
            return Err(MatroidError::RankDeficient { declared: r, actual });
        }
        Ok(BinaryMatroid { r, points })
    }

    /// Panicking form of `from_points_checked` for statically known data.
    pub fn from_points(r: u8, points: &[u16]) -> Self {
        Self::from_points_checked(r, points.to_vec()).unwrap()
    }

    /// Internal fast path: points already sorted, distinct, nonzero, full rank.
    pub(crate) fn from_sorted_unchecked(r: u8, points: Vec<u16>) -> Self {
        debug_assert!(Self::from_points_checked(r, points.clone()).is_ok());
        BinaryMatroid { r, points }
    }

    pub fn rank(&self) -> u8 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[u16] {
        &self.points
    }

    pub fn contains(&self, p: u16) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn point_vectors(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        self.points.iter().map(move |&p| Gf2Vector::new(self.r, p))
    }

    /// Deletes one point. The rank drops exactly when the point was a
    /// coloop; the result is then re-embedded.
    pub fn delete(&self, p: u16) -> Result<Self, MatroidError> {
        if !self.contains(p) {
            return Err(MatroidError::NoSuchPoint(p));
        }
        let remaining = self.points.iter().copied().filter(|&q| q != p);
        Ok(Self::from_columns(self.r, remaining))
    }

    /// Contracts one point and simplifies, quotienting the ambient space by
    /// the span of `p` and collapsing the parallel pairs that appear. The
    /// result has rank exactly one less.
    pub fn contract(&self, p: u16) -> Result<Self, MatroidError> {
        if !self.contains(p) {
            return Err(MatroidError::NoSuchPoint(p));
        }
        let b = 15 - p.leading_zeros() as u8;
        let cols = self.points.iter().filter(|&&x| x != p).map(|&x| {
            // Kill coordinate b using p as the eliminant, then drop it.
            let y = if x >> b & 1 == 1 { x ^ p } else { x };
            debug_assert_ne!(y, 0);
            drop_bit(y, b)
        });
        let out = Self::from_columns(self.r - 1, cols);
        debug_assert_eq!(out.rank(), self.r - 1);
        Ok(out)
    }

    /// The matroid on a subset of the points (re-embedded if it spans less).
    pub fn restriction(&self, keep: &[u16]) -> Self {
        debug_assert!(keep.iter().all(|&p| self.contains(p)));
        Self::from_columns(self.r, keep.iter().copied())
    }

    /// All three-point lines.
    pub fn lines(&self) -> Vec<Line> {
        let mut out = Vec::new();
        for (i, &a) in self.points.iter().enumerate() {
            for &b in &self.points[i + 1..] {
                let c = a ^ b;
                if c > b && self.contains(c) {
                    out.push(Line::new(a, b, c));
                }
            }
        }
        out
    }

    pub fn lines_through(&self, p: u16) -> Result<Vec<Line>, MatroidError> {
        if !self.contains(p) {
            return Err(MatroidError::NoSuchPoint(p));
        }
        let mut out = Vec::new();
        for &a in &self.points {
            let b = a ^ p;
            // Each line {p, a, b} shows up once, at its smaller non-p point.
            if a != p && b > a && self.contains(b) {
                out.push(Line::new(p, a, b));
            }
        }
        Ok(out)
    }

    pub fn line_count_through(&self, p: u16) -> Result<usize, MatroidError> {
        Ok(self.lines_through(p)?.len())
    }

    /// Sorted line counts per point; an isomorphism invariant.
    pub fn line_degree_profile(&self) -> Vec<usize> {
        let mut prof: Vec<usize> = self
            .points
            .iter()
            .map(|&p| self.line_count_through(p).unwrap())
            .collect();
        prof.sort_unstable();
        prof
    }
}

fn drop_bit(x: u16, b: u8) -> u16 {
    let low = x & ((1u16 << b) - 1);
    let high = (x as u32 >> (b + 1)) as u16;
    low | high << b
}

impl fmt::Display for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} pts=", self.r)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseMatroidError {
    Syntax(String),
    Invalid(MatroidError),
}

impl fmt::Display for ParseMatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseMatroidError::Syntax(msg) => write!(f, "{msg}"),
            ParseMatroidError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl From<MatroidError> for ParseMatroidError {
    fn from(e: MatroidError) -> Self {
        ParseMatroidError::Invalid(e)
    }
}

impl FromStr for BinaryMatroid {
    type Err = ParseMatroidError;

    /// Parses the `Display` form, e.g. `r=3 pts=1,2,4,7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use alloc::string::ToString;
        let syntax = |m: &str| ParseMatroidError::Syntax(m.to_string());
        let mut fields = s.split_whitespace();
        let rf = fields.next().ok_or_else(|| syntax("empty input"))?;
        let pf = fields.next().ok_or_else(|| syntax("missing pts= field"))?;
        if fields.next().is_some() {
            return Err(syntax("trailing fields"));
        }
        let r: u8 = rf
            .strip_prefix("r=")
            .ok_or_else(|| syntax("expected r=<rank>"))?
            .parse()
            .map_err(|_| syntax("bad rank"))?;
        let body = pf.strip_prefix("pts=").ok_or_else(|| syntax("expected pts=<points>"))?;
        let points = parse_point_list(body).map_err(ParseMatroidError::Syntax)?;
        Ok(BinaryMatroid::from_points_checked(r, points)?)
    }
}

/// Parses a comma-separated ascending point list; empty string means none.
pub fn parse_point_list(body: &str) -> Result<Vec<u16>, String> {
    use alloc::string::ToString;
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| tok.parse::<u16>().map_err(|_| {
            let mut m = "bad point value: ".to_string();
            m.push_str(tok);
            m
        }))
        .collect()
}
