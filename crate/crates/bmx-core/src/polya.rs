//! Conjugacy classes of GL(n,2), cycle types on the nonzero vectors, and
//! orbit counting for subsets of those vectors.
//!
//! Over GF(2) the only scalar is 1, so PGL(n,2) = GL(n,2) and everything
//! here works in GL directly. Classes are indexed by rational canonical
//! form: an assignment of a partition to each monic irreducible polynomial
//! other than x, with total degree n. Subset orbits then come from
//! Burnside's lemma, one cycle-index monomial per class, in exact
//! big-integer arithmetic throughout.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf2::{self, Gf2Matrix, Gf2Vector};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyaError {
    RankOutOfRange(u8),
    SizeOutOfRange { n: u8, size: usize },
    Singular,
    TableSize { expected: usize, found: usize },
}

impl core::fmt::Display for PolyaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PolyaError::RankOutOfRange(n) => write!(f, "rank {n} is outside 1..=8"),
            PolyaError::SizeOutOfRange { n, size } => {
                write!(f, "size {size} is outside 0..=2^{n}-1")
            }
            PolyaError::Singular => write!(f, "matrix is not invertible"),
            PolyaError::TableSize { expected, found } => {
                write!(f, "size table has {found} entries, expected {expected}")
            }
        }
    }
}

/// One conjugacy class of GL(n,2).
///
/// The signature lists (irreducible polynomial, partition) pairs with
/// nonempty partitions only; a polynomial is a coefficient bitmask with
/// bit i the coefficient of x^i. The representative is the direct sum of
/// the companion matrices of p^e over the parts e of each partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugacyClass {
    signature: Vec<(u16, Vec<u8>)>,
    representative: Gf2Matrix,
    class_size: BigUint,
}

impl ConjugacyClass {
    pub fn signature(&self) -> &[(u16, Vec<u8>)] {
        &self.signature
    }

    pub fn representative(&self) -> &Gf2Matrix {
        &self.representative
    }

    pub fn class_size(&self) -> &BigUint {
        &self.class_size
    }
}

/// Cycle lengths, with multiplicity, of the permutation a matrix induces
/// on the nonzero vectors. Entries are (length, count), ascending length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleType {
    cycles: Vec<(u32, u32)>,
}

impl CycleType {
    pub fn cycles(&self) -> &[(u32, u32)] {
        &self.cycles
    }

    pub fn point_total(&self) -> u64 {
        self.cycles.iter().map(|&(l, c)| l as u64 * c as u64).sum()
    }
}

/// |GL(n,2)| = prod_{i<n} (2^n - 2^i).
pub fn gl_order(n: u8) -> BigUint {
    let mut o = BigUint::one();
    for i in 0..n {
        o *= (BigUint::one() << n) - (BigUint::one() << i);
    }
    o
}

pub fn conjugacy_classes(n: u8) -> Result<Vec<ConjugacyClass>, PolyaError> {
    if !(1..=8).contains(&n) {
        return Err(PolyaError::RankOutOfRange(n));
    }
    let order = gl_order(n);
    let mut out = Vec::new();
    for signature in signatures(n) {
        let cent = centralizer_order(&signature);
        assert!(
            (&order % &cent).is_zero(),
            "centralizer order must divide the group order"
        );
        let class_size = &order / &cent;
        let representative = representative(n, &signature);
        out.push(ConjugacyClass { signature, representative, class_size });
    }
    Ok(out)
}

/// Cycle decomposition of v -> rep.v on the nonzero vectors, by direct
/// iteration. Fails on anything non-square or singular.
pub fn cycle_type_on_points(rep: &Gf2Matrix) -> Result<CycleType, PolyaError> {
    let n = rep.ncols();
    if n == 0 || rep.nrows() != n as usize {
        return Err(PolyaError::Singular);
    }
    if gf2::rank_words((0..n as usize).map(|i| rep.row(i).bits())) != n as usize {
        return Err(PolyaError::Singular);
    }
    let npts = (1usize << n) - 1;
    let mut visited = vec![false; npts + 1];
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for start in 1..=npts as u16 {
        if visited[start as usize] {
            continue;
        }
        let mut len = 0u32;
        let mut v = start;
        loop {
            visited[v as usize] = true;
            len += 1;
            v = apply(rep, v);
            if v == start {
                break;
            }
        }
        *counts.entry(len).or_insert(0) += 1;
    }
    Ok(CycleType { cycles: counts.into_iter().collect() })
}

/// Orbit counts for k-subsets of the nonzero vectors, all k at once:
/// averages the per-class fixed-subset generating functions
/// prod (1 + x^length)^count over the group. Entry k equals the number
/// of simple binary matroids of rank <= n and size k.
pub fn subset_orbit_profile(n: u8) -> Result<Vec<BigUint>, PolyaError> {
    let classes = conjugacy_classes(n)?;
    let npts = (1usize << n) - 1;
    let mut total = vec![BigUint::zero(); npts + 1];
    for cl in &classes {
        let ct = cycle_type_on_points(&cl.representative)?;
        let mut poly = vec![BigUint::one()];
        for &(len, count) in ct.cycles() {
            poly = stretch_multiply(&poly, len as usize, count);
        }
        debug_assert_eq!(poly.len(), npts + 1);
        for (k, c) in poly.iter().enumerate() {
            total[k] += c * &cl.class_size;
        }
    }
    let order = gl_order(n);
    let mut out = Vec::with_capacity(npts + 1);
    for t in total {
        // Burnside: the fixed-point total over the group is divisible by
        // its order
        assert!((&t % &order).is_zero(), "orbit total must divide the group order");
        out.push(&t / &order);
    }
    Ok(out)
}

pub fn count_subset_orbits(n: u8, k: usize) -> Result<BigUint, PolyaError> {
    if !(1..=8).contains(&n) {
        return Err(PolyaError::RankOutOfRange(n));
    }
    if k >= 1usize << n {
        return Err(PolyaError::SizeOutOfRange { n, size: k });
    }
    Ok(subset_orbit_profile(n)?.swap_remove(k))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusMismatch {
    pub size: usize,
    pub expected: BigUint,
    pub found: u64,
}

/// Outcome of comparing an exhaustively enumerated size table against the
/// orbit counts. Mismatches are report content, not errors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusReport {
    n: u8,
    mismatches: Vec<CensusMismatch>,
}

impl CensusReport {
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn mismatches(&self) -> &[CensusMismatch] {
        &self.mismatches
    }
}

impl core::fmt::Display for CensusReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.passed() {
            return write!(f, "census for rank <= {}: all sizes match", self.n);
        }
        writeln!(f, "census for rank <= {}: {} mismatches", self.n, self.mismatches.len())?;
        for m in &self.mismatches {
            writeln!(f, "  size {}: expected {}, found {}", m.size, m.expected, m.found)?;
        }
        Ok(())
    }
}

/// Checks a table of per-size class counts, summed over ranks <= n, for
/// every size 0..=2^n-1. The table must come from a complete unrestricted
/// enumeration; its length must be exactly 2^n.
pub fn census_check(n: u8, counts_by_size: &[u64]) -> Result<CensusReport, PolyaError> {
    let expected = subset_orbit_profile(n)?;
    if counts_by_size.len() != expected.len() {
        return Err(PolyaError::TableSize {
            expected: expected.len(),
            found: counts_by_size.len(),
        });
    }
    let mismatches = expected
        .into_iter()
        .zip(counts_by_size)
        .enumerate()
        .filter(|(_, (e, &c))| *e != BigUint::from(c))
        .map(|(size, (expected, &found))| CensusMismatch { size, expected, found })
        .collect();
    Ok(CensusReport { n, mismatches })
}

fn apply(rep: &Gf2Matrix, v: u16) -> u16 {
    let mut w = 0u16;
    for i in 0..rep.nrows() {
        w |= (((rep.row(i).bits() & v).count_ones() as u16) & 1) << i;
    }
    w
}

fn poly_degree(f: u16) -> u8 {
    debug_assert!(f != 0);
    15 - f.leading_zeros() as u8
}

fn poly_mul(a: u32, b: u32) -> u32 {
    let mut p = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            p ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    p
}

fn poly_pow(f: u16, e: u8) -> u16 {
    let mut p = 1u32;
    for _ in 0..e {
        p = poly_mul(p, f as u32);
    }
    debug_assert!(p <= u16::MAX as u32);
    p as u16
}

fn poly_rem(a: u16, b: u16) -> u16 {
    let db = poly_degree(b) as i32;
    let mut a = a;
    while a != 0 && poly_degree(a) as i32 >= db {
        a ^= b << (poly_degree(a) as i32 - db);
    }
    a
}

/// Monic irreducibles of degree 1..=max_d with x excluded, ascending.
/// Candidates with zero constant term are multiples of x, so sieving by
/// the collected polynomials (all with constant term 1) is complete.
fn irreducibles_up_to(max_d: u8) -> Vec<u16> {
    let mut irr: Vec<u16> = Vec::new();
    for d in 1..=max_d {
        for cand in (1u16 << d) | 1..1u16 << (d + 1) {
            if cand & 1 == 0 {
                continue;
            }
            if irr
                .iter()
                .take_while(|&&q| poly_degree(q) <= d / 2)
                .all(|&q| poly_rem(cand, q) != 0)
            {
                irr.push(cand);
            }
        }
    }
    irr
}

/// Partitions of m, parts descending, largest-first order; [[]] for m=0.
fn partitions(m: u8) -> Vec<Vec<u8>> {
    fn rec(left: u8, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// All rational-canonical-form signatures of total degree n: per
/// irreducible f of degree d, a partition of some m_f >= 0, with
/// sum d.m_f = n. Only nonempty partitions are recorded.
fn signatures(n: u8) -> Vec<Vec<(u16, Vec<u8>)>> {
    fn rec(
        irr: &[u16],
        parts: &[Vec<Vec<u8>>],
        idx: usize,
        left: u8,
        acc: &mut Vec<(u16, Vec<u8>)>,
        out: &mut Vec<Vec<(u16, Vec<u8>)>>,
    ) {
        if idx == irr.len() {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        rec(irr, parts, idx + 1, left, acc, out);
        let d = poly_degree(irr[idx]);
        for mf in 1..=left / d {
            for lam in &parts[mf as usize] {
                acc.push((irr[idx], lam.clone()));
                rec(irr, parts, idx + 1, left - d * mf, acc, out);
                acc.pop();
            }
        }
    }
    let irr = irreducibles_up_to(n);
    let parts: Vec<Vec<Vec<u8>>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    rec(&irr, &parts, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Centralizer order of one primary component over Q = 2^d: for a
/// partition with conjugate parts c_i and multiplicities m_j this is
/// Q^(sum c_i^2 - sum m_j(m_j+1)/2) . prod_j prod_{i<=m_j} (Q^i - 1).
fn pair_centralizer(d: u8, lam: &[u8]) -> BigUint {
    let mut sq: u32 = 0;
    for i in 1..=lam[0] {
        let tall = lam.iter().filter(|&&p| p >= i).count() as u32;
        sq += tall * tall;
    }
    let mut tri: u32 = 0;
    let mut prod = BigUint::one();
    let mut idx = 0;
    while idx < lam.len() {
        let part = lam[idx];
        let mut mult = 0u32;
        while idx < lam.len() && lam[idx] == part {
            mult += 1;
            idx += 1;
        }
        tri += mult * (mult + 1) / 2;
        for j in 1..=mult {
            prod *= (BigUint::one() << (d as u32 * j)) - 1u32;
        }
    }
    prod << (d as u32 * (sq - tri))
}

fn centralizer_order(signature: &[(u16, Vec<u8>)]) -> BigUint {
    let mut c = BigUint::one();
    for (f, lam) in signature {
        c *= pair_centralizer(poly_degree(*f), lam);
    }
    c
}

/// Direct sum of companion matrices of f^e, one block per part e of each
/// partition. Row i of a degree-m block carries the subdiagonal 1 and, in
/// the last block column, coefficient i of the block polynomial.
fn representative(n: u8, signature: &[(u16, Vec<u8>)]) -> Gf2Matrix {
    let mut rows: Vec<Gf2Vector> = Vec::with_capacity(n as usize);
    let mut offset: u8 = 0;
    for (f, lam) in signature {
        let d = poly_degree(*f);
        for &part in lam {
            let g = poly_pow(*f, part);
            let m = d * part;
            for i in 0..m {
                let mut bits = ((g >> i) & 1) << (offset + m - 1);
                if i > 0 {
                    bits ^= 1 << (offset + i - 1);
                }
                rows.push(Gf2Vector::new(n, bits));
            }
            offset += m;
        }
    }
    Gf2Matrix::from_rows(rows).expect("companion rows share the ambient dimension")
}

/// poly . (1 + x^len)^count by sparse convolution over the binomial row.
fn stretch_multiply(poly: &[BigUint], len: usize, count: u32) -> Vec<BigUint> {
    let deg = poly.len() - 1 + len * count as usize;
    let mut next = vec![BigUint::zero(); deg + 1];
    let mut binom = BigUint::one();
    for j in 0..=count {
        if j > 0 {
            binom = &binom * (count + 1 - j) / j;
        }
        let shift = len * j as usize;
        for (i, p) in poly.iter().enumerate() {
            if !p.is_zero() {
                next[i + shift] += p * &binom;
            }
        }
    }
    next
}
