//! Canonical forms and automorphism counts for binary matroids of rank
//! at most 8.
//!
//! The canonical key of M is the minimum over invertible maps T of the
//! image point set T(points), minimized in sorted-list order: of two
//! distinct sets the smaller is the one owning the lowest differing value.
//! Minimizing only over maps sending some r points onto the standard basis
//! is exhaustive, because an image missing a unit can always be lowered by
//! remapping its smallest vector outside the span of the earlier units onto
//! that unit; so the search walks ordered independent point tuples.

use crate::matroid::BinaryMatroid;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Orbit label: rank plus the 256-bit membership mask of the minimal image.
/// Value v of the image sets mask bit v (bit 0 stays clear).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalKey {
    r: u8,
    mask: [u64; 4],
}

impl CanonicalKey {
    pub fn rank(&self) -> u8 {
        self.r
    }

    /// Number of points of any matroid in the orbit.
    pub fn len(&self) -> usize {
        self.mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == [0; 4]
    }

    /// The minimal image as a sorted point list.
    pub fn image(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.len());
        for (i, &w) in self.mask.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                out.push((i as u16) << 6 | bits.trailing_zeros() as u16);
                bits &= bits - 1;
            }
        }
        out
    }

    /// A concrete representative of the orbit.
    pub fn to_matroid(&self) -> BinaryMatroid {
        BinaryMatroid::from_points(self.r, &self.image())
    }

}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.r
            .cmp(&other.r)
            .then_with(|| set_lex(&self.mask, &other.mask, 256))
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorted-list order on bitsets, restricted to the lowest `lim` bits: the
/// set holding the lowest differing bit is the smaller one.
fn set_lex<const L: usize>(a: &[u64; L], b: &[u64; L], lim: usize) -> Ordering {
    let mut remaining = lim;
    for i in 0..L {
        if remaining == 0 {
            break;
        }
        let take = remaining.min(64);
        let m = if take == 64 { !0u64 } else { (1u64 << take) - 1 };
        let d = (a[i] ^ b[i]) & m;
        if d != 0 {
            let low = d & d.wrapping_neg();
            return if a[i] & low != 0 { Ordering::Less } else { Ordering::Greater };
        }
        remaining -= take;
    }
    Ordering::Equal
}

#[inline]
fn set_bit<const L: usize>(mask: &mut [u64; L], v: u16) {
    mask[(v >> 6) as usize] |= 1u64 << (v & 63);
}

#[inline]
fn test_bit(mask: &[u64; 4], v: u16) -> bool {
    mask[(v >> 6) as usize] >> (v & 63) & 1 == 1
}

const UNSET: u16 = u16::MAX;

/// Depth-first minimization state. `L` is 1 for rank <= 6 (all images fit
/// in one word) and 4 otherwise.
struct Search<'a, const L: usize> {
    r: u8,
    pts: &'a [u16],
    is_pt: [u64; 4],
    /// Image of each vector of the current partial span; UNSET outside it.
    img: [u16; 256],
    /// The span vectors in insertion order, for rollback.
    span: [u16; 256],
    span_len: usize,
    mask: [u64; L],
    best: [u64; L],
    have_best: bool,
    count: u64,
}

impl<'a, const L: usize> Search<'a, L> {
    fn new(r: u8, pts: &'a [u16]) -> Self {
        let mut is_pt = [0u64; 4];
        for &p in pts {
            is_pt[(p >> 6) as usize] |= 1u64 << (p & 63);
        }
        Search {
            r,
            pts,
            is_pt,
            img: [UNSET; 256],
            span: [0; 256],
            span_len: 0,
            mask: [0; L],
            best: [0; L],
            have_best: false,
            count: 0,
        }
    }

    /// Maps point `b` onto unit k and extends images over the doubled span.
    fn push(&mut self, b: u16, k: u8) {
        let unit = 1u16 << k;
        let old_len = self.span_len;
        self.img[b as usize] = unit;
        self.span[self.span_len] = b;
        self.span_len += 1;
        set_bit(&mut self.mask, unit);
        for i in 0..old_len {
            let s = self.span[i];
            let t = s ^ b;
            let it = self.img[s as usize] | unit;
            self.img[t as usize] = it;
            self.span[self.span_len] = t;
            self.span_len += 1;
            if test_bit(&self.is_pt, t) {
                set_bit(&mut self.mask, it);
            }
        }
    }

    fn rollback(&mut self, saved_len: usize, saved_mask: [u64; L]) {
        for i in saved_len..self.span_len {
            self.img[self.span[i] as usize] = UNSET;
        }
        self.span_len = saved_len;
        self.mask = saved_mask;
    }

    /// After the depth-k push every mask bit below 2^(k+1) is frozen, so a
    /// strictly larger prefix can be cut and a strictly smaller one wins at
    /// every leaf below.
    fn viable(&self, k: u8) -> bool {
        !self.have_best || set_lex(&self.mask, &self.best, 1usize << (k + 1)) != Ordering::Greater
    }

    fn dfs(&mut self, k: u8) {
        if k == self.r {
            match set_lex(&self.mask, &self.best, 1usize << self.r) {
                Ordering::Less => {
                    self.best = self.mask;
                    self.count = 1;
                }
                Ordering::Equal => self.count += 1,
                Ordering::Greater => {}
            }
            return;
        }
        for idx in 0..self.pts.len() {
            let b = self.pts[idx];
            if self.img[b as usize] != UNSET {
                continue;
            }
            let saved_len = self.span_len;
            let saved_mask = self.mask;
            self.push(b, k);
            if self.viable(k) {
                self.dfs(k + 1);
            }
            self.rollback(saved_len, saved_mask);
        }
    }

    /// One locally greedy descent to seed `best` before the full search.
    fn greedy(&mut self) {
        for k in 0..self.r {
            let mut best_b = None;
            let mut best_mask = [0u64; L];
            for idx in 0..self.pts.len() {
                let b = self.pts[idx];
                if self.img[b as usize] != UNSET {
                    continue;
                }
                let saved_len = self.span_len;
                let saved_mask = self.mask;
                self.push(b, k);
                if best_b.is_none() || set_lex(&self.mask, &best_mask, 256) == Ordering::Less {
                    best_b = Some(b);
                    best_mask = self.mask;
                }
                self.rollback(saved_len, saved_mask);
            }
            // Points span the space, so an independent one always exists.
            self.push(best_b.unwrap(), k);
        }
        self.best = self.mask;
        self.have_best = true;
        self.count = 0;
        self.rollback(0, [0; L]);
    }

    fn run(mut self) -> ([u64; 4], u64) {
        if self.r == 0 {
            return ([0; 4], 1);
        }
        self.greedy();
        self.dfs(0);
        let mut wide = [0u64; 4];
        wide[..L].copy_from_slice(&self.best);
        (wide, self.count)
    }
}

fn minimize(m: &BinaryMatroid) -> ([u64; 4], u64) {
    assert!(m.rank() <= 8, "canonical forms are supported up to rank 8");
    if m.rank() <= 6 {
        Search::<1>::new(m.rank(), m.points()).run()
    } else {
        Search::<4>::new(m.rank(), m.points()).run()
    }
}

pub fn canonical_key(m: &BinaryMatroid) -> CanonicalKey {
    let (mask, _) = minimize(m);
    CanonicalKey { r: m.rank(), mask }
}

/// Exact automorphism group order: the minimal leaves of the search are a
/// torsor under the automorphism group, so counting them counts it.
pub fn automorphism_count(m: &BinaryMatroid) -> u64 {
    minimize(m).1
}

pub fn are_isomorphic(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
    if a.rank() != b.rank() || a.len() != b.len() {
        return false;
    }
    if a == b {
        return true;
    }
    if a.line_degree_profile() != b.line_degree_profile() {
        return false;
    }
    canonical_key(a) == canonical_key(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::matroid::BinaryMatroid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All invertible maps on GF(2)^r as column tuples, r small.
    fn all_invertible(r: u8) -> Vec<Vec<u16>> {
        let n = 1u16 << r;
        let mut out = Vec::new();
        let mut cols = Vec::new();
        fn rec(r: u8, n: u16, cols: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if cols.len() == r as usize {
                out.push(cols.clone());
                return;
            }
            for c in 1..n {
                cols.push(c);
                if crate::gf2::rank_words(cols.iter().copied()) == cols.len() {
                    rec(r, n, cols, out);
                }
                cols.pop();
            }
        }
        rec(r, n, &mut cols, &mut out);
        out
    }

    fn apply(cols: &[u16], v: u16) -> u16 {
        let mut out = 0;
        for (i, &c) in cols.iter().enumerate() {
            if v >> i & 1 == 1 {
                out ^= c;
            }
        }
        out
    }

    fn transformed(m: &BinaryMatroid, cols: &[u16]) -> BinaryMatroid {
        let pts: Vec<u16> = m.points().iter().map(|&p| apply(cols, p)).collect();
        BinaryMatroid::from_columns(m.rank(), pts)
    }

    fn brute_key(m: &BinaryMatroid, gl: &[Vec<u16>]) -> (Vec<u16>, u64) {
        let mut best: Option<Vec<u16>> = None;
        let mut count = 0u64;
        for t in gl {
            let mut img: Vec<u16> = m.points().iter().map(|&p| apply(t, p)).collect();
            img.sort_unstable();
            match &best {
                Some(b) => {
                    // Sorted-list comparison via lowest differing value.
                    use core::cmp::Ordering::*;
                    match img.cmp(b) {
                        Less => {
                            best = Some(img);
                            count = 1;
                        }
                        Equal => count += 1,
                        Greater => {}
                    }
                }
                None => {
                    best = Some(img);
                    count = 1;
                }
            }
        }
        (best.unwrap(), count)
    }

    #[test]
    fn empty_matroid() {
        let key = canonical_key(&BinaryMatroid::empty());
        assert_eq!(key.rank(), 0);
        assert!(key.is_empty());
        assert_eq!(automorphism_count(&BinaryMatroid::empty()), 1);
    }

    #[test]
    fn key_image_roundtrip() {
        for m in [construct::f7(), construct::ag32(), construct::mk(5), construct::gpc_f7(5)] {
            let key = canonical_key(&m);
            assert_eq!(key.len(), m.len());
            let rep = key.to_matroid();
            assert_eq!(canonical_key(&rep), key);
        }
    }

    #[test]
    fn known_automorphism_counts() {
        // Whole projective spaces are stabilized by the full linear group.
        assert_eq!(automorphism_count(&construct::pg(2)), 168);
        assert_eq!(automorphism_count(&construct::pg(3)), 20160);
        assert_eq!(automorphism_count(&construct::ag32()), 1344);
        // A basis is permuted freely: r! symmetries.
        for r in 1..=5u8 {
            let basis = BinaryMatroid::from_columns(r, (0..r).map(|i| 1u16 << i));
            let fact: u64 = (1..=r as u64).product();
            assert_eq!(automorphism_count(&basis), fact);
        }
        // Graphic matroids of complete graphs carry the vertex symmetries.
        assert_eq!(automorphism_count(&construct::mk(4)), 24);
        assert_eq!(automorphism_count(&construct::mk(5)), 120);
    }

    #[test]
    fn key_invariance_under_explicit_transforms() {
        let t1: Vec<u16> = alloc::vec![2, 4, 8, 1]; // coordinate rotation
        let t2: Vec<u16> = alloc::vec![15, 2, 6, 8];
        for m in [construct::ag32(), construct::mk(5), construct::f7_dual()] {
            let key = canonical_key(&m);
            for t in [&t1, &t2] {
                let moved = transformed(&m, t);
                assert_eq!(canonical_key(&moved), key);
            }
        }
    }

    #[test]
    fn matches_brute_force_on_all_rank3_point_sets() {
        let gl = all_invertible(3);
        assert_eq!(gl.len(), 168);
        for bits in 0u16..128 {
            let pts: Vec<u16> = (1..8).filter(|&v| bits >> (v - 1) & 1 == 1).collect();
            if crate::gf2::rank_words(pts.iter().copied()) != 3 {
                continue;
            }
            let m = BinaryMatroid::from_points(3, &pts);
            let (want_img, want_count) = brute_key(&m, &gl);
            let key = canonical_key(&m);
            assert_eq!(key.image(), want_img, "pts {pts:?}");
            assert_eq!(automorphism_count(&m), want_count, "pts {pts:?}");
        }
    }

    #[test]
    fn matches_brute_force_on_sampled_rank4_point_sets() {
        let gl = all_invertible(4);
        assert_eq!(gl.len(), 20160);
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let mut done = 0;
        while done < 40 {
            let bits: u16 = rng.gen::<u16>() >> 1;
            let pts: Vec<u16> = (1..16).filter(|&v| bits >> (v - 1) & 1 == 1).collect();
            if crate::gf2::rank_words(pts.iter().copied()) != 4 {
                continue;
            }
            done += 1;
            let m = BinaryMatroid::from_points(4, &pts);
            let (want_img, want_count) = brute_key(&m, &gl);
            assert_eq!(canonical_key(&m).image(), want_img, "pts {pts:?}");
            assert_eq!(automorphism_count(&m), want_count, "pts {pts:?}");
        }
    }

    #[test]
    fn isomorphism_decisions() {
        assert!(are_isomorphic(&construct::f7(), &construct::pg(2)));
        let moved = transformed(&construct::ag32(), &[9, 7, 2, 8]);
        assert!(are_isomorphic(&construct::ag32(), &moved));
        // Same rank and size, different structure.
        let other = BinaryMatroid::from_points(4, &[1, 2, 3, 4, 5, 8, 10, 12]);
        assert_eq!(other.len(), construct::ag32().len());
        assert!(!are_isomorphic(&construct::ag32(), &other));
        // Rank 7 exercises the wide-mask path.
        let wide = construct::mk(8);
        assert_eq!(wide.rank(), 7);
        assert!(are_isomorphic(&wide, &wide.clone()));
        assert_eq!(automorphism_count(&wide), 40320);
    }

    #[test]
    fn key_ordering_is_sorted_list_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a_bits: u16 = rng.gen::<u16>() | 1;
            let b_bits: u16 = rng.gen::<u16>() | 1;
            let a: Vec<u16> = (1..16).filter(|&v| a_bits >> (v - 1) & 1 == 1).collect();
            let b: Vec<u16> = (1..16).filter(|&v| b_bits >> (v - 1) & 1 == 1).collect();
            let mut ka = [0u64; 4];
            let mut kb = [0u64; 4];
            for &v in &a {
                set_bit(&mut ka, v);
            }
            for &v in &b {
                set_bit(&mut kb, v);
            }
            assert_eq!(set_lex(&ka, &kb, 256), a.cmp(&b));
        }
    }
}
