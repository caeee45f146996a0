//! Detection of the three fixed minors the toolkit cares about:
//! AG(3,2), the Fano plane F7, and its dual F7*.
//!
//! `has_minor` contracts down to the target rank, deduplicating children
//! and memoizing verdicts by canonical key, then searches for the target
//! as a restriction. Regularity is the conjunction of two negative minor
//! tests (no F7 and no F7* minor).

use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::canon::{canonical_key, CanonicalKey};
use crate::catalogue::{Catalogue, CatalogueError};
use crate::construct;
use crate::gf2;
use crate::matroid::BinaryMatroid;

/// Default memo capacity. On overflow the whole map is discarded;
/// verdicts are recomputable, so a full cache only costs time.
pub const DEFAULT_CACHE_LIMIT: usize = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MinorTarget {
    Ag32,
    F7,
    F7Dual,
}

impl MinorTarget {
    pub fn matroid(self) -> BinaryMatroid {
        match self {
            MinorTarget::Ag32 => construct::ag32(),
            MinorTarget::F7 => construct::f7(),
            MinorTarget::F7Dual => construct::f7_dual(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MinorTarget::Ag32 => "ag32",
            MinorTarget::F7 => "f7",
            MinorTarget::F7Dual => "f7dual",
        }
    }
}

/// A fixed minor to search for, with its invariants precomputed.
#[derive(Clone, Debug)]
pub struct MinorQuery {
    target: MinorTarget,
    key: CanonicalKey,
    rank: u8,
    size: usize,
}

impl MinorQuery {
    pub fn new(target: MinorTarget) -> Self {
        let m = target.matroid();
        MinorQuery {
            target,
            key: canonical_key(&m),
            rank: m.rank(),
            size: m.len(),
        }
    }

    pub fn target(&self) -> MinorTarget {
        self.target
    }

    pub fn key(&self) -> &CanonicalKey {
        &self.key
    }

    pub fn target_rank(&self) -> u8 {
        self.rank
    }

    pub fn target_size(&self) -> usize {
        self.size
    }
}

/// Bounded verdict memo keyed by canonical key.
pub struct MinorCache {
    map: HashMap<CanonicalKey, bool>,
    limit: usize,
}

impl MinorCache {
    pub fn new() -> Self {
        Self::with_limit(DEFAULT_CACHE_LIMIT)
    }

    pub fn with_limit(limit: usize) -> Self {
        MinorCache {
            map: HashMap::new(),
            limit: limit.max(1),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, key: &CanonicalKey) -> Option<bool> {
        self.map.get(key).copied()
    }

    fn put(&mut self, key: CanonicalKey, verdict: bool) {
        if self.map.len() >= self.limit {
            self.map.clear();
        }
        self.map.insert(key, verdict);
    }
}

impl Default for MinorCache {
    fn default() -> Self {
        Self::new()
    }
}

/// True iff some sequence of contractions and deletions (with
/// simplification) turns `m` into the query's target.
pub fn has_minor(m: &BinaryMatroid, q: &MinorQuery, cache: &mut MinorCache) -> bool {
    if m.rank() < q.rank || m.len() < q.size {
        return false;
    }
    let key = canonical_key(m);
    verdict(m, &key, q, cache)
}

fn verdict(m: &BinaryMatroid, key: &CanonicalKey, q: &MinorQuery, cache: &mut MinorCache) -> bool {
    if let Some(v) = cache.get(key) {
        return v;
    }
    let v = if m.rank() == q.rank {
        has_restriction(m, q)
    } else {
        contractions_reach(m, q, cache)
    };
    cache.put(*key, v);
    v
}

// Any minor of target rank is a restriction of some iterated
// single-point contraction, so recursing over contractions and then
// restricting is exhaustive. Children are deduplicated per level.
fn contractions_reach(m: &BinaryMatroid, q: &MinorQuery, cache: &mut MinorCache) -> bool {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    for &p in m.points() {
        let child = m.contract(p).expect("point is in the matroid");
        // child rank is m.rank()-1 >= q.rank here; only size can disqualify
        if child.len() < q.size {
            continue;
        }
        let ckey = canonical_key(&child);
        if !seen.insert(ckey) {
            continue;
        }
        if verdict(&child, &ckey, q, cache) {
            return true;
        }
    }
    false
}

fn has_restriction(m: &BinaryMatroid, q: &MinorQuery) -> bool {
    debug_assert_eq!(m.rank(), q.rank);
    if m.len() < q.size {
        return false;
    }
    if q.target == MinorTarget::F7 {
        // seven simple rank-3 points fill PG(2,2), which is F7 itself
        debug_assert!(m.len() < 7 || canonical_key(m) == q.key);
        return m.len() >= 7;
    }
    // AG(3,2) and F7* both have girth 4, so the restriction is line-free:
    // grow ascending subsets, never picking a point that closes a line
    // with two already-chosen ones, and confirm leaves by canonical key.
    let mut chosen: Vec<u16> = Vec::with_capacity(q.size);
    let mut blocked = [0u8; 256];
    search_line_free(m.points(), 0, q, &mut chosen, &mut blocked)
}

fn search_line_free(
    pts: &[u16],
    from: usize,
    q: &MinorQuery,
    chosen: &mut Vec<u16>,
    blocked: &mut [u8; 256],
) -> bool {
    if chosen.len() == q.size {
        if gf2::rank_words(chosen.iter().copied()) != q.rank as usize {
            return false;
        }
        let sub = BinaryMatroid::from_sorted_unchecked(q.rank, chosen.clone());
        return canonical_key(&sub) == q.key;
    }
    let need = q.size - chosen.len();
    for i in from..pts.len() {
        if pts.len() - i < need {
            return false;
        }
        let p = pts[i];
        if blocked[p as usize] > 0 {
            continue;
        }
        for &c in chosen.iter() {
            blocked[(p ^ c) as usize] += 1;
        }
        chosen.push(p);
        if search_line_free(pts, i + 1, q, chosen, blocked) {
            return true;
        }
        chosen.pop();
        for &c in chosen.iter() {
            blocked[(p ^ c) as usize] -= 1;
        }
    }
    false
}

/// Caches for the two regularity subtests, reusable across many calls.
pub struct RegularityCache {
    f7: MinorCache,
    f7_dual: MinorCache,
    q_f7: MinorQuery,
    q_f7_dual: MinorQuery,
}

impl RegularityCache {
    pub fn new() -> Self {
        Self::with_limit(DEFAULT_CACHE_LIMIT)
    }

    pub fn with_limit(limit: usize) -> Self {
        RegularityCache {
            f7: MinorCache::with_limit(limit),
            f7_dual: MinorCache::with_limit(limit),
            q_f7: MinorQuery::new(MinorTarget::F7),
            q_f7_dual: MinorQuery::new(MinorTarget::F7Dual),
        }
    }
}

impl Default for RegularityCache {
    fn default() -> Self {
        Self::new()
    }
}

/// A binary matroid is regular iff it has neither an F7 nor an F7* minor.
pub fn is_regular(m: &BinaryMatroid, cache: &mut RegularityCache) -> bool {
    !has_minor(m, &cache.q_f7, &mut cache.f7) && !has_minor(m, &cache.q_f7_dual, &mut cache.f7_dual)
}

/// Membership-propagation test for AG(3,2)-freeness: `m` is free iff it
/// is not AG(3,2) itself and every single-element deletion and
/// contraction big enough to carry an AG(3,2)-minor is already in the
/// catalogue. Sound whenever the consulted strata are complete.
pub fn catalogue_membership_free(m: &BinaryMatroid, cat: &Catalogue) -> Result<bool, CatalogueError> {
    membership_free_keyed(m, &canonical_key(m), cat)
}

pub(crate) fn membership_free_keyed(
    m: &BinaryMatroid,
    key: &CanonicalKey,
    cat: &Catalogue,
) -> Result<bool, CatalogueError> {
    // minors of rank < 4 or size < 8 cannot carry an AG(3,2)-minor
    if m.rank() < 4 || m.len() < 8 {
        return Ok(true);
    }
    if key == cat.excluded_key() {
        return Ok(false);
    }
    for &p in m.points() {
        let del = m.delete(p).expect("point is in the matroid");
        if del.rank() >= 4 && del.len() >= 8 && !cat.contains_complete(&canonical_key(&del))? {
            return Ok(false);
        }
        let con = m.contract(p).expect("point is in the matroid");
        if con.rank() >= 4 && con.len() >= 8 && !cat.contains_complete(&canonical_key(&con))? {
            return Ok(false);
        }
    }
    Ok(true)
}
