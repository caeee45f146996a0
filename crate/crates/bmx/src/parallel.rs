//! Multi-threaded catalogue bootstrap.
//!
//! Same level-by-level growth as the sequential bootstrap, with the two
//! expensive phases of each level fanned out over scoped threads: first
//! candidate generation over the parents, then admissibility over the
//! deduplicated candidates. Admission reads only completed lower levels,
//! and candidates are committed in canonical order, so the result (and
//! any resource-limit abort point) is identical for every worker count.

use std::thread;

use bmx_core::canon::{canonical_key, CanonicalKey};
use bmx_core::catalogue::{
    extension_candidates, is_admissible, BootstrapAbort, BootstrapLimits, Catalogue,
};
use bmx_core::matroid::BinaryMatroid;

use std::collections::HashSet;

pub fn bootstrap_parallel(
    max_rank: u8,
    max_size: u8,
    exclusion: bool,
    workers: usize,
) -> Catalogue {
    bootstrap_parallel_with(max_rank, max_size, exclusion, workers, &BootstrapLimits::default())
        .expect("unlimited bootstrap cannot abort")
}

pub fn bootstrap_parallel_with(
    max_rank: u8,
    max_size: u8,
    exclusion: bool,
    workers: usize,
    limits: &BootstrapLimits,
) -> Result<Catalogue, BootstrapAbort> {
    let workers = workers.max(1);
    let mut cat = Catalogue::new(max_rank, max_size, exclusion);
    let mut members: u64 = 1;
    cat.insert(canonical_key(&BinaryMatroid::empty()))
        .expect("seed stratum exists");
    cat.set_complete(0, 0).expect("seed stratum exists");

    for k in 0..max_size {
        let parents: Vec<CanonicalKey> = cat
            .strata()
            .filter(|&(_, sz, _)| sz == k)
            .flat_map(|(_, _, st)| st.keys().copied())
            .collect();

        let mut candidates = dedup_candidates(&parents, max_rank, workers);
        candidates.sort_unstable();

        let verdicts = admissibility(&cat, &candidates, workers);

        for (key, admit) in candidates.into_iter().zip(verdicts) {
            if !admit {
                continue;
            }
            cat.insert(key).expect("candidate stratum materialized");
            members += 1;
            if let Some(limit) = limits.max_members {
                if members > limit {
                    return Err(BootstrapAbort { partial: cat });
                }
            }
        }

        let filled: Vec<(u8, u8)> = cat
            .strata()
            .filter(|&(_, sz, _)| sz == k + 1)
            .map(|(r, sz, _)| (r, sz))
            .collect();
        for (s, sz) in filled {
            cat.set_complete(s, sz).expect("stratum exists");
        }
    }
    Ok(cat)
}

/// Phase one: canonical keys of every single-point extension of every
/// parent, deduplicated across the whole level.
fn dedup_candidates(parents: &[CanonicalKey], max_rank: u8, workers: usize) -> Vec<CanonicalKey> {
    let chunk = parents.len().div_ceil(workers).max(1);
    let sets: Vec<HashSet<CanonicalKey>> = thread::scope(|s| {
        let handles: Vec<_> = parents
            .chunks(chunk)
            .map(|slice| {
                s.spawn(move || {
                    let mut local: HashSet<CanonicalKey> = HashSet::new();
                    for pkey in slice {
                        let parent = pkey.to_matroid();
                        for cand in extension_candidates(&parent, max_rank) {
                            local.insert(canonical_key(&cand));
                        }
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut merged: HashSet<CanonicalKey> = HashSet::new();
    for s in sets {
        merged.extend(s);
    }
    merged.into_iter().collect()
}

/// Phase two: one admission verdict per candidate, in the given order.
/// Admissibility is isomorphism-invariant, so deciding it on the key's
/// own representative matroid is sound.
fn admissibility(cat: &Catalogue, candidates: &[CanonicalKey], workers: usize) -> Vec<bool> {
    let chunk = candidates.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = candidates
            .chunks(chunk)
            .map(|slice| {
                s.spawn(move || {
                    slice
                        .iter()
                        .map(|key| {
                            is_admissible(cat, &key.to_matroid(), key)
                                .expect("bootstrap consults only completed lower levels")
                        })
                        .collect::<Vec<bool>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
