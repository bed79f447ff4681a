//! Exhaustive generation of the uniform degree-k chirotopes on `[n]`, one
//! per `{χ, -χ}` pair.
//!
//! Depth-first search over sign assignments of `Λ([n], k+2)`. The first
//! entry is fixed to `+`; afterwards the lowest undecided rank is tried with
//! `+` then `-`. After every decision the unimodality constraint of each
//! `(k+3)`-window is propagated to a fixpoint. Completed assignments are
//! unimodal by construction and are then filtered through the
//! Grassmann–Plücker relations.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::axioms::GrassmannPlucker;
use crate::chirotope::{Chirotope, SignArray};
use crate::error::{input, Result};
use crate::sign::Sign;
use crate::tuple::{binomial, delete_at, lex_rank_unchecked, tuples};

/// For each `(k+3)`-tuple `λ`, the ranks of its deletions in window order
/// (`μ_j = λ ∖ {λ_{k+4-j}}`), and the reverse map from a rank to the windows
/// that contain it.
#[derive(Clone, Debug)]
pub struct WindowIndex {
    width: usize,
    ranks: Vec<u32>,
    windows_of: Vec<Vec<u32>>,
}

impl WindowIndex {
    pub fn new(n: usize, k: usize) -> WindowIndex {
        let width = k + 3;
        let mut ranks = Vec::with_capacity(binomial(n, width) * width);
        let mut windows_of = vec![Vec::new(); binomial(n, k + 2)];
        for (w, lambda) in tuples(n, width).enumerate() {
            for drop in (0..width).rev() {
                let r = lex_rank_unchecked(&delete_at(&lambda, drop), n);
                ranks.push(r as u32);
                windows_of[r].push(w as u32);
            }
        }
        WindowIndex {
            width,
            ranks,
            windows_of,
        }
    }

    pub fn window_count(&self) -> usize {
        self.ranks.len() / self.width
    }

    /// Ranks of window `w` in order.
    pub fn window(&self, w: usize) -> &[u32] {
        &self.ranks[w * self.width..(w + 1) * self.width]
    }

    /// Windows containing `rank`.
    pub fn windows_of(&self, rank: usize) -> &[u32] {
        &self.windows_of[rank]
    }
}

/// Two sign changes inside one window; the branch is dead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict;

/// Arc consistency for "at most one sign change" on a single window.
///
/// If consecutive decided positions `p < q` carry opposite signs `s`, `-s`,
/// every position before `p` becomes `s` and every position after `q`
/// becomes `-s`. More than one change is a [`Conflict`]. Returns the
/// positions that were newly decided.
pub fn propagate_window(window: &mut [Option<Sign>]) -> std::result::Result<Vec<usize>, Conflict> {
    let mut change: Option<(usize, usize)> = None;
    let mut last: Option<usize> = None;
    for i in 0..window.len() {
        let Some(s) = window[i] else { continue };
        if let Some(p) = last {
            if window[p] != Some(s) {
                if change.is_some() {
                    return Err(Conflict);
                }
                change = Some((p, i));
            }
        }
        last = Some(i);
    }
    let mut forced = Vec::new();
    if let Some((p, q)) = change {
        let (before, after) = (window[p], window[q]);
        for (i, slot) in window.iter_mut().enumerate() {
            if slot.is_none() && (i < p || i > q) {
                *slot = if i < p { before } else { after };
                forced.push(i);
            }
        }
    }
    Ok(forced)
}

/// Partial assignment over `Λ([n], k+2)` with an undo trail.
#[derive(Clone, Debug)]
pub struct EnumerationState {
    values: Vec<Option<Sign>>,
    trail: Vec<u32>,
}

impl EnumerationState {
    pub fn new(len: usize) -> EnumerationState {
        EnumerationState {
            values: vec![None; len],
            trail: Vec::new(),
        }
    }

    pub fn value(&self, rank: usize) -> Option<Sign> {
        self.values[rank]
    }

    pub fn values(&self) -> &[Option<Sign>] {
        &self.values
    }

    pub fn assign(&mut self, rank: usize, s: Sign) {
        debug_assert!(self.values[rank].is_none());
        self.values[rank] = Some(s);
        self.trail.push(rank as u32);
    }

    fn undo_to(&mut self, mark: usize) {
        for r in self.trail.drain(mark..) {
            self.values[r as usize] = None;
        }
    }

    fn first_undecided(&self) -> Option<usize> {
        self.values.iter().position(Option::is_none)
    }

    fn to_sign_array(&self) -> SignArray {
        let mut out = SignArray::zeros(self.values.len());
        for (i, v) in self.values.iter().enumerate() {
            out.set(i, v.expect("complete assignment"));
        }
        out
    }

    /// Propagates window constraints to a fixpoint, starting from the
    /// windows that contain `dirty`.
    pub fn propagate(&mut self, index: &WindowIndex, dirty: usize) -> std::result::Result<(), Conflict> {
        let mut queue: VecDeque<u32> = index.windows_of(dirty).iter().copied().collect();
        let mut buf = vec![None; index.width];
        while let Some(w) = queue.pop_front() {
            let ranks = index.window(w as usize);
            for (slot, &r) in buf.iter_mut().zip(ranks) {
                *slot = self.values[r as usize];
            }
            for pos in propagate_window(&mut buf)? {
                let r = ranks[pos] as usize;
                self.assign(r, buf[pos].unwrap());
                queue.extend(index.windows_of(r).iter().copied().filter(|&v| v != w));
            }
        }
        Ok(())
    }
}

/// Restricts a search to the subtrees whose first `prefix_depth` branch
/// decisions hash to `index` modulo `count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub prefix_depth: usize,
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub fn new(prefix_depth: usize, index: usize, count: usize) -> Result<Shard> {
        if count == 0 || index >= count {
            return input(format!("shard {index} is not in 0..{count}"));
        }
        Ok(Shard {
            prefix_depth,
            index,
            count,
        })
    }

    /// `path[i]` is true when decision `i` took the `-` branch.
    fn owns(&self, path: &[bool]) -> bool {
        let mut h: u64 = path.len() as u64;
        for &b in path {
            h = h.wrapping_mul(0x100_0000_01b3) ^ (b as u64 + 1);
        }
        // splitmix64 finalizer
        h ^= h >> 30;
        h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 27;
        h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
        (h % self.count as u64) as usize == self.index
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    pub shard: Option<Shard>,
    /// Skip the Grassmann–Plücker filter and emit every unimodal leaf.
    pub unimodal_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub n: usize,
    pub k: usize,
    /// Complete assignments satisfying unimodality.
    pub unimodal: u64,
    /// Of those, the ones that also satisfy B3.
    pub degree_k: u64,
}

impl EnumerationSummary {
    /// `unimodal=<count> degree_k=<count>`
    pub fn line(&self) -> String {
        format!("unimodal={} degree_k={}", self.unimodal, self.degree_k)
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub summary: EnumerationSummary,
    /// Canonical chirotopes in lexicographic order of their sign strings.
    pub chirotopes: Vec<Chirotope>,
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return input("degree k must be at least 1");
    }
    if n < k + 2 {
        return input(format!("n = {n} is smaller than k+2 = {}", k + 2));
    }
    if n > 16 {
        return input(format!("n = {n} is far beyond exhaustive reach"));
    }
    Ok(())
}

struct Frame {
    rank: usize,
    mark: usize,
    minus: bool,
}

/// Runs the search, handing each emitted chirotope to `sink` in order.
pub fn enumerate_with<F: FnMut(Chirotope)>(
    n: usize,
    k: usize,
    options: &EnumerateOptions,
    mut sink: F,
) -> Result<EnumerationSummary> {
    check_nk(n, k)?;
    let len = binomial(n, k + 2);
    let index = WindowIndex::new(n, k);
    let gp = (!options.unimodal_only).then(|| GrassmannPlucker::new(n, k + 2));
    let mut summary = EnumerationSummary {
        n,
        k,
        unimodal: 0,
        degree_k: 0,
    };

    let mut state = EnumerationState::new(len);
    state.assign(0, Sign::Plus);
    if state.propagate(&index, 0).is_err() {
        return Ok(summary);
    }
    let mut frames: Vec<Frame> = Vec::new();
    let mut path: Vec<bool> = Vec::new();
    let mut descend = true;
    loop {
        if descend {
            if let Some(shard) = options.shard {
                if path.len() == shard.prefix_depth && !shard.owns(&path) {
                    descend = false;
                    continue;
                }
            }
            match state.first_undecided() {
                None => {
                    let owned = match options.shard {
                        Some(shard) if path.len() < shard.prefix_depth => shard.owns(&path),
                        _ => true,
                    };
                    if owned {
                        summary.unimodal += 1;
                        let signs = state.to_sign_array();
                        if gp.as_ref().is_none_or(|gp| gp.holds(&signs)) {
                            summary.degree_k += 1;
                            sink(Chirotope::new(n, k, signs)?);
                        }
                    }
                    descend = false;
                }
                Some(rank) => {
                    frames.push(Frame {
                        rank,
                        mark: state.trail.len(),
                        minus: false,
                    });
                    path.push(false);
                    state.assign(rank, Sign::Plus);
                    descend = state.propagate(&index, rank).is_ok();
                }
            }
        } else {
            let Some(top) = frames.last_mut() else { break };
            state.undo_to(top.mark);
            if top.minus {
                frames.pop();
                path.pop();
            } else {
                top.minus = true;
                let rank = top.rank;
                *path.last_mut().unwrap() = true;
                state.assign(rank, Sign::Minus);
                descend = state.propagate(&index, rank).is_ok();
            }
        }
    }
    if options.unimodal_only {
        summary.degree_k = summary.unimodal;
    }
    Ok(summary)
}

/// Every uniform degree-k chirotope on `[n]` up to global sign.
pub fn enumerate(n: usize, k: usize) -> Result<Enumeration> {
    collect(n, k, &EnumerateOptions::default())
}

fn collect(n: usize, k: usize, options: &EnumerateOptions) -> Result<Enumeration> {
    let mut chirotopes = Vec::new();
    let summary = enumerate_with(n, k, options, |c| chirotopes.push(c))?;
    Ok(Enumeration { summary, chirotopes })
}

/// One shard of the search tree; the shards for `0..of_shards` partition
/// the output of [`enumerate`].
pub fn partition_search(
    n: usize,
    k: usize,
    prefix_depth: usize,
    shard: usize,
    of_shards: usize,
) -> Result<Enumeration> {
    let options = EnumerateOptions {
        shard: Some(Shard::new(prefix_depth, shard, of_shards)?),
        unimodal_only: false,
    };
    collect(n, k, &options)
}

/// Runs all shards on `jobs` worker threads and merges them in sign-string
/// order. The result is identical to [`enumerate`].
pub fn enumerate_sharded(
    n: usize,
    k: usize,
    prefix_depth: usize,
    of_shards: usize,
    jobs: usize,
) -> Result<Enumeration> {
    check_nk(n, k)?;
    if of_shards == 0 {
        return input("need at least one shard");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| crate::error::Error::Input(e.to_string()))?;
    let parts: Vec<Enumeration> = pool.install(|| {
        (0..of_shards)
            .into_par_iter()
            .map(|s| partition_search(n, k, prefix_depth, s, of_shards))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(merge(n, k, parts))
}

/// Deterministic merge of shard results.
pub fn merge(n: usize, k: usize, parts: Vec<Enumeration>) -> Enumeration {
    let mut summary = EnumerationSummary {
        n,
        k,
        unimodal: 0,
        degree_k: 0,
    };
    let mut chirotopes = Vec::new();
    for part in parts {
        summary.unimodal += part.summary.unimodal;
        summary.degree_k += part.summary.degree_k;
        chirotopes.extend(part.chirotopes);
    }
    chirotopes.sort_by_cached_key(|c| c.to_sign_string());
    Enumeration { summary, chirotopes }
}
