//! Strictly increasing tuples over the ground set `[n] = {1, .., n}` and
//! their lexicographic ranking.
//!
//! Elements are 1-based throughout the crate so that tuples print the same
//! way they are usually written down.

use crate::error::{input, Result};
use crate::sign::Sign;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

fn validate(t: &[usize], n: usize) -> Result<()> {
    for (i, &e) in t.iter().enumerate() {
        if e == 0 || e > n {
            return input(format!("element {e} outside 1..={n}"));
        }
        if i > 0 && t[i - 1] >= e {
            return input(format!("tuple {t:?} is not strictly increasing"));
        }
    }
    Ok(())
}

/// Rank of `t` among all strictly increasing tuples of the same length over
/// `[n]`, in lexicographic order.
pub fn lex_rank(t: &[usize], n: usize) -> Result<usize> {
    validate(t, n)?;
    Ok(lex_rank_unchecked(t, n))
}

/// [`lex_rank`] without validation. `t` must be strictly increasing in `1..=n`.
pub fn lex_rank_unchecked(t: &[usize], n: usize) -> usize {
    let r = t.len();
    // Count the tuples that are lexicographically smaller.
    let mut rank = 0;
    let mut prev = 0;
    for (i, &e) in t.iter().enumerate() {
        for v in prev + 1..e {
            rank += binomial(n - v, r - i - 1);
        }
        prev = e;
    }
    rank
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(mut rank: usize, n: usize, r: usize) -> Result<Vec<usize>> {
    if rank >= binomial(n, r) {
        return input(format!("rank {rank} out of range for C({n}, {r})"));
    }
    let mut t = Vec::with_capacity(r);
    let mut v = 1;
    for i in 0..r {
        loop {
            let block = binomial(n - v, r - i - 1);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        t.push(v);
        v += 1;
    }
    Ok(t)
}

/// Sorts `t` in place and returns the sign of the sorting permutation, or
/// [`Sign::Zero`] when `t` has a repeated entry.
pub fn sort_with_parity(t: &mut [usize]) -> Sign {
    let mut odd = false;
    // insertion sort: arities are tiny and we need the transposition count
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        Sign::Zero
    } else {
        Sign::parity(odd)
    }
}

/// All of `Λ([n], r)` in lexicographic order.
pub fn tuples(n: usize, r: usize) -> Tuples {
    Tuples {
        n,
        current: if r <= n { Some((1..=r).collect()) } else { None },
    }
}

/// Iterator returned by [`tuples`].
#[derive(Clone, Debug)]
pub struct Tuples {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let r = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let mut i = r;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - (r - 1 - i) {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// `t` with the entry at `position` (0-based) removed.
pub fn delete_at<T: Clone>(t: &[T], position: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(t.len() - 1);
    out.extend_from_slice(&t[..position]);
    out.extend_from_slice(&t[position + 1..]);
    out
}
