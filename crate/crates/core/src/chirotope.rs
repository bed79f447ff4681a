//! The chirotope container: a sign per element of `Λ([n], k+2)` stored by
//! lexicographic rank, plus everything derived from it (alternating
//! evaluation, canonical orientation, reorientation, cocircuits).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};
use crate::sign::Sign;
use crate::tuple::{binomial, lex_rank_unchecked, lex_unrank, sort_with_parity, tuples};

/// Largest supported ground set. Sign vectors and reorientation sets are
/// bitmasks over `u64`.
pub const MAX_ELEMENTS: usize = 64;

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

/// Signs packed two bits per entry: `00` zero, `01` plus, `10` minus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignArray {
    len: usize,
    words: Vec<u64>,
}

impl SignArray {
    pub fn zeros(len: usize) -> SignArray {
        SignArray {
            len,
            words: vec![0; len.div_ceil(32)],
        }
    }

    pub fn from_signs(signs: &[Sign]) -> SignArray {
        let mut out = SignArray::zeros(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            out.set(i, s);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Sign {
        debug_assert!(i < self.len);
        match (self.words[i / 32] >> (2 * (i % 32))) & 3 {
            0 => Sign::Zero,
            1 => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, s: Sign) {
        debug_assert!(i < self.len);
        let shift = 2 * (i % 32);
        let code = match s {
            Sign::Zero => 0,
            Sign::Plus => 1,
            Sign::Minus => 2,
        };
        let w = &mut self.words[i / 32];
        *w = (*w & !(3 << shift)) | (code << shift);
    }

    pub fn negated(&self) -> SignArray {
        let words = self
            .words
            .iter()
            .map(|&w| ((w & LOW_BITS) << 1) | ((w >> 1) & LOW_BITS))
            .collect();
        SignArray { len: self.len, words }
    }

    pub fn has_zero(&self) -> bool {
        (0..self.len).any(|i| self.get(i).is_zero())
    }

    pub fn is_all_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn to_sign_string(&self) -> String {
        self.iter().map(Sign::to_char).collect()
    }
}

/// A map `χ` on `Λ([n], k+2)`, the chirotope of a rank `k+2` oriented
/// matroid candidate. Values on arbitrary index tuples are derived by
/// alternation and never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chirotope {
    n: usize,
    k: usize,
    signs: SignArray,
}

impl Chirotope {
    pub fn new(n: usize, k: usize, signs: SignArray) -> Result<Chirotope> {
        if k == 0 {
            return input("degree k must be at least 1");
        }
        if n > MAX_ELEMENTS {
            return input(format!("n = {n} exceeds the supported maximum {MAX_ELEMENTS}"));
        }
        if n < k + 2 {
            return input(format!("n = {n} is smaller than the rank k+2 = {}", k + 2));
        }
        let expected = binomial(n, k + 2);
        if signs.len() != expected {
            return input(format!(
                "expected C({n}, {}) = {expected} signs, got {}",
                k + 2,
                signs.len()
            ));
        }
        Ok(Chirotope { n, k, signs })
    }

    pub fn from_signs(n: usize, k: usize, signs: &[Sign]) -> Result<Chirotope> {
        Chirotope::new(n, k, SignArray::from_signs(signs))
    }

    /// Parses a bare sign string over `+`, `-`, `0`.
    pub fn from_sign_string(n: usize, k: usize, s: &str) -> Result<Chirotope> {
        let signs = s
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Input(format!("bad sign character {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Chirotope::from_signs(n, k, &signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k + 2`.
    pub fn rank(&self) -> usize {
        self.k + 2
    }

    pub fn signs(&self) -> &SignArray {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Stored sign of the tuple with the given lexicographic rank.
    #[inline]
    pub fn get(&self, rank: usize) -> Sign {
        self.signs.get(rank)
    }

    /// Stored sign of a strictly increasing tuple (unchecked).
    #[inline]
    pub fn get_sorted(&self, t: &[usize]) -> Sign {
        self.signs.get(lex_rank_unchecked(t, self.n))
    }

    /// `χ(t)` for an arbitrary sequence of `k+2` elements: zero on repeats,
    /// otherwise the sign of the sorting permutation times the stored value.
    pub fn eval(&self, t: &[usize]) -> Result<Sign> {
        if t.len() != self.rank() {
            return input(format!("expected {} indices, got {}", self.rank(), t.len()));
        }
        if let Some(&e) = t.iter().find(|&&e| e == 0 || e > self.n) {
            return input(format!("element {e} outside 1..={}", self.n));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: &[usize]) -> Sign {
        let mut sorted = t.to_vec();
        match sort_with_parity(&mut sorted) {
            Sign::Zero => Sign::Zero,
            parity => parity * self.get_sorted(&sorted),
        }
    }

    pub fn is_uniform(&self) -> bool {
        !self.signs.has_zero()
    }

    pub fn negated(&self) -> Chirotope {
        Chirotope {
            n: self.n,
            k: self.k,
            signs: self.signs.negated(),
        }
    }

    pub fn first_nonzero(&self) -> Option<Sign> {
        self.signs.iter().find(|s| !s.is_zero())
    }

    pub fn is_canonical(&self) -> bool {
        self.first_nonzero() == Some(Sign::Plus)
    }

    /// The member of `{χ, -χ}` whose first nonzero entry is `+`.
    pub fn canonicalize(&self) -> Result<Chirotope> {
        match self.first_nonzero() {
            None => input("identically zero sign map is not a chirotope"),
            Some(Sign::Plus) => Ok(self.clone()),
            Some(_) => Ok(self.negated()),
        }
    }

    /// Reorientation on the elements of `set`: `χ_A(λ) = χ(λ)·(-1)^{|λ ∩ A|}`.
    pub fn reorient(&self, set: &[usize]) -> Result<Chirotope> {
        let mut mask = 0u64;
        for &e in set {
            if e == 0 || e > self.n {
                return input(format!("element {e} outside 1..={}", self.n));
            }
            mask |= 1 << (e - 1);
        }
        Ok(self.reorient_mask(mask))
    }

    /// Reorientation on the elements whose bit `e - 1` is set in `mask`.
    pub fn reorient_mask(&self, mask: u64) -> Chirotope {
        let mut signs = self.signs.clone();
        for (i, t) in tuples(self.n, self.rank()).enumerate() {
            let flips = t.iter().filter(|&&e| mask >> (e - 1) & 1 == 1).count();
            if flips % 2 == 1 {
                signs.set(i, -signs.get(i));
            }
        }
        Chirotope {
            n: self.n,
            k: self.k,
            signs,
        }
    }

    /// Removes element `e` and relabels the remaining ones order-preservingly.
    pub fn delete(&self, e: usize) -> Result<Chirotope> {
        if e == 0 || e > self.n {
            return input(format!("element {e} outside 1..={}", self.n));
        }
        let r = self.rank();
        let minor_n = self.n - 1;
        let mut signs = SignArray::zeros(binomial(minor_n, r));
        for (i, t) in tuples(minor_n, r).enumerate() {
            let lifted: Vec<usize> = t.iter().map(|&x| if x >= e { x + 1 } else { x }).collect();
            signs.set(i, self.get_sorted(&lifted));
        }
        Chirotope::new(minor_n, self.k, signs)
    }

    /// `C* = { ±(χ(λ, e))_e : λ ∈ Λ([n], k+1) }`, zero vectors excluded.
    pub fn cocircuits(&self) -> BTreeSet<SignVector> {
        let mut out = BTreeSet::new();
        let mut buf = vec![0; self.rank()];
        for base in tuples(self.n, self.rank() - 1) {
            buf[..base.len()].copy_from_slice(&base);
            let mut plus = 0u64;
            let mut minus = 0u64;
            for e in 1..=self.n {
                buf[base.len()] = e;
                match self.eval_unchecked(&buf) {
                    Sign::Plus => plus |= 1 << (e - 1),
                    Sign::Minus => minus |= 1 << (e - 1),
                    Sign::Zero => {}
                }
            }
            if plus | minus != 0 {
                let x = SignVector { n: self.n, plus, minus };
                out.insert(x.negated());
                out.insert(x);
            }
        }
        out
    }

    /// Two-line text form: `n=<n> k=<k>` then the sign string.
    pub fn to_text(&self) -> String {
        format!("n={} k={}\n{}\n", self.n, self.k, self.signs.to_sign_string())
    }

    pub fn to_sign_string(&self) -> String {
        self.signs.to_sign_string()
    }
}

impl FromStr for Chirotope {
    type Err = Error;

    fn from_str(text: &str) -> Result<Chirotope> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let (n, k) = parse_nk(header).map_err(|message| Error::Parse { line: 1, message })?;
        let body = lines.next().ok_or(Error::Parse {
            line: 2,
            message: "missing sign string".into(),
        })?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: 3,
                message: "trailing content".into(),
            });
        }
        Chirotope::from_sign_string(n, k, body.trim_end()).map_err(|e| Error::Parse {
            line: 2,
            message: e.to_string(),
        })
    }
}

/// Parses the leading `n=<n> k=<k>` tokens of a header line.
pub(crate) fn parse_nk(header: &str) -> std::result::Result<(usize, usize), String> {
    let mut n = None;
    let mut k = None;
    for token in header.split_whitespace() {
        if let Some(v) = token.strip_prefix("n=") {
            n = Some(v.parse::<usize>().map_err(|e| format!("bad n: {e}"))?);
        } else if let Some(v) = token.strip_prefix("k=") {
            k = Some(v.parse::<usize>().map_err(|e| format!("bad k: {e}"))?);
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(format!("expected `n=<n> k=<k>`, got {header:?}")),
    }
}

impl fmt::Display for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A sign vector in `{+,-,0}^n`, stored as the bitmasks of `X^+` and `X^-`
/// (bit `e - 1` for element `e`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    n: usize,
    plus: u64,
    minus: u64,
}

impl SignVector {
    pub fn from_signs(signs: &[Sign]) -> Result<SignVector> {
        if signs.len() > MAX_ELEMENTS {
            return input(format!("sign vector longer than {MAX_ELEMENTS}"));
        }
        let mut plus = 0;
        let mut minus = 0;
        for (i, s) in signs.iter().enumerate() {
            match s {
                Sign::Plus => plus |= 1 << i,
                Sign::Minus => minus |= 1 << i,
                Sign::Zero => {}
            }
        }
        Ok(SignVector {
            n: signs.len(),
            plus,
            minus,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, e: usize) -> Sign {
        let bit = 1u64 << (e - 1);
        if self.plus & bit != 0 {
            Sign::Plus
        } else if self.minus & bit != 0 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn entries(&self) -> Vec<Sign> {
        (1..=self.n).map(|e| self.get(e)).collect()
    }

    pub fn plus_mask(&self) -> u64 {
        self.plus
    }

    pub fn minus_mask(&self) -> u64 {
        self.minus
    }

    /// Support `X̄ = X^+ ∪ X^-`.
    pub fn support_mask(&self) -> u64 {
        self.plus | self.minus
    }

    pub fn zero_mask(&self) -> u64 {
        full_mask(self.n) & !self.support_mask()
    }

    pub fn is_zero(&self) -> bool {
        self.support_mask() == 0
    }

    pub fn negated(&self) -> SignVector {
        SignVector {
            n: self.n,
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// Negates the entries whose bit is set in `mask`.
    pub fn reoriented(&self, mask: u64) -> SignVector {
        SignVector {
            n: self.n,
            plus: (self.plus & !mask) | (self.minus & mask),
            minus: (self.minus & !mask) | (self.plus & mask),
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.entries() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Elements of `mask` as a sorted list of 1-based labels.
pub fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Sign of the tuple with lexicographic rank `rank`, looked up through
/// [`lex_unrank`]; exposed for tests and diagnostics.
pub fn tuple_of_rank(c: &Chirotope, rank: usize) -> Vec<usize> {
    lex_unrank(rank, c.n, c.rank()).expect("rank within chirotope length")
}
