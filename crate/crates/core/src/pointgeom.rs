//! Planar point configurations with exact rational coordinates and their
//! degree-k chirotopes.
//!
//! A point `(x, y)` is lifted to `(1, x, x², …, x^k, y)`; the sign of the
//! determinant of `k+2` lifted points says on which side of the degree-k
//! interpolant through the first `k+1` points the last one lies. All sign
//! computations are exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chirotope::{Chirotope, SignArray, MAX_ELEMENTS};
use crate::error::{input, Error, Result};
use crate::sign::Sign;
use crate::tuple::{binomial, tuples};

pub type Rational = BigRational;

/// Default half-width of the integer coordinate box used by [`random_config`].
pub const DEFAULT_COORDINATE_RANGE: i64 = 1_000_000;

/// How many draws [`random_config`] makes before giving up on uniformity.
pub const RANDOM_RETRY_BOUND: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point {
            x: Rational::from_integer(x.into()),
            y: Rational::from_integer(y.into()),
        }
    }
}

/// Points `p_1, …, p_n` with strictly increasing x-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfig {
    points: Vec<Point>,
}

impl PointConfig {
    /// Sorts by x and re-indexes; equal x-coordinates are rejected.
    pub fn new(mut points: Vec<Point>) -> Result<PointConfig> {
        if points.len() > MAX_ELEMENTS {
            return input(format!("at most {MAX_ELEMENTS} points are supported"));
        }
        points.sort_by(|a, b| a.x.cmp(&b.x));
        if let Some(w) = points.windows(2).find(|w| w[0].x == w[1].x) {
            return input(format!("two points share the x-coordinate {}", w[0].x));
        }
        Ok(PointConfig { points })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<PointConfig> {
        PointConfig::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Point with 1-based label `e`.
    pub fn point(&self, e: usize) -> &Point {
        &self.points[e - 1]
    }

    /// Parses the points file format: one `<x> <y>` pair per line, each an
    /// integer or `p/q`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<PointConfig> {
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected `<x> <y>`, got {line:?}"),
                });
            }
            let x = parse_rational(fields[0]).map_err(|message| Error::Parse { line: i + 1, message })?;
            let y = parse_rational(fields[1]).map_err(|message| Error::Parse { line: i + 1, message })?;
            points.push(Point::new(x, y));
        }
        PointConfig::new(points)
    }

    /// Coordinates as a flat whitespace-separated list `x1 y1 … xn yn`.
    pub fn to_inline(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{} {}", p.x, p.y));
        }
        out
    }

    /// Inverse of [`PointConfig::to_inline`].
    pub fn from_inline(fields: &[&str]) -> std::result::Result<PointConfig, String> {
        if !fields.len().is_multiple_of(2) {
            return Err("odd number of coordinates".into());
        }
        let points = fields
            .chunks(2)
            .map(|c| Ok(Point::new(parse_rational(c[0])?, parse_rational(c[1])?)))
            .collect::<std::result::Result<Vec<_>, String>>()?;
        PointConfig::new(points).map_err(|e| e.to_string())
    }
}

impl fmt::Display for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.points {
            writeln!(f, "{} {}", p.x, p.y)?;
        }
        Ok(())
    }
}

impl FromStr for PointConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<PointConfig> {
        PointConfig::parse(s)
    }
}

pub(crate) fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("bad rational {token:?}");
    let (num, den) = match token.split_once('/') {
        Some((p, q)) => (p, q),
        None => (token, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(format!("zero denominator in {token:?}"));
    }
    Ok(Rational::new(num, den))
}

/// `(1, x, x², …, x^k, y)`.
pub fn lift(p: &Point, k: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k + 2);
    let mut power = Rational::one();
    for _ in 0..=k {
        out.push(power.clone());
        power *= &p.x;
    }
    out.push(p.y.clone());
    out
}

/// Scales a rational row by the positive lcm of its denominators.
fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Exact sign of the determinant of a square rational matrix.
pub fn det_sign(rows: &[Vec<Rational>]) -> Sign {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    det_sign_integer(&mut m)
}

/// Sign of an integer determinant by fraction-free (Bareiss) elimination.
/// The matrix is destroyed.
pub fn det_sign_integer(m: &mut [Vec<BigInt>]) -> Sign {
    let size = m.len();
    debug_assert!(m.iter().all(|r| r.len() == size));
    if size == 0 {
        return Sign::Plus;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Sign::Zero;
        };
        if pivot != col {
            m.swap(pivot, col);
            negate = !negate;
        }
        for r in col + 1..size {
            for c in col + 1..size {
                let v = (&m[r][c] * &m[col][col] - &m[r][col] * &m[col][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    let s = Sign::of(&m[size - 1][size - 1]);
    if negate {
        -s
    } else {
        s
    }
}

/// Lifted rows with denominators cleared, one per point; reused across all
/// tuples of a configuration.
struct LiftedRows(Vec<Vec<BigInt>>);

impl LiftedRows {
    fn new(p: &PointConfig, k: usize) -> LiftedRows {
        LiftedRows(p.points.iter().map(|q| clear_denominators(&lift(q, k))).collect())
    }

    fn sign(&self, t: &[usize]) -> Sign {
        let mut m: Vec<Vec<BigInt>> = t.iter().map(|&e| self.0[e - 1].clone()).collect();
        det_sign_integer(&mut m)
    }
}

fn check_indices(p: &PointConfig, t: &[usize]) -> Result<()> {
    match t.iter().find(|&&e| e == 0 || e > p.len()) {
        Some(e) => input(format!("point index {e} outside 1..={}", p.len())),
        None => Ok(()),
    }
}

/// `χ_P^k(t)` for any `k+2` indices (in the given order).
pub fn chi_point(p: &PointConfig, k: usize, t: &[usize]) -> Result<Sign> {
    if t.len() != k + 2 {
        return input(format!("expected {} indices, got {}", k + 2, t.len()));
    }
    check_indices(p, t)?;
    let rows: Vec<Vec<Rational>> = t.iter().map(|&e| lift(p.point(e), k)).collect();
    Ok(det_sign(&rows))
}

/// The chirotope of `P` in degree `k`, canonically oriented. A configuration
/// whose every `(k+2)`-subset is degenerate yields the all-zero map, which is
/// returned as is.
pub fn chirotope_of(p: &PointConfig, k: usize) -> Result<Chirotope> {
    raw_chirotope_of(p, k).map(|c| c.canonicalize().unwrap_or(c))
}

/// Like [`chirotope_of`] but without choosing the canonical orientation.
pub fn raw_chirotope_of(p: &PointConfig, k: usize) -> Result<Chirotope> {
    let n = p.len();
    if k == 0 {
        return input("degree k must be at least 1");
    }
    if n < k + 2 {
        return input(format!("need at least k+2 = {} points, got {n}", k + 2));
    }
    let rows = LiftedRows::new(p, k);
    let mut signs = SignArray::zeros(binomial(n, k + 2));
    for (i, t) in tuples(n, k + 2).enumerate() {
        signs.set(i, rows.sign(&t));
    }
    Chirotope::new(n, k, signs)
}

fn check_base(p: &PointConfig, base: &[usize]) -> Result<()> {
    check_indices(p, base)?;
    let mut sorted = base.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return input(format!("base {base:?} repeats an index"));
    }
    Ok(())
}

/// Value at `x` of the Lagrange interpolant through the base points.
pub fn lagrange_eval(p: &PointConfig, base: &[usize], x: &Rational) -> Rational {
    let mut total = Rational::zero();
    for &i in base {
        let pi = p.point(i);
        let mut term = pi.y.clone();
        for &j in base.iter().filter(|&&j| j != i) {
            let pj = p.point(j);
            term *= (x - &pj.x) / (&pi.x - &pj.x);
        }
        total += term;
    }
    total
}

/// Sign of `y(p_e) - L_base(x(p_e))`: whether `p_e` is above (`+`), on, or
/// below (`-`) the interpolant of degree `≤ base.len() - 1` through the base.
pub fn lagrange_sign(p: &PointConfig, k: usize, base: &[usize], e: usize) -> Result<Sign> {
    if base.len() != k + 1 {
        return input(format!("expected a base of {} indices, got {}", k + 1, base.len()));
    }
    check_base(p, base)?;
    check_indices(p, &[e])?;
    if base.contains(&e) {
        return input(format!("element {e} belongs to the base"));
    }
    let pe = p.point(e);
    Ok(Sign::of(&(&pe.y - lagrange_eval(p, base, &pe.x))))
}

/// Whether the base points lie on the graph of a polynomial of degree
/// `< base.len() - 1`, i.e. the leading divided difference vanishes.
pub fn base_is_low_degree(p: &PointConfig, base: &[usize]) -> Result<bool> {
    check_base(p, base)?;
    let mut lead = Rational::zero();
    for &i in base {
        let pi = p.point(i);
        let mut denom = Rational::one();
        for &j in base.iter().filter(|&&j| j != i) {
            denom *= &pi.x - &p.point(j).x;
        }
        lead += &pi.y / denom;
    }
    Ok(lead.is_zero())
}

/// A seeded random configuration: `n` integer points in `[-range, range]²`
/// with distinct x-coordinates, redrawn until its chirotope is uniform.
pub fn random_config(n: usize, k: usize, seed: u64, range: i64) -> Result<PointConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_uniform_config(&mut rng, n, k, range).map(|(p, _)| p)
}

/// Draws from `rng` until a uniform configuration appears, returning it
/// together with its canonical chirotope.
pub fn random_uniform_config<R: Rng>(rng: &mut R, n: usize, k: usize, range: i64) -> Result<(PointConfig, Chirotope)> {
    if n < k + 2 {
        return input(format!("need at least k+2 = {} points, got {n}", k + 2));
    }
    if range < 1 {
        return input("coordinate range must be positive");
    }
    let width = 2 * range as u64 + 1;
    if (width as u128) < n as u128 {
        return input(format!("range {range} has fewer than {n} distinct x values"));
    }
    for _ in 0..RANDOM_RETRY_BOUND {
        let mut xs: Vec<i64> = index::sample(rng, width as usize, n)
            .into_iter()
            .map(|i| i as i64 - range)
            .collect();
        xs.sort_unstable();
        let coords: Vec<(i64, i64)> = xs.into_iter().map(|x| (x, rng.gen_range(-range..=range))).collect();
        let p = PointConfig::from_ints(&coords)?;
        let c = raw_chirotope_of(&p, k)?;
        if c.is_uniform() {
            return Ok((p, c.canonicalize()?));
        }
    }
    input(format!(
        "no uniform configuration after {RANDOM_RETRY_BOUND} draws (n={n}, k={k}, range={range})"
    ))
}
