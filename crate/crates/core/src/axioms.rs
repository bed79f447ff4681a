//! Verdicts for the axiom systems of (degree-k) oriented matroids.
//!
//! Every check scans its quantifier domain in lexicographic order and stops
//! at the first violation, so the reported witness is the smallest one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chirotope::{full_mask, mask_elements, Chirotope, SignArray, SignVector};
use crate::error::{input, Result};
use crate::sign::Sign;
use crate::tuple::{delete_at, lex_rank_unchecked, tuples};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// Not identically zero.
    B1,
    /// Alternation. Holds structurally since only sorted tuples are stored.
    B2,
    /// Grassmann–Plücker sign relations.
    B3,
    /// `(k+3)`-local unimodality.
    Unimodal,
    Transitivity,
    C0,
    C1,
    C2,
    C3,
    /// Elimination restricted to modular pairs, valid for uniform sets.
    C3Uniform,
    Acyclic,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::B1 => "B1",
            Axiom::B2 => "B2",
            Axiom::B3 => "B3",
            Axiom::Unimodal => "unimodal",
            Axiom::Transitivity => "transitivity",
            Axiom::C0 => "C0",
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C3Uniform => "C3'",
            Axiom::Acyclic => "acyclic",
        };
        f.write_str(name)
    }
}

/// Concrete evidence of a violation: the tuples or sign vectors involved and
/// the signs observed on them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tuples: Vec<Vec<usize>>,
    pub signs: Vec<Sign>,
    pub vectors: Vec<String>,
    pub element: Option<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for t in &self.tuples {
            let inner: Vec<String> = t.iter().map(|e| e.to_string()).collect();
            parts.push(format!("({})", inner.join(",")));
        }
        for v in &self.vectors {
            parts.push(format!("[{v}]"));
        }
        if let Some(e) = self.element {
            parts.push(format!("e={e}"));
        }
        if !self.signs.is_empty() {
            parts.push(format!(
                "signs={}",
                self.signs.iter().map(|s| s.to_char()).collect::<String>()
            ));
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn pass(axiom: Axiom) -> AxiomReport {
        AxiomReport { axiom, witness: None }
    }

    fn fail(axiom: Axiom, witness: Witness) -> AxiomReport {
        AxiomReport {
            axiom,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => f.write_str("PASS"),
            Some(w) => write!(f, "FAIL {} {}", self.axiom, w),
        }
    }
}

pub fn check_b1(c: &Chirotope) -> AxiomReport {
    if c.signs().is_all_zero() {
        AxiomReport::fail(
            Axiom::B1,
            Witness {
                tuples: tuples(c.n(), c.rank()).collect(),
                signs: vec![Sign::Zero; c.len()],
                ..Witness::default()
            },
        )
    } else {
        AxiomReport::pass(Axiom::B1)
    }
}

/// Alternation (B2). Values off sorted tuples are derived from the sorted
/// ones, so this cannot fail for a [`Chirotope`].
pub fn check_b2(_c: &Chirotope) -> AxiomReport {
    AxiomReport::pass(Axiom::B2)
}

#[derive(Clone, Copy, Debug)]
struct Term {
    coefficient: Sign,
    left: u32,
    right: u32,
}

/// The sign conditions of the Grassmann–Plücker relations
///
/// `Σ_{j=0}^{r} (-1)^j χ(σ, τ_j) χ(τ ∖ τ_j) = 0`
///
/// over `σ ∈ Λ([n], r-1)`, `τ ∈ Λ([n], r+1)`, precomputed as pairs of ranks
/// with a coefficient. A relation holds when its nonzero terms include both
/// signs or there are none. Relations with `|τ ∖ σ| = 2` have two terms
/// that cancel identically under alternation and are left out.
#[derive(Clone, Debug)]
pub struct GrassmannPlucker {
    n: usize,
    rank: usize,
    relations: Vec<(u32, u32)>,
    terms: Vec<Term>,
}

impl GrassmannPlucker {
    pub fn new(n: usize, rank: usize) -> GrassmannPlucker {
        let mut relations = Vec::new();
        let mut terms = Vec::new();
        let mut joined = vec![0; rank];
        for sigma in tuples(n, rank - 1) {
            for tau in tuples(n, rank + 1) {
                let outside = tau.iter().filter(|e| !sigma.contains(e)).count();
                if outside <= 2 {
                    continue;
                }
                let start = terms.len() as u32;
                for (j, &t) in tau.iter().enumerate() {
                    if sigma.contains(&t) {
                        continue;
                    }
                    // sorting (σ, t) moves t past every larger σ entry
                    let larger = sigma.iter().filter(|&&s| s > t).count();
                    let at = rank - 1 - larger;
                    joined[..at].copy_from_slice(&sigma[..at]);
                    joined[at] = t;
                    joined[at + 1..].copy_from_slice(&sigma[at..]);
                    let coefficient = Sign::parity((j + larger) % 2 == 1);
                    terms.push(Term {
                        coefficient,
                        left: lex_rank_unchecked(&joined, n) as u32,
                        right: lex_rank_unchecked(&delete_at(&tau, j), n) as u32,
                    });
                }
                relations.push((start, terms.len() as u32));
            }
        }
        GrassmannPlucker {
            n,
            rank,
            relations,
            terms,
        }
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Index of the first violated relation.
    pub fn first_violation(&self, signs: &SignArray) -> Option<usize> {
        self.relations.iter().position(|&(start, end)| {
            let mut seen_plus = false;
            let mut seen_minus = false;
            for term in &self.terms[start as usize..end as usize] {
                match term.coefficient * signs.get(term.left as usize) * signs.get(term.right as usize) {
                    Sign::Plus => seen_plus = true,
                    Sign::Minus => seen_minus = true,
                    Sign::Zero => {}
                }
            }
            seen_plus != seen_minus
        })
    }

    pub fn holds(&self, signs: &SignArray) -> bool {
        self.first_violation(signs).is_none()
    }

    /// The `(σ, τ)` pair and term signs of relation `index`.
    fn witness(&self, index: usize, signs: &SignArray) -> Witness {
        // relations were generated in (σ, τ) lex order with some skipped, so
        // recover the pair by regenerating
        let mut seen = 0;
        for sigma in tuples(self.n, self.rank - 1) {
            for tau in tuples(self.n, self.rank + 1) {
                if tau.iter().filter(|e| !sigma.contains(e)).count() <= 2 {
                    continue;
                }
                if seen == index {
                    let (start, end) = self.relations[index];
                    let observed = self.terms[start as usize..end as usize]
                        .iter()
                        .map(|t| t.coefficient * signs.get(t.left as usize) * signs.get(t.right as usize))
                        .collect();
                    return Witness {
                        tuples: vec![sigma, tau],
                        signs: observed,
                        ..Witness::default()
                    };
                }
                seen += 1;
            }
        }
        unreachable!("relation index within range")
    }
}

/// Grassmann–Plücker sign relations (B3).
pub fn check_b3(c: &Chirotope) -> AxiomReport {
    let gp = GrassmannPlucker::new(c.n(), c.rank());
    check_b3_with(&gp, c)
}

/// [`check_b3`] with a precomputed relation table for `c`'s `(n, rank)`.
pub fn check_b3_with(gp: &GrassmannPlucker, c: &Chirotope) -> AxiomReport {
    assert_eq!((gp.n, gp.rank), (c.n(), c.rank()), "relation table shape");
    match gp.first_violation(c.signs()) {
        None => AxiomReport::pass(Axiom::B3),
        Some(i) => AxiomReport::fail(Axiom::B3, gp.witness(i, c.signs())),
    }
}

/// The signs `χ(μ_1), …, χ(μ_{k+3})` of the lex-ordered `(k+2)`-subsets of a
/// `(k+3)`-tuple `λ`: `μ_j` omits `λ_{k+4-j}`.
pub fn window_signs(c: &Chirotope, lambda: &[usize]) -> Vec<Sign> {
    (0..lambda.len())
        .rev()
        .map(|drop| c.get_sorted(&delete_at(lambda, drop)))
        .collect()
}

/// Whether a window sequence has the shape `+…+ 0…0 −…−` or `−…− 0…0 +…+`
/// with zero, one, or all entries zero.
pub fn is_unimodal_sequence(seq: &[Sign]) -> bool {
    let zeros = seq.iter().filter(|s| s.is_zero()).count();
    if zeros == seq.len() {
        return true;
    }
    match zeros {
        0 => seq.windows(2).filter(|w| w[0] != w[1]).count() <= 1,
        1 => {
            let z = seq.iter().position(|s| s.is_zero()).unwrap();
            let before = &seq[..z];
            let after = &seq[z + 1..];
            let constant = |part: &[Sign]| part.windows(2).all(|w| w[0] == w[1]);
            if !constant(before) || !constant(after) {
                return false;
            }
            match (before.first(), after.first()) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            }
        }
        _ => false,
    }
}

/// `(k+3)`-local unimodality.
pub fn check_unimodal(c: &Chirotope) -> AxiomReport {
    for lambda in tuples(c.n(), c.rank() + 1) {
        let seq = window_signs(c, &lambda);
        if !is_unimodal_sequence(&seq) {
            return AxiomReport::fail(
                Axiom::Unimodal,
                Witness {
                    tuples: vec![lambda],
                    signs: seq,
                    ..Witness::default()
                },
            );
        }
    }
    AxiomReport::pass(Axiom::Unimodal)
}

/// For every `(k+3)`-tuple whose first and last deletions carry the same
/// nonzero sign, all deletions carry it.
pub fn check_transitivity(c: &Chirotope) -> AxiomReport {
    for lambda in tuples(c.n(), c.rank() + 1) {
        let seq = window_signs(c, &lambda);
        let first = seq[0];
        if !first.is_zero() && seq[seq.len() - 1] == first && seq.iter().any(|&s| s != first) {
            return AxiomReport::fail(
                Axiom::Transitivity,
                Witness {
                    tuples: vec![lambda],
                    signs: seq,
                    ..Witness::default()
                },
            );
        }
    }
    AxiomReport::pass(Axiom::Transitivity)
}

/// Outcome of the full degree-k check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeKReport {
    pub reports: Vec<AxiomReport>,
    pub uniform: bool,
}

impl DegreeKReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(AxiomReport::passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| !r.passed())
    }

    /// `PASS` or the first failure as `FAIL <axiom> <witness>`.
    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => "PASS".to_string(),
            Some(r) => r.to_string(),
        }
    }
}

/// B1, B2, B3 and unimodality, in that order. Later checks are skipped
/// after the first failure.
pub fn check_degree_k(c: &Chirotope) -> DegreeKReport {
    let checks: [fn(&Chirotope) -> AxiomReport; 4] = [check_b1, check_b2, check_b3, check_unimodal];
    let mut reports = Vec::new();
    for check in checks {
        let report = check(c);
        let failed = !report.passed();
        reports.push(report);
        if failed {
            break;
        }
    }
    DegreeKReport {
        reports,
        uniform: c.is_uniform(),
    }
}

fn vectors_witness(vectors: &[&SignVector], element: Option<usize>) -> Witness {
    Witness {
        vectors: vectors.iter().map(|v| v.to_string()).collect(),
        element,
        ..Witness::default()
    }
}

/// Cocircuit axioms C0, C1, C2 and elimination. With `uniform` set the
/// elimination is checked in its modular form: for `|X⁰ ∖ Y⁰| = 1` and `e`
/// separating `X` and `Y` there is `Z` with `Z⁰ = (X⁰ ∩ Y⁰) ∪ {e}`,
/// `Z⁺ ⊇ X⁺ ∩ Y⁺`, `Z⁻ ⊇ X⁻ ∩ Y⁻`. Otherwise the general form: for
/// `X ≠ -Y` there is `Z` with `Z(e) = 0`, `Z⁺ ⊆ X⁺ ∪ Y⁺`, `Z⁻ ⊆ X⁻ ∪ Y⁻`.
pub fn check_cocircuit_axioms(set: &BTreeSet<SignVector>, uniform: bool) -> AxiomReport {
    let vectors: Vec<&SignVector> = set.iter().collect();
    if let Some(x) = vectors.iter().find(|x| x.is_zero()) {
        return AxiomReport::fail(Axiom::C0, vectors_witness(&[x], None));
    }
    if let Some(x) = vectors.iter().find(|x| !set.contains(&x.negated())) {
        return AxiomReport::fail(Axiom::C1, vectors_witness(&[x], None));
    }
    for x in &vectors {
        for y in &vectors {
            let (sx, sy) = (x.support_mask(), y.support_mask());
            if sx & !sy == 0 && **x != **y && **x != y.negated() {
                return AxiomReport::fail(Axiom::C2, vectors_witness(&[x, y], None));
            }
        }
    }
    // in the uniform form Z⁰ is determined, so look candidates up by zero set
    let mut by_zero: HashMap<u64, Vec<&SignVector>> = HashMap::new();
    if uniform {
        for x in &vectors {
            by_zero.entry(x.zero_mask()).or_default().push(x);
        }
    }
    for x in &vectors {
        for y in &vectors {
            let separating = (x.plus_mask() & y.minus_mask()) | (x.minus_mask() & y.plus_mask());
            if separating == 0 {
                continue;
            }
            if uniform {
                if (x.zero_mask() & !y.zero_mask()).count_ones() != 1 {
                    continue;
                }
            } else if **x == y.negated() {
                continue;
            }
            for e in mask_elements(separating) {
                let bit = 1u64 << (e - 1);
                let found = if uniform {
                    let zero = (x.zero_mask() & y.zero_mask()) | bit;
                    let plus = x.plus_mask() & y.plus_mask();
                    let minus = x.minus_mask() & y.minus_mask();
                    by_zero.get(&zero).is_some_and(|candidates| {
                        candidates
                            .iter()
                            .any(|z| z.plus_mask() & plus == plus && z.minus_mask() & minus == minus)
                    })
                } else {
                    let plus = (x.plus_mask() | y.plus_mask()) & !bit;
                    let minus = (x.minus_mask() | y.minus_mask()) & !bit;
                    vectors.iter().any(|z| {
                        z.support_mask() & bit == 0 && z.plus_mask() & !plus == 0 && z.minus_mask() & !minus == 0
                    })
                };
                if !found {
                    let axiom = if uniform { Axiom::C3Uniform } else { Axiom::C3 };
                    return AxiomReport::fail(axiom, vectors_witness(&[x, y], Some(e)));
                }
            }
        }
    }
    AxiomReport::pass(if uniform { Axiom::C3Uniform } else { Axiom::C3 })
}

/// Per-element data from the nonnegative members of a cocircuit set after
/// reorienting by `mask`: which elements are covered positively, and which
/// vanish on some nonnegative cocircuit.
fn nonnegative_cover(set: &BTreeSet<SignVector>, mask: u64) -> (u64, u64) {
    let mut covered = 0;
    let mut vanishing = 0;
    for x in set {
        let y = x.reoriented(mask);
        if y.minus_mask() == 0 {
            covered |= y.plus_mask();
            vanishing |= y.zero_mask();
        }
    }
    (covered, vanishing)
}

/// Every element lies in `X⁺` of some cocircuit with `X⁻ = ∅`.
pub fn is_acyclic(set: &BTreeSet<SignVector>) -> bool {
    let Some(n) = set.iter().next().map(|x| x.len()) else {
        return false;
    };
    nonnegative_cover(set, 0).0 == full_mask(n)
}

/// Elements that vanish on some nonnegative cocircuit, i.e. lie on a
/// supporting curve with everything else strictly on one side.
pub fn extreme_points(c: &Chirotope) -> Result<Vec<usize>> {
    if !c.is_uniform() {
        return input("extreme points are computed for uniform chirotopes only");
    }
    let set = c.cocircuits();
    let (covered, vanishing) = nonnegative_cover(&set, 0);
    if covered != full_mask(c.n()) {
        return input("chirotope is not acyclic");
    }
    Ok(mask_elements(vanishing))
}

/// Result of scanning all reorientations of a uniform chirotope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rank: usize,
    pub acyclic_reorientations: usize,
    /// Number of extreme points → number of acyclic reorientations with it.
    pub histogram: BTreeMap<usize, usize>,
    /// Some acyclic reorientation has exactly `rank` extreme points.
    pub has_exactly_rank: bool,
    /// Reorientation set whose extreme count is closest to `rank`, smallest
    /// bitmask first among ties.
    pub best_set: Option<Vec<usize>>,
    pub best_count: Option<usize>,
}

/// Largest ground set [`las_vergnas_scan`] accepts (it visits `2^n` sets).
pub const MAX_SCAN_ELEMENTS: usize = 24;

/// Extreme-point counts over all acyclic reorientations.
pub fn las_vergnas_scan(c: &Chirotope) -> Result<ScanReport> {
    if !c.is_uniform() {
        return input("reorientation scan needs a uniform chirotope");
    }
    if c.n() > MAX_SCAN_ELEMENTS {
        return input(format!("scan limited to n ≤ {MAX_SCAN_ELEMENTS}"));
    }
    let set = c.cocircuits();
    let full = full_mask(c.n());
    let rank = c.rank();
    let mut histogram = BTreeMap::new();
    let mut acyclic = 0;
    let mut best: Option<(u64, usize)> = None;
    for mask in 0..=full {
        let (covered, vanishing) = nonnegative_cover(&set, mask);
        if covered != full {
            continue;
        }
        acyclic += 1;
        let count = vanishing.count_ones() as usize;
        *histogram.entry(count).or_insert(0) += 1;
        let distance = count.abs_diff(rank);
        if best.is_none_or(|(_, b)| distance < b.abs_diff(rank)) {
            best = Some((mask, count));
        }
    }
    Ok(ScanReport {
        rank,
        acyclic_reorientations: acyclic,
        has_exactly_rank: histogram.contains_key(&rank),
        best_set: best.map(|(m, _)| mask_elements(m)),
        best_count: best.map(|(_, c)| c),
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::binomial;

    fn all_plus(n: usize, k: usize) -> Chirotope {
        Chirotope::from_signs(n, k, &vec![Sign::Plus; binomial(n, k + 2)]).unwrap()
    }

    #[test]
    fn b1_examples() {
        let zero = Chirotope::new(5, 2, SignArray::zeros(5)).unwrap();
        assert!(!check_b1(&zero).passed());
        assert!(check_b1(&all_plus(5, 2)).passed());
    }

    #[test]
    fn unimodal_sequences() {
        use Sign::*;
        assert!(is_unimodal_sequence(&[Plus, Plus, Minus, Minus, Minus]));
        assert!(is_unimodal_sequence(&[Minus, Zero, Plus]));
        assert!(is_unimodal_sequence(&[Zero, Minus, Minus]));
        assert!(is_unimodal_sequence(&[Plus, Plus, Zero]));
        assert!(is_unimodal_sequence(&[Zero, Zero, Zero]));
        assert!(!is_unimodal_sequence(&[Plus, Minus, Plus]));
        assert!(!is_unimodal_sequence(&[Plus, Zero, Plus]));
        assert!(!is_unimodal_sequence(&[Plus, Zero, Zero, Minus]));
        assert!(!is_unimodal_sequence(&[Plus, Minus, Zero]));
    }

    #[test]
    fn two_sign_changes_fail_unimodal_and_transitivity() {
        // n = 5, k = 2: one window (1..5); deletions μ_1..μ_5 are ranks 0..4
        let c = Chirotope::from_sign_string(5, 2, "+-+--").unwrap();
        let report = check_unimodal(&c);
        assert!(!report.passed());
        assert_eq!(report.witness.as_ref().unwrap().tuples, vec![vec![1, 2, 3, 4, 5]]);
        assert_eq!(report.to_string(), "FAIL unimodal (1,2,3,4,5) signs=+-+--");
        let t = Chirotope::from_sign_string(5, 2, "+-+-+").unwrap();
        assert!(!check_transitivity(&t).passed());
        assert!(!check_degree_k(&t).passed());
    }

    #[test]
    fn all_plus_is_degree_k() {
        for k in 1..=3 {
            for n in k + 2..=k + 5 {
                let c = all_plus(n, k);
                let report = check_degree_k(&c);
                assert!(report.passed(), "n={n} k={k}: {}", report.summary());
                assert!(check_transitivity(&c).passed());
            }
        }
    }

    #[test]
    fn gp_relation_table_shape() {
        // (n, r) = (6, 4): pairs with |τ ∖ σ| ≥ 3 out of C(6,3)·C(6,5) = 120
        let gp = GrassmannPlucker::new(6, 4);
        let mut expected = 0;
        for s in tuples(6, 3) {
            for t in tuples(6, 5) {
                if t.iter().filter(|e| !s.contains(e)).count() > 2 {
                    expected += 1;
                }
            }
        }
        assert_eq!(gp.relation_count(), expected);
    }

    #[test]
    fn cocircuit_axiom_examples() {
        use Sign::*;
        // single antipodal pair, n = r + 1 = 5, |X^0| = 4
        let x = SignVector::from_signs(&[Zero, Zero, Zero, Zero, Plus]).unwrap();
        let set: BTreeSet<_> = [x, x.negated()].into_iter().collect();
        assert!(check_cocircuit_axioms(&set, true).passed());
        let c = all_plus(6, 2);
        let mut cocircuits = c.cocircuits();
        assert!(check_cocircuit_axioms(&cocircuits, true).passed());
        assert!(check_cocircuit_axioms(&cocircuits, false).passed());
        let first = *cocircuits.iter().next().unwrap();
        cocircuits.remove(&first);
        let report = check_cocircuit_axioms(&cocircuits, true);
        assert_eq!(report.axiom, Axiom::C1);
        assert!(!report.passed());
        let zero: BTreeSet<_> = [SignVector::from_signs(&[Zero, Zero]).unwrap()].into_iter().collect();
        assert_eq!(check_cocircuit_axioms(&zero, true).axiom, Axiom::C0);
    }

    #[test]
    fn single_tuple_is_acyclic_with_all_points_extreme() {
        for k in 1..=4 {
            let c = all_plus(k + 2, k);
            assert!(is_acyclic(&c.cocircuits()));
            assert_eq!(extreme_points(&c).unwrap(), (1..=k + 2).collect::<Vec<_>>());
            let scan = las_vergnas_scan(&c).unwrap();
            assert!(scan.has_exactly_rank);
            assert_eq!(scan.best_set, Some(vec![]));
        }
    }

    #[test]
    fn verdicts_ignore_global_sign() {
        for s in ["+-+--", "+-+-+", "++---", "+++++"] {
            let c = Chirotope::from_sign_string(5, 2, s).unwrap();
            let (a, b) = (check_degree_k(&c), check_degree_k(&c.negated()));
            assert_eq!(a.passed(), b.passed());
            assert_eq!(a.first_failure().map(|r| r.axiom), b.first_failure().map(|r| r.axiom));
            assert_eq!(
                check_transitivity(&c).passed(),
                check_transitivity(&c.negated()).passed()
            );
        }
    }
}
