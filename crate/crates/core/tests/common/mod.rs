//! Oracles shared by the integration tests. Each one recomputes its answer
//! from definitions, independently of the library path it is compared with.
#![allow(dead_code)]

use polycurve_core::chirotope::Chirotope;
use polycurve_core::pointgeom::{lagrange_sign, PointConfig};
use polycurve_core::tuple::{binomial, tuples};
use polycurve_core::Sign;
use rand::Rng;

/// Grassmann–Plücker sign condition in two-tuple form: for `λ` with pivot
/// `λ_1` and `μ`, the signs of `det λ · det μ` and of `-det λ[λ_1|μ_s] ·
/// det μ[μ_s|λ_1]` must include both signs or all vanish. The pivot ranges
/// over every entry of each sorted `λ`.
pub fn b3_two_tuple_form(c: &Chirotope) -> bool {
    b3_two_tuple_form_with(c, true)
}

/// As [`b3_two_tuple_form`]; `negate_rhs = false` drops the minus sign.
pub fn b3_two_tuple_form_with(c: &Chirotope, negate_rhs: bool) -> bool {
    let r = c.rank();
    let eval = |t: &[usize]| c.eval(t).unwrap();
    for sorted in tuples(c.n(), r) {
        for pivot in 0..r {
            let mut lambda = sorted.clone();
            let head = lambda.remove(pivot);
            lambda.insert(0, head);
            for mu in tuples(c.n(), r) {
                let mut seen = vec![eval(&lambda) * eval(&mu)];
                for s in 0..r {
                    let mut l = lambda.clone();
                    l[0] = mu[s];
                    let mut m = mu.clone();
                    m[s] = lambda[0];
                    let term = eval(&l) * eval(&m);
                    seen.push(if negate_rhs { -term } else { term });
                }
                let plus = seen.contains(&Sign::Plus);
                let minus = seen.contains(&Sign::Minus);
                if plus != minus {
                    return false;
                }
            }
        }
    }
    true
}

pub fn random_uniform_signs<R: Rng>(rng: &mut R, n: usize, k: usize) -> Chirotope {
    let signs: Vec<Sign> = (0..binomial(n, k + 2))
        .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
        .collect();
    Chirotope::from_signs(n, k, &signs).unwrap()
}

/// `e` is extreme when some degree-k curve through `e` and `k` other points
/// has every remaining point strictly on one side.
pub fn geometric_extreme_points(p: &PointConfig, k: usize) -> Vec<usize> {
    let n = p.len();
    let mut out = Vec::new();
    for e in 1..=n {
        let extreme = tuples(n, k + 1).filter(|base| base.contains(&e)).any(|base| {
            let sides: Vec<Sign> = (1..=n)
                .filter(|f| !base.contains(f))
                .map(|f| lagrange_sign(p, k, &base, f).unwrap())
                .collect();
            sides.iter().all(|&s| s == Sign::Plus) || sides.iter().all(|&s| s == Sign::Minus)
        });
        if extreme {
            out.push(e);
        }
    }
    out
}

/// Sign of the permutation that moves position `from` of a sorted tuple to
/// the end.
pub fn move_to_end_parity(len: usize, from: usize) -> Sign {
    Sign::parity((len - 1 - from) % 2 == 1)
}
