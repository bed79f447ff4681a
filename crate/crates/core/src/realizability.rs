//! Random-search realizability tagging of catalog records.
//!
//! Trial `t` draws from its own ChaCha stream (`seed`, stream `t`) so that
//! the outcome depends only on the seed and the trial count, not on how the
//! trials are scheduled. When several trials realize the same record, the
//! one with the smallest index provides the witness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{Catalog, Record, Tag};
use crate::chirotope::Chirotope;
use crate::error::{input, Error, Result};
use crate::pointgeom::{chirotope_of, random_uniform_config, PointConfig};

/// Coordinate half-widths cycled over trials: small boxes find "flat"
/// configurations, large ones skewed configurations.
pub const DEFAULT_RANGE_SWEEP: [i64; 5] = [8, 32, 256, 4096, 1_000_000];

const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealizeStats {
    pub trials: u64,
    /// Trials that hit the redraw bound without a uniform configuration.
    pub failed_draws: u64,
    pub newly_tagged: usize,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

enum Outcome {
    Failed,
    Seen,
    Hit(usize, PointConfig),
}

/// Draws `trials` random configurations and tags every catalog record they
/// realize. A drawn chirotope outside the catalog is a consistency error.
pub fn realize_random(
    catalog: &mut Catalog,
    trials: u64,
    seed: u64,
    ranges: &[i64],
    jobs: usize,
) -> Result<RealizeStats> {
    if ranges.is_empty() {
        return input("empty coordinate range list");
    }
    let (n, k) = (catalog.n(), catalog.k());
    let mut stats = RealizeStats {
        trials,
        ..RealizeStats::default()
    };
    if trials == 0 {
        return Ok(stats);
    }
    catalog.tagged = true;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Input(e.to_string()))?;

    let mut start = 0;
    while start < trials {
        let end = (start + CHUNK).min(trials);
        let snapshot: &Catalog = catalog;
        let outcomes: Vec<Outcome> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(seed, t);
                    let range = ranges[(t % ranges.len() as u64) as usize];
                    let Ok((p, c)) = random_uniform_config(&mut rng, n, k, range) else {
                        return Ok(Outcome::Failed);
                    };
                    match snapshot.find(&c) {
                        None => Err(Error::Consistency(format!(
                            "trial {t}: chirotope {} of points [{}] is not in the catalog",
                            c.to_sign_string(),
                            p.to_inline()
                        ))),
                        Some(i) if matches!(snapshot.tag(i), Tag::Unknown) => Ok(Outcome::Hit(i, p)),
                        Some(_) => Ok(Outcome::Seen),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for outcome in outcomes {
            match outcome {
                Outcome::Failed => stats.failed_draws += 1,
                Outcome::Seen => {}
                Outcome::Hit(i, p) => {
                    if matches!(catalog.tag(i), Tag::Unknown) {
                        if !verify_witness(&catalog.records()[i], &p)? {
                            return Err(Error::Consistency(format!("witness for record {i} does not verify")));
                        }
                        catalog.set_tag(i, Tag::Realizable(p));
                        stats.newly_tagged += 1;
                    }
                }
            }
        }
        start = end;
    }
    Ok(stats)
}

/// Whether the canonical chirotope of `p` is exactly the record's.
pub fn verify_witness(record: &Record, p: &PointConfig) -> Result<bool> {
    verify_chirotope_witness(&record.chirotope, p)
}

pub fn verify_chirotope_witness(c: &Chirotope, p: &PointConfig) -> Result<bool> {
    if p.len() != c.n() {
        return input(format!("witness has {} points, record has n = {}", p.len(), c.n()));
    }
    Ok(chirotope_of(p, c.k())? == *c)
}

/// Count of realizable records as tabulated for small `(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownRealizable {
    Exact(u64),
    Bounds { lower: u64, upper: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownCounts {
    pub total: u64,
    pub realizable: Option<KnownRealizable>,
}

/// Published totals and realizable counts of uniform degree-k oriented
/// matroids up to sign reversal.
pub fn known_counts(n: usize, k: usize) -> Option<KnownCounts> {
    use KnownRealizable::*;
    let exact = |t: u64| KnownCounts {
        total: t,
        realizable: Some(Exact(t)),
    };
    Some(match (k, n) {
        (2, 4) => exact(1),
        (2, 5) => exact(5),
        (2, 6) => exact(74),
        (2, 7) => exact(3_843),
        (2, 8) => KnownCounts {
            total: 840_552,
            realizable: Some(Bounds {
                lower: 830_850,
                upper: 838_204,
            }),
        },
        (3, 5) => exact(1),
        (3, 6) => exact(6),
        (3, 7) => exact(169),
        (3, 8) => exact(39_016),
        (4, 6) => exact(1),
        (4, 7) => exact(7),
        (4, 8) => exact(376),
        (4, 9) => KnownCounts {
            total: 500_244,
            realizable: None,
        },
        (5, 7) => exact(1),
        (5, 8) => exact(8),
        (5, 9) => exact(823),
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub realizable: usize,
    pub unknown: usize,
    pub known: Option<KnownCounts>,
}

impl CoverageReport {
    /// `realizable=<r> unknown=<u>` followed by the known values, if any.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("realizable={} unknown={}", self.realizable, self.unknown)];
        if let Some(known) = self.known {
            let realizable = match known.realizable {
                Some(KnownRealizable::Exact(v)) => v.to_string(),
                Some(KnownRealizable::Bounds { lower, upper }) => format!("{lower}..{upper}"),
                None => "unknown".to_string(),
            };
            out.push(format!("known_total={} known_realizable={realizable}", known.total));
        }
        out
    }
}

pub fn coverage_report(catalog: &Catalog) -> CoverageReport {
    let realizable = catalog
        .records()
        .iter()
        .filter(|r| matches!(r.tag, Tag::Realizable(_)))
        .count();
    CoverageReport {
        realizable,
        unknown: catalog.len() - realizable,
        known: known_counts(catalog.n(), catalog.k()),
    }
}
