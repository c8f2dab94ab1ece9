//! Exhaustive verification over every small instance.
//!
//! The instance space is every pair of posets from a family, `|s| <= max_s`
//! and `|r| <= max_r` (sizes from 0), with every monotone map between them.
//! Work is split into `(s, r)` units in canonical order and folded back in
//! that order, so the result does not depend on the worker count.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::poset::{enumerate_posets_in, Poset, PosetError, PosetFamily};
use crate::spectral::enumerate_monotone_maps;
use crate::theorems::{verify_many, TheoremId, VerifyOptions};
use crate::verdict::{Statement, Verdict};

/// Largest `(max_s, max_r)` accepted without `allow_large`.
pub const DEFAULT_LIMITS: (usize, usize) = (3, 4);
/// Largest `(max_s, max_r)` accepted at all.
pub const LARGE_LIMITS: (usize, usize) = (4, 6);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("bound {what} = {requested} exceeds the limit {limit}{hint}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
        hint: &'static str,
    },
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_s: usize,
    pub max_r: usize,
    pub allow_top: bool,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub waive_hypotheses: bool,
    /// Raises the limits from [`DEFAULT_LIMITS`] to [`LARGE_LIMITS`].
    pub allow_large: bool,
    pub family: PosetFamily,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_s: DEFAULT_LIMITS.0,
            max_r: DEFAULT_LIMITS.1,
            allow_top: true,
            jobs: 0,
            waive_hypotheses: false,
            allow_large: false,
            family: PosetFamily::Labeled,
        }
    }
}

impl SweepConfig {
    pub fn check_bounds(&self) -> Result<(), SweepError> {
        let (ls, lr, hint) = if self.allow_large {
            (LARGE_LIMITS.0, LARGE_LIMITS.1, "")
        } else {
            (DEFAULT_LIMITS.0, DEFAULT_LIMITS.1, " (pass the large flag to go further)")
        };
        for (what, requested, limit) in [("max_s", self.max_s, ls), ("max_r", self.max_r, lr)] {
            if requested > limit {
                return Err(SweepError::BoundExceeded {
                    what,
                    requested,
                    limit,
                    hint,
                });
            }
        }
        Ok(())
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            waive_hypotheses: self.waive_hypotheses,
        }
    }
}

/// Every poset of the family with at most `max` elements, by size.
pub fn posets_up_to(max: usize, family: PosetFamily) -> Result<Vec<Arc<Poset>>, PosetError> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(enumerate_posets_in(n, max, family)?.into_iter().map(Arc::new));
    }
    Ok(out)
}

/// Upper bound on the number of instances: `(|s| + 1)^|r|` per pair of
/// posets (or `|s|^|r|` without TOP).
pub fn cost_estimate(cfg: &SweepConfig) -> Result<u64, SweepError> {
    cfg.check_bounds()?;
    let count = |n: usize| enumerate_posets_in(n, n, cfg.family).map(|v| v.len() as u64);
    let mut total = 0u64;
    for s in 0..=cfg.max_s {
        let ns = count(s)?;
        let values = s as u64 + u64::from(cfg.allow_top);
        for r in 0..=cfg.max_r {
            total += ns * count(r)? * values.pow(r as u32);
        }
    }
    Ok(total)
}

pub(crate) fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Verifies every id on every instance, one aggregated verdict per id in the
/// order given. The first counterexample in canonical order is kept.
pub fn exhaustive_verify_all(ids: &[TheoremId], cfg: &SweepConfig) -> Result<Vec<Verdict>, SweepError> {
    cfg.check_bounds()?;
    let start = Instant::now();
    let ss = posets_up_to(cfg.max_s, cfg.family)?;
    let rs = posets_up_to(cfg.max_r, cfg.family)?;
    let units: Vec<(usize, usize)> = (0..ss.len())
        .flat_map(|i| (0..rs.len()).map(move |j| (i, j)))
        .collect();
    let opts = cfg.options();
    let fresh = || -> Vec<Verdict> {
        ids.iter()
            .map(|&t| Verdict::holding(Statement::Theorem(t)))
            .collect()
    };
    let per_unit: Vec<Vec<Verdict>> = run_in_pool(cfg.jobs, || {
        units
            .par_iter()
            .map(|&(i, j)| {
                let mut acc = fresh();
                for m in enumerate_monotone_maps(ss[i].clone(), rs[j].clone(), cfg.allow_top) {
                    for (a, v) in acc.iter_mut().zip(verify_many(&m, ids, opts)) {
                        a.absorb(v);
                    }
                }
                acc
            })
            .collect()
    })?;
    let mut total = fresh();
    for unit in per_unit {
        for (a, v) in total.iter_mut().zip(unit) {
            a.absorb(v);
        }
    }
    let elapsed = start.elapsed();
    for v in &mut total {
        v.elapsed = elapsed;
    }
    Ok(total)
}

pub fn exhaustive_verify(t: TheoremId, cfg: &SweepConfig) -> Result<Verdict, SweepError> {
    Ok(exhaustive_verify_all(&[t], cfg)?.pop().expect("one id"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_s: usize, max_r: usize) -> SweepConfig {
        SweepConfig {
            max_s,
            max_r,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn equivalence_at_two_by_two() {
        let v = exhaustive_verify(TheoremId::CEquivalent, &small(2, 2)).unwrap();
        assert!(v.holds);
        assert!(v.instances_checked > 0);
    }

    #[test]
    fn instance_count_matches_brute_force() {
        // Posets on <= 2 elements: sizes 0, 1, 2 with 1, 1, 3 labeled orders.
        // Count assignments directly and keep the monotone ones.
        let ss = posets_up_to(2, PosetFamily::Labeled).unwrap();
        let mut expected = 0u64;
        for s in &ss {
            for r in &ss {
                let values = s.len() + 1;
                // Value `s.len()` stands for TOP.
                let leq = |a: usize, b: usize| b == s.len() || (a < s.len() && s.leq(a, b));
                let total = values.pow(r.len() as u32);
                for code in 0..total {
                    let mut c = code;
                    let assign: Vec<usize> = (0..r.len())
                        .map(|_| {
                            let v = c % values;
                            c /= values;
                            v
                        })
                        .collect();
                    let monotone = (0..r.len())
                        .all(|a| (0..r.len()).all(|b| !r.leq(a, b) || leq(assign[a], assign[b])));
                    expected += u64::from(monotone);
                }
            }
        }
        let v = exhaustive_verify(TheoremId::CEquivalent, &small(2, 2)).unwrap();
        assert_eq!(v.instances_checked, expected);
    }

    #[test]
    fn empty_source_is_vacuous() {
        let v = exhaustive_verify(TheoremId::TCoverMaxchain, &small(0, 3)).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let mut cfg = small(2, 3);
        cfg.jobs = 1;
        let one = exhaustive_verify_all(&TheoremId::ALL, &cfg).unwrap();
        cfg.jobs = 3;
        let three = exhaustive_verify_all(&TheoremId::ALL, &cfg).unwrap();
        for (a, b) in one.iter().zip(&three) {
            assert!(a.same_outcome(b));
        }
    }

    #[test]
    fn waived_sweep_finds_the_non_unitary_failure() {
        let cfg = SweepConfig {
            waive_hypotheses: true,
            ..small(1, 2)
        };
        let v = exhaustive_verify(TheoremId::TCoverMaxchain, &cfg).unwrap();
        assert!(!v.holds);
        assert!(v.counterexample.unwrap().hypotheses_waived);
    }

    #[test]
    fn bounds_are_gated() {
        assert!(matches!(
            small(4, 4).check_bounds(),
            Err(SweepError::BoundExceeded { what: "max_s", .. })
        ));
        let large = SweepConfig {
            allow_large: true,
            ..small(4, 6)
        };
        assert!(large.check_bounds().is_ok());
        assert!(SweepConfig { max_r: 7, ..large }.check_bounds().is_err());
        assert!(cost_estimate(&small(3, 4)).unwrap() > 0);
    }
}
