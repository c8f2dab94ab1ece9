//! Bounded witness search and greedy shrinking.
//!
//! Instances are visited by ascending `|s| + |r|`, then `|s|`, then in the
//! canonical poset and map order, so the first hit is smallest in that order.
//! Only nonempty posets are searched.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::poset::{bit, covering_pairs, enumerate_posets_in, Poset, PosetFamily};
use crate::properties::Property;
use crate::spectral::{enumerate_monotone_maps, SpectralMap};
use crate::sweep::{run_in_pool, SweepError};
use crate::theorems::{verify_with, TheoremId, VerifyOptions};

/// A required property value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    Holds(Property),
    Fails(Property),
}

impl Flag {
    pub fn property(self) -> Property {
        match self {
            Flag::Holds(p) | Flag::Fails(p) => p,
        }
    }

    pub fn expected(self) -> bool {
        matches!(self, Flag::Holds(_))
    }

    pub fn check(self, m: &SpectralMap) -> bool {
        m.satisfies(self.property()) == self.expected()
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Holds(p) => write!(f, "{p}"),
            Flag::Fails(p) => write!(f, "!{p}"),
        }
    }
}

impl FromStr for Flag {
    type Err = String;

    /// `GU`, or `!LO` / `¬LO` / `not-LO` for a negation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if let Some(rest) = s.strip_prefix('!').or_else(|| s.strip_prefix('¬')) {
            return rest.parse().map(Flag::Fails);
        }
        if lower.starts_with("not-") || lower.starts_with("not_") {
            return s[4..].parse().map(Flag::Fails);
        }
        s.parse().map(Flag::Holds)
    }
}

/// The violation being searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    /// Some nonempty maximal D-chain is not a cover of its `D`, optionally
    /// with `|D|` fixed.
    NotCover { d_size: Option<usize> },
    /// Some maximal D-chain is not a perfect maximal cover.
    NotPerfectCover { d_size: Option<usize> },
    PropertyFails(Property),
    /// The verifier for `theorem` reports a violation.
    Violates { theorem: TheoremId, waive: bool },
}

impl Goal {
    pub fn holds_on(&self, m: &SpectralMap) -> bool {
        let sized = |d_size: Option<usize>, n: usize| d_size.is_none_or(|k| k == n);
        match *self {
            Goal::NotCover { d_size } => m.s().chains().iter().any(|&d| {
                !d.is_empty()
                    && sized(d_size, d.len())
                    && m
                        .maximal_d_chains(d)
                        .iter()
                        .any(|&c| !c.is_empty() && !m.is_cover(c, d).expect("D-chain"))
            }),
            Goal::NotPerfectCover { d_size } => m.s().chains().iter().any(|&d| {
                sized(d_size, d.len())
                    && m
                        .maximal_d_chains(d)
                        .iter()
                        .any(|&c| !m.is_perfect_cover(c, d).expect("D-chain"))
            }),
            Goal::PropertyFails(p) => !m.satisfies(p),
            Goal::Violates { theorem, waive } => {
                !verify_with(m, theorem, VerifyOptions { waive_hypotheses: waive }).holds
            }
        }
    }

    /// Smallest chain height `s` must have for the goal to be reachable.
    fn min_height(&self) -> usize {
        match *self {
            Goal::NotCover { d_size } | Goal::NotPerfectCover { d_size } => d_size.unwrap_or(0),
            _ => 0,
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size = |d: Option<usize>| d.map_or(String::new(), |k| format!(":{k}"));
        match self {
            Goal::NotCover { d_size } => write!(f, "not-cover{}", size(*d_size)),
            Goal::NotPerfectCover { d_size } => write!(f, "not-perfect-cover{}", size(*d_size)),
            Goal::PropertyFails(p) => write!(f, "fails:{p}"),
            Goal::Violates { theorem, waive: false } => write!(f, "violates:{theorem}"),
            Goal::Violates { theorem, waive: true } => write!(f, "violates-waived:{theorem}"),
        }
    }
}

impl FromStr for Goal {
    type Err = String;

    /// `not-cover`, `not-cover:3`, `not-perfect-cover[:k]`, `fails:LO`,
    /// `violates:ID`, `violates-waived:ID`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.trim())),
            None => (s, None),
        };
        let size = |arg: Option<&str>| -> Result<Option<usize>, String> {
            arg.map(|a| a.parse().map_err(|_| format!("bad chain size `{a}`")))
                .transpose()
        };
        let need = || arg.ok_or_else(|| format!("goal `{head}` needs an argument"));
        match head.to_ascii_lowercase().as_str() {
            "not-cover" => Ok(Goal::NotCover { d_size: size(arg)? }),
            "not-perfect-cover" => Ok(Goal::NotPerfectCover { d_size: size(arg)? }),
            "fails" => Ok(Goal::PropertyFails(need()?.parse()?)),
            "violates" => Ok(Goal::Violates {
                theorem: need()?.parse()?,
                waive: false,
            }),
            "violates-waived" => Ok(Goal::Violates {
                theorem: need()?.parse()?,
                waive: true,
            }),
            _ => Err(format!("unknown goal `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearchSpec {
    pub required: Vec<Flag>,
    pub goal: Goal,
    pub max_s: usize,
    pub max_r: usize,
    /// Recorded with the result; the search itself is exhaustive and does
    /// not draw random numbers.
    pub seed: u64,
    pub family: PosetFamily,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

impl WitnessSearchSpec {
    pub fn new(required: Vec<Flag>, goal: Goal, max_s: usize, max_r: usize) -> Self {
        WitnessSearchSpec {
            required,
            goal,
            max_s,
            max_r,
            seed: 0,
            family: PosetFamily::Labeled,
            jobs: 0,
        }
    }

    /// Required flags and the goal, on nonempty posets.
    pub fn accepts(&self, m: &SpectralMap) -> bool {
        !m.s().is_empty()
            && !m.r().is_empty()
            && self.required.iter().all(|f| f.check(m))
            && self.goal.holds_on(m)
    }

    fn allow_top(&self) -> bool {
        !self.required.contains(&Flag::Holds(Property::Unitary))
    }

    fn needs_lo(&self) -> bool {
        self.required.contains(&Flag::Holds(Property::Lo))
    }
}

/// Per-size search statistics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    /// The shrunk witness, if any.
    pub witness: Option<SpectralMap>,
    /// The first hit before shrinking.
    pub found: Option<SpectralMap>,
}

pub const MAX_SEARCH_ELEMENTS: usize = 6;

/// Finds the first instance meeting `spec` and shrinks it.
#[allow(clippy::needless_range_loop)]
pub fn search_witness(spec: &WitnessSearchSpec) -> Result<SearchOutcome, SweepError> {
    for (what, requested) in [("max_s", spec.max_s), ("max_r", spec.max_r)] {
        if requested > MAX_SEARCH_ELEMENTS {
            return Err(SweepError::BoundExceeded {
                what,
                requested,
                limit: MAX_SEARCH_ELEMENTS,
                hint: "",
            });
        }
    }
    let family = spec.family;
    let levels = |max: usize| -> Result<Vec<Vec<Arc<Poset>>>, SweepError> {
        (0..=max)
            .map(|n| {
                Ok(enumerate_posets_in(n, MAX_SEARCH_ELEMENTS, family)?
                    .into_iter()
                    .map(Arc::new)
                    .collect())
            })
            .collect()
    };
    let ss = levels(spec.max_s)?;
    let rs = levels(spec.max_r)?;
    let min_height = spec.goal.min_height();

    let found = run_in_pool(spec.jobs, || {
        for total in 2..=spec.max_s + spec.max_r {
            for s_size in 1..=spec.max_s.min(total - 1) {
                let r_size = total - s_size;
                if r_size > spec.max_r || (spec.needs_lo() && r_size < s_size) {
                    continue;
                }
                let s_level: Vec<&Arc<Poset>> =
                    ss[s_size].iter().filter(|s| s.height() >= min_height).collect();
                let units: Vec<(usize, usize)> = (0..s_level.len())
                    .flat_map(|i| (0..rs[r_size].len()).map(move |j| (i, j)))
                    .collect();
                let hit = units.par_iter().find_map_first(|&(i, j)| {
                    enumerate_monotone_maps(s_level[i].clone(), rs[r_size][j].clone(), spec.allow_top())
                        .find(|m| spec.accepts(m))
                });
                if hit.is_some() {
                    return hit;
                }
            }
        }
        None
    })?;
    let witness = found.as_ref().map(|m| shrink(m, |c| spec.accepts(c)));
    Ok(SearchOutcome { witness, found })
}

/// One greedy step: the first strictly smaller candidate still violating.
fn shrink_step(m: &SpectralMap, violation: &impl Fn(&SpectralMap) -> bool) -> Option<SpectralMap> {
    let r_all = m.r().universe();
    for q in 0..m.r().len() {
        let c = m.restrict_r(r_all & !bit(q));
        if violation(&c) {
            return Some(c);
        }
    }
    for p in 0..m.s().len() {
        let c = m.remove_s_element(p);
        if violation(&c) {
            return Some(c);
        }
    }
    for (a, b) in covering_pairs(m.r()) {
        if let Some(r) = m.r().without_cover(a, b) {
            if let Ok(c) = m.with_posets(m.s_arc().clone(), Arc::new(r)) {
                if violation(&c) {
                    return Some(c);
                }
            }
        }
    }
    for (a, b) in covering_pairs(m.s()) {
        if let Some(s) = m.s().without_cover(a, b) {
            if let Ok(c) = m.with_posets(Arc::new(s), m.r_arc().clone()) {
                if violation(&c) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Greedily removes `r` elements, then `s` elements, then order pairs while
/// `violation` persists, until nothing more can be removed.
pub fn shrink(m: &SpectralMap, violation: impl Fn(&SpectralMap) -> bool) -> SpectralMap {
    let mut current = m.clone();
    while let Some(next) = shrink_step(&current, &violation) {
        current = next;
    }
    current
}
