//! Contraction maps between finite spectra.
//!
//! A [`SpectralMap`] sends every element of the `r` poset (modelling
//! `Spec(R)`) to an element of the `s` poset (modelling `Spec(S)`) or to
//! [`Target::Top`], which stands for the whole ring `S`. `Top` lies strictly
//! above every element of `s` and is never itself an element of `s`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poset::{bit, bits, Chain, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("assignment has {found} entries but the source poset has {expected} elements")]
    LengthMismatch { expected: usize, found: usize },
    #[error("target index {index} out of range for a poset with {size} elements")]
    TargetOutOfRange { index: usize, size: usize },
    #[error("not monotone: `{lower}` <= `{upper}` but their contractions are not ordered")]
    NotMonotone { lower: String, upper: String },
    #[error("chain is not a D-chain of the given chain")]
    NotADChain,
}

/// Value of the contraction at one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Prime(usize),
    Top,
}

impl Target {
    pub fn prime(self) -> Option<usize> {
        match self {
            Target::Prime(p) => Some(p),
            Target::Top => None,
        }
    }

    pub fn is_top(self) -> bool {
        matches!(self, Target::Top)
    }
}

/// Image of an `r`-chain: a chain of `s` plus possibly `Top` on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ImageChain {
    pub primes: Chain,
    pub top: bool,
}

impl ImageChain {
    pub fn len(&self) -> usize {
        self.primes.len() + usize::from(self.top)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A validated monotone contraction map `r -> s ∪ {Top}`.
#[derive(Clone, PartialEq, Eq)]
pub struct SpectralMap {
    s: Arc<Poset>,
    r: Arc<Poset>,
    contraction: Vec<Target>,
    /// `over[p]` is the mask of `r` elements contracting to `p`.
    over: Vec<u64>,
    to_top: u64,
}

impl fmt::Debug for SpectralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let assignment: Vec<String> = (0..self.r.len())
            .map(|q| format!("{}->{}", self.r.label(q), self.target_label(q)))
            .collect();
        f.debug_struct("SpectralMap")
            .field("s", &*self.s)
            .field("r", &*self.r)
            .field("contraction", &assignment)
            .finish()
    }
}

impl SpectralMap {
    /// Validates `contraction` (indexed by `r` element) as a monotone map.
    pub fn new(
        s: Arc<Poset>,
        r: Arc<Poset>,
        contraction: Vec<Target>,
    ) -> Result<SpectralMap, MapError> {
        if contraction.len() != r.len() {
            return Err(MapError::LengthMismatch {
                expected: r.len(),
                found: contraction.len(),
            });
        }
        for t in &contraction {
            if let Target::Prime(p) = *t {
                if p >= s.len() {
                    return Err(MapError::TargetOutOfRange { index: p, size: s.len() });
                }
            }
        }
        for (a, b) in r.strict_pairs() {
            if !ext_leq(&s, contraction[a], contraction[b]) {
                return Err(MapError::NotMonotone {
                    lower: r.label(a).to_string(),
                    upper: r.label(b).to_string(),
                });
            }
        }
        Ok(Self::new_unchecked(s, r, contraction))
    }

    pub(crate) fn new_unchecked(s: Arc<Poset>, r: Arc<Poset>, contraction: Vec<Target>) -> Self {
        let mut over = vec![0u64; s.len()];
        let mut to_top = 0u64;
        for (q, t) in contraction.iter().enumerate() {
            match *t {
                Target::Prime(p) => over[p] |= bit(q),
                Target::Top => to_top |= bit(q),
            }
        }
        SpectralMap {
            s,
            r,
            contraction,
            over,
            to_top,
        }
    }

    /// The identity map of `p` onto itself.
    pub fn identity(p: Arc<Poset>) -> SpectralMap {
        let contraction = (0..p.len()).map(Target::Prime).collect();
        Self::new_unchecked(p.clone(), p, contraction)
    }

    pub fn s(&self) -> &Poset {
        &self.s
    }

    pub fn r(&self) -> &Poset {
        &self.r
    }

    pub fn s_arc(&self) -> &Arc<Poset> {
        &self.s
    }

    pub fn r_arc(&self) -> &Arc<Poset> {
        &self.r
    }

    pub fn contraction(&self) -> &[Target] {
        &self.contraction
    }

    #[inline]
    pub fn target(&self, q: usize) -> Target {
        self.contraction[q]
    }

    pub fn target_label(&self, q: usize) -> &str {
        match self.contraction[q] {
            Target::Prime(p) => self.s.label(p),
            Target::Top => "TOP",
        }
    }

    /// `r` elements lying over `p`.
    #[inline]
    pub fn over(&self, p: usize) -> u64 {
        self.over[p]
    }

    /// `r` elements contracting to `Top`.
    #[inline]
    pub fn to_top(&self) -> u64 {
        self.to_top
    }

    /// `r` elements contracting into the member set of `d`.
    #[inline]
    pub fn fiber(&self, d: Chain) -> u64 {
        d.members().fold(0, |acc, p| acc | self.over[p])
    }

    /// Order of `s` extended by `Top` as greatest element.
    #[inline]
    pub fn ext_leq(&self, a: Target, b: Target) -> bool {
        ext_leq(&self.s, a, b)
    }

    /// True iff no element contracts to `Top`.
    pub fn is_unitary(&self) -> bool {
        self.to_top == 0
    }

    /// Deduplicated contractions of the members of `c`.
    pub fn image_chain(&self, c: Chain) -> ImageChain {
        let mut primes = 0u64;
        let mut top = false;
        for q in c.members() {
            match self.contraction[q] {
                Target::Prime(p) => primes |= bit(p),
                Target::Top => top = true,
            }
        }
        ImageChain {
            primes: Chain::from_mask_unchecked(primes),
            top,
        }
    }

    /// Same map with `r` restricted to `keep`.
    pub fn restrict_r(&self, keep: u64) -> SpectralMap {
        let r = Arc::new(self.r.induced(keep));
        let contraction = bits(keep & self.r.universe()).map(|q| self.contraction[q]).collect();
        Self::new_unchecked(self.s.clone(), r, contraction)
    }

    /// Removes `p` from `s` together with every `r` element over it.
    pub fn remove_s_element(&self, p: usize) -> SpectralMap {
        let keep_s = self.s.universe() & !bit(p);
        let s = Arc::new(self.s.induced(keep_s));
        let keep_r = self.r.universe() & !self.over[p];
        let r = Arc::new(self.r.induced(keep_r));
        let renumber = |old: usize| if old > p { old - 1 } else { old };
        let contraction = bits(keep_r)
            .map(|q| match self.contraction[q] {
                Target::Prime(x) => Target::Prime(renumber(x)),
                Target::Top => Target::Top,
            })
            .collect();
        Self::new_unchecked(s, r, contraction)
    }

    /// Replaces the posets while keeping the contraction, revalidating.
    pub fn with_posets(&self, s: Arc<Poset>, r: Arc<Poset>) -> Result<SpectralMap, MapError> {
        Self::new(s, r, self.contraction.clone())
    }
}

#[inline]
fn ext_leq(s: &Poset, a: Target, b: Target) -> bool {
    match (a, b) {
        (_, Target::Top) => true,
        (Target::Top, Target::Prime(_)) => false,
        (Target::Prime(x), Target::Prime(y)) => s.leq(x, y),
    }
}

/// Validating constructor from a positional assignment.
pub fn make_spectral_map(
    s: Arc<Poset>,
    r: Arc<Poset>,
    assignment: Vec<Target>,
) -> Result<SpectralMap, MapError> {
    SpectralMap::new(s, r, assignment)
}

/// Every monotone assignment `r -> s (∪ Top)`, in lexicographic order with
/// values ordered `Prime(0) < .. < Prime(k-1) < Top`.
pub fn monotone_assignments(s: &Poset, r: &Poset, allow_top: bool) -> Vec<Vec<Target>> {
    let mut values: Vec<Target> = (0..s.len()).map(Target::Prime).collect();
    if allow_top {
        values.push(Target::Top);
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r.len());
    fill_assignments(s, r, &values, &mut current, &mut out);
    out
}

fn fill_assignments(
    s: &Poset,
    r: &Poset,
    values: &[Target],
    current: &mut Vec<Target>,
    out: &mut Vec<Vec<Target>>,
) {
    let q = current.len();
    if q == r.len() {
        out.push(current.clone());
        return;
    }
    // Indices are a linear extension, so every element below `q` is set.
    for &v in values {
        if bits(r.strictly_below(q)).all(|lower| ext_leq(s, current[lower], v)) {
            current.push(v);
            fill_assignments(s, r, values, current, out);
            current.pop();
        }
    }
}

/// Every monotone map between `s` and `r`, exactly once.
pub fn enumerate_monotone_maps(
    s: Arc<Poset>,
    r: Arc<Poset>,
    allow_top: bool,
) -> impl Iterator<Item = SpectralMap> {
    let assignments = monotone_assignments(&s, &r, allow_top);
    assignments
        .into_iter()
        .map(move |a| SpectralMap::new_unchecked(s.clone(), r.clone(), a))
}
