//! Finite posets, chains and cuts.
//!
//! A [`Poset`] stores its order as one bitmask row per element, so the
//! comparability tests used by every checker are single word operations.
//! Elements are renumbered at construction into a linear extension of the
//! order (stable with respect to the order the labels were given in). As a
//! consequence the members of a chain listed by ascending index are also
//! listed in ascending poset order, which lets a [`Chain`] be a plain bitmask.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest poset the bitmask representation supports.
pub const MAX_ELEMENTS: usize = 64;

/// Default upper bound for [`enumerate_posets`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order relation forces distinct elements `{0}` and `{1}` to coincide")]
    AntisymmetryViolation(String, String),
    #[error("index {index} out of range for a poset with {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("elements are not pairwise comparable")]
    NotAChain,
    #[error("the poset is empty")]
    EmptyPoset,
    #[error("requested size {requested} exceeds the enumeration bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("posets are limited to {MAX_ELEMENTS} elements, got {0}")]
    TooLarge(usize),
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of `mask` in ascending order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A finite partially ordered set with named elements.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    /// `up[i]` has bit `j` set iff `i <= j`.
    up: Vec<u64>,
    /// `down[j]` has bit `i` set iff `i <= j`.
    down: Vec<u64>,
    chains: OnceLock<Vec<Chain>>,
    maximal: OnceLock<Vec<Chain>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = covering_pairs(self)
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &pairs)
            .finish()
    }
}

impl Poset {
    /// The empty poset.
    pub fn empty() -> Self {
        Self::from_masks(Vec::new(), Vec::new())
    }

    /// A total order on `labels`, in the order given.
    pub fn total_order<S: AsRef<str>>(labels: &[S]) -> Result<Self, PosetError> {
        let pairs: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::from_relation(labels, &pairs)
    }

    /// An antichain on `labels`.
    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Self, PosetError> {
        Self::from_relation(labels, &[])
    }

    /// Builds the reflexive-transitive closure of `pairs` (index `a` below
    /// index `b`) over `labels`.
    pub fn from_relation<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut up: Vec<u64> = (0..n).map(bit).collect();
        for &(a, b) in pairs {
            for idx in [a, b] {
                if idx >= n {
                    return Err(PosetError::IndexOutOfRange { index: idx, size: n });
                }
            }
            up[a] |= bit(b);
        }
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            for j in bits(up[i] & !bit(i)) {
                if up[j] & bit(i) != 0 {
                    return Err(PosetError::AntisymmetryViolation(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
        Ok(Self::topologically_sorted(labels, up))
    }

    /// Renumbers elements into a linear extension, picking the earliest
    /// available original index at every step.
    fn topologically_sorted(labels: Vec<String>, up: Vec<u64>) -> Self {
        let n = labels.len();
        let down = transpose(&up);
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| placed & bit(i) == 0 && (down[i] & !bit(i)) & !placed == 0)
                .expect("acyclic relation always has a minimal unplaced element");
            placed |= bit(next);
            order.push(next);
        }
        if order.iter().enumerate().all(|(new, &old)| new == old) {
            return Self::from_masks(labels, up);
        }
        let mut new_index = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let remap = |mask: u64| bits(mask).fold(0u64, |acc, i| acc | bit(new_index[i]));
        let new_labels = order.iter().map(|&old| labels[old].clone()).collect();
        let new_up = order.iter().map(|&old| remap(up[old])).collect();
        Self::from_masks(new_labels, new_up)
    }

    fn from_masks(labels: Vec<String>, up: Vec<u64>) -> Self {
        let down = transpose(&up);
        Poset {
            labels,
            up,
            down,
            chains: OnceLock::new(),
            maximal: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask of all elements.
    pub fn universe(&self) -> u64 {
        low_mask(self.len())
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & bit(b) != 0
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Elements `>= i`.
    #[inline]
    pub fn up_set(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Elements `<= i`.
    #[inline]
    pub fn down_set(&self, i: usize) -> u64 {
        self.down[i]
    }

    #[inline]
    pub fn strictly_above(&self, i: usize) -> u64 {
        self.up[i] & !bit(i)
    }

    #[inline]
    pub fn strictly_below(&self, i: usize) -> u64 {
        self.down[i] & !bit(i)
    }

    /// Elements comparable with `i`, including `i` itself.
    #[inline]
    pub fn comparable(&self, i: usize) -> u64 {
        self.up[i] | self.down[i]
    }

    /// Strict order pairs `(a, b)` with `a < b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| bits(self.strictly_above(a)).map(move |b| (a, b)))
            .collect()
    }

    /// Checks reflexivity, antisymmetry and transitivity over all triples.
    pub fn validate(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return false;
            }
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return false;
                }
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return false;
                    }
                }
            }
        }
        let mut labels: Vec<&String> = self.labels.iter().collect();
        labels.sort();
        labels.windows(2).all(|w| w[0] != w[1])
    }

    /// Every chain including the empty one, in lexicographic order of the
    /// ascending member lists. Computed once.
    pub fn chains(&self) -> &[Chain] {
        self.chains.get_or_init(|| {
            let mut out = Vec::new();
            self.collect_chains(Chain::EMPTY, self.universe(), &mut out);
            out
        })
    }

    fn collect_chains(&self, current: Chain, candidates: u64, out: &mut Vec<Chain>) {
        out.push(current);
        for i in bits(candidates) {
            let above_index = !low_mask(i + 1);
            self.collect_chains(
                Chain(current.0 | bit(i)),
                candidates & self.comparable(i) & above_index,
                out,
            );
        }
    }

    /// Maximal chains in canonical order; empty for the empty poset.
    pub fn maximal_chains(&self) -> &[Chain] {
        self.maximal.get_or_init(|| {
            if self.is_empty() {
                return Vec::new();
            }
            self.chains()
                .iter()
                .copied()
                .filter(|c| !c.is_empty() && self.extensions(*c, self.universe()) == 0)
                .collect()
        })
    }

    /// Elements of `within` outside `chain` whose addition keeps it a chain.
    pub fn extensions(&self, chain: Chain, within: u64) -> u64 {
        bits(within & !chain.0)
            .filter(|&q| self.comparable(q) & chain.0 == chain.0)
            .fold(0, |acc, q| acc | bit(q))
    }

    /// True iff the elements of `mask` are pairwise comparable.
    pub fn is_chain_mask(&self, mask: u64) -> bool {
        bits(mask).all(|i| self.comparable(i) & mask == mask)
    }

    /// The subposet induced on `keep`, preserving relative index order.
    pub fn induced(&self, keep: u64) -> Poset {
        let kept: Vec<usize> = bits(keep & self.universe()).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            new_index[old] = new;
        }
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let up = kept
            .iter()
            .map(|&i| bits(self.up[i] & keep).fold(0u64, |acc, j| acc | bit(new_index[j])))
            .collect();
        Poset::from_masks(labels, up)
    }

    /// The poset obtained by deleting the covering pair `(a, b)` from the
    /// Hasse diagram. Returns `None` if `(a, b)` is not a covering pair.
    pub fn without_cover(&self, a: usize, b: usize) -> Option<Poset> {
        let covers = covering_pairs(self);
        if !covers.contains(&(a, b)) {
            return None;
        }
        let kept: Vec<(usize, usize)> = covers.into_iter().filter(|&p| p != (a, b)).collect();
        // Index order stays a linear extension, so no renumbering happens.
        Poset::from_relation(&self.labels, &kept).ok()
    }

    /// Same order with every label prefixed.
    pub fn with_label_prefix(&self, prefix: &str) -> Poset {
        let labels = self.labels.iter().map(|l| format!("{prefix}{l}")).collect();
        Poset::from_masks(labels, self.up.clone())
    }

    /// Length of the longest chain.
    pub fn height(&self) -> usize {
        self.maximal_chains().iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

fn transpose(up: &[u64]) -> Vec<u64> {
    let n = up.len();
    let mut down = vec![0u64; n];
    for (i, &row) in up.iter().enumerate() {
        for j in bits(row) {
            down[j] |= bit(i);
        }
    }
    down
}

/// Builds a poset from labels and order assertions `(lower, upper)` given by
/// label, closing them reflexively and transitively.
pub fn make_poset<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Poset, PosetError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_ref(), i).is_some() {
            return Err(PosetError::DuplicateLabel(l.as_ref().to_string()));
        }
    }
    let lookup = |l: &S| {
        index
            .get(l.as_ref())
            .copied()
            .ok_or_else(|| PosetError::UnknownLabel(l.as_ref().to_string()))
    };
    let mut idx_pairs = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        idx_pairs.push((lookup(a)?, lookup(b)?));
    }
    Poset::from_relation(labels, &idx_pairs)
}

/// Hasse diagram: pairs `(x, y)` with `x < y` and nothing strictly between.
pub fn covering_pairs(p: &Poset) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        for y in bits(p.strictly_above(x)) {
            if p.up_set(x) & p.down_set(y) == bit(x) | bit(y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// True iff `subset` is pairwise comparable.
pub fn is_chain(p: &Poset, subset: &[usize]) -> Result<bool, PosetError> {
    let mut mask = 0u64;
    for &i in subset {
        if i >= p.len() {
            return Err(PosetError::IndexOutOfRange { index: i, size: p.len() });
        }
        mask |= bit(i);
    }
    Ok(p.is_chain_mask(mask))
}

/// Every chain exactly once, in lexicographic order of the sorted member
/// lists.
pub fn enumerate_chains(p: &Poset, include_empty: bool) -> Vec<Chain> {
    let all = p.chains();
    if include_empty {
        all.to_vec()
    } else {
        all[1..].to_vec()
    }
}

pub fn maximal_chains(p: &Poset) -> Result<Vec<Chain>, PosetError> {
    if p.is_empty() {
        return Err(PosetError::EmptyPoset);
    }
    Ok(p.maximal_chains().to_vec())
}

/// A chain, stored as the bitmask of its member indices.
///
/// Because poset indices form a linear extension, ascending bit order is
/// ascending poset order on the members.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Chain(pub(crate) u64);

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members()).finish()
    }
}

impl Chain {
    pub const EMPTY: Chain = Chain(0);

    /// Validates `members` as a chain of `p`.
    pub fn new(p: &Poset, members: &[usize]) -> Result<Chain, PosetError> {
        if is_chain(p, members)? {
            Ok(Chain(members.iter().fold(0, |acc, &i| acc | bit(i))))
        } else {
            Err(PosetError::NotAChain)
        }
    }

    pub fn from_labels<S: AsRef<str>>(p: &Poset, labels: &[S]) -> Result<Chain, PosetError> {
        let idx = labels
            .iter()
            .map(|l| {
                p.index_of(l.as_ref())
                    .ok_or_else(|| PosetError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Chain::new(p, &idx)
    }

    /// Wraps a mask assumed to be a chain of the ambient poset.
    pub fn from_mask_unchecked(mask: u64) -> Chain {
        Chain(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & bit(i) != 0
    }

    /// Members in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn least(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn greatest(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset_of(self, other: Chain) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, i: usize) -> Chain {
        Chain(self.0 | bit(i))
    }

    pub fn labels(self, p: &Poset) -> Vec<String> {
        self.members().map(|i| p.label(i).to_string()).collect()
    }

    /// `{a, b, c}` rendering using the labels of `p`.
    pub fn display(self, p: &Poset) -> String {
        format!("{{{}}}", self.labels(p).join(", "))
    }
}

/// A split of a chain into an initial segment and the remaining final
/// segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cut {
    chain: Chain,
    split: usize,
}

impl Cut {
    pub fn new(chain: Chain, split: usize) -> Option<Cut> {
        (split <= chain.len()).then_some(Cut { chain, split })
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn split(&self) -> usize {
        self.split
    }

    /// The first `split` members.
    pub fn left(&self) -> Chain {
        Chain(self.chain.members().take(self.split).fold(0, |acc, i| acc | bit(i)))
    }

    pub fn right(&self) -> Chain {
        Chain(self.chain.0 & !self.left().0)
    }

    pub fn is_proper(&self) -> bool {
        self.split > 0 && self.split < self.chain.len()
    }
}

/// All `|chain| + 1` cuts, or only the proper ones.
pub fn cuts_of(chain: Chain, proper_only: bool) -> Vec<Cut> {
    (0..=chain.len())
        .map(|split| Cut { chain, split })
        .filter(|c| !proper_only || c.is_proper())
        .collect()
}

/// Which posets [`enumerate_posets_in`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PosetFamily {
    /// Every labeled partial order exactly once.
    #[default]
    Labeled,
    /// Only naturally labeled orders (`i < j` implies `i` precedes `j`).
    /// Every isomorphism class appears at least once; far fewer than
    /// `Labeled`.
    Natural,
}

/// Every labeled partial order on `n` elements, labels `"0".."n-1"`.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>, PosetError> {
    enumerate_posets_in(n, DEFAULT_ENUMERATION_BOUND, PosetFamily::Labeled)
}

/// Enumerates a poset family on `n` elements, refusing `n > bound`.
///
/// Each order on `n + 1` elements is generated exactly once from its
/// restriction to the first `n` elements, by choosing the strict down-set
/// and strict up-set of the new element.
pub fn enumerate_posets_in(
    n: usize,
    bound: usize,
    family: PosetFamily,
) -> Result<Vec<Poset>, PosetError> {
    if n > bound {
        return Err(PosetError::BoundExceeded { requested: n, bound });
    }
    if n > 10 {
        return Err(PosetError::BoundExceeded { requested: n, bound: 10 });
    }
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for up in &level {
            let down = transpose(up);
            let full = low_mask(k);
            let down_closed: Vec<u64> = (0..=full)
                .filter(|&d| bits(d).all(|i| down[i] & !d == 0))
                .collect();
            let up_closed: Vec<u64> = match family {
                PosetFamily::Labeled => (0..=full)
                    .filter(|&u| bits(u).all(|i| up[i] & !u == 0))
                    .collect(),
                PosetFamily::Natural => vec![0],
            };
            for &d in &down_closed {
                for &u in &up_closed {
                    if d & u != 0 || bits(d).any(|i| up[i] & u != u) {
                        continue;
                    }
                    let mut new_up = up.clone();
                    for i in bits(d) {
                        new_up[i] |= bit(k);
                    }
                    new_up.push(bit(k) | u);
                    next.push(new_up);
                }
            }
        }
        level = next;
    }
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Ok(level
        .into_iter()
        .map(|up| Poset::topologically_sorted(labels.clone(), up))
        .collect())
}

/// A random poset: random DAG over a shuffled element order, then closure.
/// Deterministic for fixed `(n, seed)`.
pub fn random_poset(n: usize, seed: u64) -> Poset {
    let n = n.min(MAX_ELEMENTS);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Poset::from_relation(&labels, &pairs).expect("relation follows a permutation, so it is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        make_poset(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap()
    }

    fn n_poset() -> Poset {
        make_poset(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap()
    }

    fn brute_force_reduction(p: &Poset) -> Vec<(usize, usize)> {
        let n = p.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if p.lt(x, y) && !(0..n).any(|z| p.lt(x, z) && p.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn singleton_poset() {
        let p = make_poset(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn transitive_closure_of_path() {
        let p = make_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = make_poset(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::AntisymmetryViolation(..)));
    }

    #[test]
    fn label_errors() {
        assert_eq!(
            make_poset(&["a", "a"], &[]).unwrap_err(),
            PosetError::DuplicateLabel("a".into())
        );
        assert_eq!(
            make_poset(&["a"], &[("a", "z")]).unwrap_err(),
            PosetError::UnknownLabel("z".into())
        );
    }

    #[test]
    fn construction_renumbers_into_linear_extension() {
        let p = make_poset(&["top", "bottom"], &[("bottom", "top")]).unwrap();
        assert_eq!(p.labels(), &["bottom".to_string(), "top".to_string()]);
        assert!(p.lt(0, 1));
    }

    #[test]
    fn covering_pairs_examples() {
        let chain = Poset::total_order(&["a", "b", "c"]).unwrap();
        assert_eq!(covering_pairs(&chain), vec![(0, 1), (1, 2)]);
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert!(covering_pairs(&anti).is_empty());
        let d = diamond();
        assert_eq!(covering_pairs(&d), brute_force_reduction(&d));
        assert_eq!(covering_pairs(&d), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn is_chain_examples() {
        let d = diamond();
        assert!(is_chain(&d, &[]).unwrap());
        assert!(!is_chain(&d, &[1, 2]).unwrap());
        assert!(is_chain(&d, &[0, 1, 3]).unwrap());
        assert_eq!(
            is_chain(&d, &[7]).unwrap_err(),
            PosetError::IndexOutOfRange { index: 7, size: 4 }
        );
    }

    #[test]
    fn chain_enumeration_examples() {
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        let chains: Vec<_> = enumerate_chains(&anti, false).into_iter().map(Chain::to_vec).collect();
        assert_eq!(chains, vec![vec![0], vec![1]]);

        let two = Poset::total_order(&["a", "b"]).unwrap();
        let chains: Vec<_> = enumerate_chains(&two, true).into_iter().map(Chain::to_vec).collect();
        assert_eq!(chains, vec![vec![], vec![0], vec![0, 1], vec![1]]);

        let d = diamond();
        let brute = (1u64..16).filter(|&m| d.is_chain_mask(m)).count();
        assert_eq!(brute, 11);
        assert_eq!(enumerate_chains(&d, false).len(), 11);
    }

    #[test]
    fn maximal_chain_examples() {
        let three = Poset::total_order(&["a", "b", "c"]).unwrap();
        assert_eq!(maximal_chains(&three).unwrap(), vec![Chain(0b111)]);

        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(maximal_chains(&anti).unwrap(), vec![Chain(0b01), Chain(0b10)]);

        let n = n_poset();
        let got: Vec<Vec<String>> = maximal_chains(&n).unwrap().into_iter().map(|c| c.labels(&n)).collect();
        assert_eq!(got, vec![vec!["a", "c"], vec!["b", "c"], vec!["b", "d"]]);

        assert_eq!(maximal_chains(&Poset::empty()).unwrap_err(), PosetError::EmptyPoset);
    }

    #[test]
    fn cut_examples() {
        let two = Chain(0b11);
        let cuts = cuts_of(two, true);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].left(), Chain(0b01));
        assert_eq!(cuts[0].right(), Chain(0b10));

        let none = cuts_of(Chain::EMPTY, false);
        assert_eq!(none.len(), 1);
        assert!(none[0].left().is_empty() && none[0].right().is_empty());

        assert_eq!(cuts_of(Chain(0b10110), true).len(), 2);
    }

    #[test]
    fn labeled_poset_counts() {
        // OEIS A001035
        let expected = [1usize, 1, 3, 19, 219, 4231];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_posets(n).unwrap().len(), count, "n = {n}");
        }
        assert_eq!(
            enumerate_posets(6).unwrap_err(),
            PosetError::BoundExceeded { requested: 6, bound: 5 }
        );
    }

    #[test]
    fn natural_poset_counts() {
        // OEIS A006455
        let expected = [1usize, 1, 2, 7, 40, 357];
        for (n, &count) in expected.iter().enumerate() {
            let got = enumerate_posets_in(n, 6, PosetFamily::Natural).unwrap();
            assert_eq!(got.len(), count, "n = {n}");
        }
    }

    #[test]
    fn brute_force_poset_count_for_three() {
        // Every relation on three elements, filtered by the order axioms.
        let n = 3;
        let mut count = 0;
        for rel in 0u32..(1 << (n * n)) {
            let r = |a: usize, b: usize| rel & (1 << (a * n + b)) != 0;
            let reflexive = (0..n).all(|a| r(a, a));
            let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(r(a, b) && r(b, a))));
            let trans = (0..n)
                .all(|a| (0..n).all(|b| (0..n).all(|c| !(r(a, b) && r(b, c)) || r(a, c))));
            if reflexive && antisym && trans {
                count += 1;
            }
        }
        assert_eq!(count, 19);
        assert_eq!(enumerate_posets(3).unwrap().len(), count);
    }

    #[test]
    fn enumerated_posets_are_distinct_labeled_orders() {
        let posets = enumerate_posets(4).unwrap();
        let mut seen = std::collections::HashSet::new();
        for p in &posets {
            assert!(p.validate());
            let mut rel: Vec<(String, String)> = p
                .strict_pairs()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect();
            rel.sort();
            assert!(seen.insert(rel));
        }
    }

    #[test]
    fn random_poset_is_deterministic_and_valid() {
        assert!(random_poset(0, 9).is_empty());
        assert_eq!(random_poset(5, 42), random_poset(5, 42));
        for seed in 0..50 {
            assert!(random_poset(4, seed).validate());
        }
    }

    #[test]
    fn induced_and_cover_removal() {
        let d = diamond();
        let sub = d.induced(0b1011);
        assert_eq!(sub.labels(), &["a", "b", "d"]);
        assert_eq!(covering_pairs(&sub), vec![(0, 1), (1, 2)]);
        let cut = d.without_cover(0, 1).unwrap();
        assert!(!cut.leq(0, 1));
        assert!(cut.leq(0, 3));
        assert!(d.without_cover(0, 3).is_none());
    }
}
